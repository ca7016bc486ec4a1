"""Built-in presentations: associative, Rota-Baxter, BV, bracket families.

Conventions used throughout:

* ``rb`` / ``ncrb``: one binary product and one unary operator P with the
  Rota-Baxter identity P(a)P(b) = P(P(a)b + aP(b) + s*ab); ncrb is
  non-symmetric, rb carries the extra shuffle associativity relation.
* ``bv``: a symmetric product (degree 0) and an odd square-zero unary
  operator with the third-order identity relating them.  Relations are
  stored tail-reduced against associativity so that leading terms are
  stable under interreduction.
* ``grav``: antisymmetric brackets br_m (arity m, degree 2-m, weight 1
  except the binary bracket of weight 0) with the generalized Jacobi
  family, expanded over all shuffle frames.  Sign bookkeeping: the term
  picking arguments (i, j) carries (-1)^(i+j-1) from pulling them to the
  front of an antisymmetric operation, times the sign of sorting the
  argument blocks by minimum; the right-hand side carries (-1)^k times its
  own sorting sign.  This choice was validated computationally: the
  relations form a Groebner basis whose normal monomials have graded
  character (2 + 1/t)(3 + 1/t)...(n-1 + 1/t).
* ``odd_assoc``: one generator of arity 2k+1 and odd degree with the
  partial-associativity relations; non-symmetric.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .groebner import Presentation
from .orders import MonomialOrder
from .trees import (
    UNIT,
    Element,
    Generator,
    ShuffleSurjection,
    compose,
    corolla,
    ns_compose,
)

M = Element.monomial


def _sort_sign(vals) -> int:
    inv = sum(
        1 for a in range(len(vals)) for c in range(a + 1, len(vals)) if vals[a] > vals[c]
    )
    return -1 if inv % 2 else 1


def shuffle_assoc_relations(mul: Generator, symmetric: bool) -> list[Element]:
    """(a1*a2)*a3 = a1*(a2*a3), plus the (a1*a3)*a2 frame when symmetric."""
    Mm = M(corolla(mul))
    rels = [ns_compose(Mm, 1, Mm) - ns_compose(Mm, 2, Mm)]
    if symmetric:
        left13 = compose(Mm, ShuffleSurjection(((1, 3), (2,))), [Mm, M(UNIT)])
        rels.append(left13 - ns_compose(Mm, 2, Mm))
    return rels


def ncrb(lam=1) -> Presentation:
    """Noncommutative Rota-Baxter operad, weight parameter lam."""
    lam = Fraction(lam)
    mul = Generator("mul", 2)
    P = Generator("P", 1)
    order = MonomialOrder("path_lex", ("P", "mul"))
    Mm, MP = M(corolla(mul)), M(corolla(P))
    papb = compose(Mm, ShuffleSurjection(((1,), (2,))), [MP, MP])
    rb = ns_compose(MP, 1, ns_compose(Mm, 1, MP) + ns_compose(Mm, 2, MP) + Mm.scale(lam)) - papb
    rels = shuffle_assoc_relations(mul, symmetric=False) + [rb]
    return Presentation(
        (mul, P), tuple(rels), order, {"lambda": lam}, name="ncrb", nonsymmetric=True
    )


def rb(lam=1) -> Presentation:
    """Commutative Rota-Baxter operad, weight parameter lam."""
    lam = Fraction(lam)
    mul = Generator("mul", 2)
    P = Generator("P", 1)
    order = MonomialOrder("path_lex", ("P", "mul"))
    Mm, MP = M(corolla(mul)), M(corolla(P))
    papb = compose(Mm, ShuffleSurjection(((1,), (2,))), [MP, MP])
    rb_rel = ns_compose(MP, 1, ns_compose(Mm, 1, MP) + ns_compose(Mm, 2, MP) + Mm.scale(lam)) - papb
    rels = shuffle_assoc_relations(mul, symmetric=True) + [rb_rel]
    return Presentation((mul, P), tuple(rels), order, {"lambda": lam}, name="rb")


def bv() -> Presentation:
    """Batalin-Vilkovisky operad: product b, odd operator d, d^2 = 0.

    The third-order identity is stored with its left side already rewritten
    to the right comb, so the listed relations are interreduced.
    """
    b = Generator("b", 2)
    d = Generator("d", 1, homdeg=1)
    order = MonomialOrder("pathlex_then_perm", ("d", "b"))
    Mb, Md = M(corolla(b)), M(corolla(d))

    def E(raw):
        from .trees import canonical_form

        return M(canonical_form(raw))

    assoc = shuffle_assoc_relations(b, symmetric=True)
    dd = ns_compose(Md, 1, Md)
    cubic = (
        E((d, [(b, [1, (b, [2, 3])])]))
        - E((b, [(d, [(b, [1, 2])]), 3]))
        - E((b, [(d, [(b, [1, 3])]), 2]))
        - E((b, [1, (d, [(b, [2, 3])])]))
        + E((b, [(d, [1]), (b, [2, 3])]))
        + E((b, [1, (b, [(d, [2]), 3])]))
        + E((b, [1, (b, [2, (d, [3])])]))
    )
    rels = assoc + [dd, cubic]
    return Presentation((b, d), tuple(rels), order, name="bv")


def bv_cubic_original() -> Element:
    """The third-order BV identity exactly as usually displayed (not
    tail-reduced); useful for ideal-membership tests."""
    p = bv()
    b, d = p.gen("b"), p.gen("d")

    def E(raw):
        from .trees import canonical_form

        return M(canonical_form(raw))

    return (
        E((d, [(b, [(b, [1, 2]), 3])]))
        - E((b, [(d, [(b, [1, 2])]), 3]))
        - E((b, [(d, [(b, [1, 3])]), 2]))
        - E((b, [1, (d, [(b, [2, 3])])]))
        + E((b, [(b, [(d, [1]), 2]), 3]))
        + E((b, [(b, [1, (d, [2])]), 3]))
        + E((b, [(b, [1, (d, [3])]), 2]))
    )


def bv_quartic_consequence() -> Element:
    """The degree-4 consequence of the square-zero and third-order
    relations (overlap of the two), as usually displayed."""
    p = bv()
    b, d = p.gen("b"), p.gen("d")

    def E(raw):
        from .trees import canonical_form

        return M(canonical_form(raw))

    return (
        E((d, [(b, [1, (d, [(b, [2, 3])])])]))
        + E((d, [(b, [(d, [(b, [1, 2])]), 3])]))
        + E((d, [(b, [(d, [(b, [1, 3])]), 2])]))
        - E((d, [(b, [(b, [(d, [1]), 2]), 3])]))
        - E((d, [(b, [(b, [1, (d, [2])]), 3])]))
        - E((d, [(b, [(b, [1, (d, [3])]), 2])]))
    )


def grav(max_arity: int = 6) -> Presentation:
    """Bracket operad with the generalized Jacobi family up to max_arity."""
    gens = {
        m: Generator(f"br{m}", m, homdeg=2 - m, weight=(0 if m == 2 else 1))
        for m in range(2, max_arity + 1)
    }
    glist = tuple(gens[m] for m in sorted(gens))
    order = MonomialOrder(
        "weight_first_reverse_pathlex", tuple(f"br{m}" for m in sorted(gens))
    )
    rels = []
    for k in range(3, max_arity + 1):
        for l in range(0, max_arity - k + 1):
            n = k + l
            for A in itertools.combinations(range(1, n + 1), k):
                B = tuple(x for x in range(1, n + 1) if x not in A)
                terms = Element.zero(n)
                for ii in range(k):
                    for jj in range(ii + 1, k):
                        pi, pj = A[ii], A[jj]
                        extraction = (-1) ** (ii + jj - 1)
                        singles = [x for x in A if x not in (pi, pj)] + list(B)
                        sgn = extraction * _sort_sign([pi] + singles)
                        blocks = sorted([(pi, pj)] + [(x,) for x in singles])
                        inners = [
                            M(corolla(gens[2])) if len(blk) == 2 else M(UNIT)
                            for blk in blocks
                        ]
                        phi = ShuffleSurjection(tuple(tuple(x) for x in blocks))
                        terms += compose(M(corolla(gens[n - 1])), phi, inners).scale(sgn)
                if l > 0:
                    sgn = _sort_sign([A[0]] + list(B)) * ((-1) ** k)
                    blocks = sorted([tuple(A)] + [(x,) for x in B])
                    inners = [
                        M(corolla(gens[k])) if len(blk) == k else M(UNIT)
                        for blk in blocks
                    ]
                    rhs = compose(
                        M(corolla(gens[l + 1])), ShuffleSurjection(tuple(blocks)), inners
                    )
                    terms = terms - rhs.scale(sgn)
                rels.append(terms)
    return Presentation(glist, tuple(rels), order, name="grav")


def odd_assoc(k: int = 1) -> Presentation:
    """Odd partial-associativity: one generator of arity 2k+1, odd degree."""
    mu = Generator("mu", 2 * k + 1, homdeg=1)
    order = MonomialOrder("path_lex", ("mu",))
    Mm = M(corolla(mu))
    rels = tuple(
        ns_compose(Mm, p_, Mm) - ns_compose(Mm, 2 * k + 1, Mm) for p_ in range(1, 2 * k + 1)
    )
    return Presentation((mu,), rels, order, name="odd-assoc", nonsymmetric=True)


def free_operad(signature: str = "m:2") -> Presentation:
    """Free operad on the given generators, e.g. 'm:2,P:1' (no relations)."""
    gens = []
    for part in signature.split(","):
        bits = part.strip().split(":")
        name = bits[0]
        ar = int(bits[1]) if len(bits) > 1 else 2
        deg = int(bits[2]) if len(bits) > 2 else 0
        gens.append(Generator(name, ar, deg))
    order = MonomialOrder("path_lex", tuple(g.name for g in gens))
    return Presentation(tuple(gens), (), order, name="free")


BUILTINS = {
    "rb": rb,
    "ncrb": ncrb,
    "bv": bv,
    "grav": grav,
    "odd-assoc": odd_assoc,
    "free": free_operad,
}


def builtin(name: str, **kwargs) -> Presentation:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    return BUILTINS[name](**kwargs)
