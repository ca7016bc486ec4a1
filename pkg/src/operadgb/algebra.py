"""Operads built from graded commutative algebras.

A connected graded commutative algebra with generators in degree one
yields an operad whose arity-n component is the degree-(n-1) part of the
algebra: an operation is multiplication by an element, composition is the
product.  Its presentation has one binary generator per algebra generator,
quadratic relations saying that the result of a composition depends only
on the multiset of operations composed, and one relation per algebra
relation transcribed as an iterated last-slot composition.
"""

from __future__ import annotations

from fractions import Fraction

from .groebner import Presentation
from .orders import MonomialOrder
from .trees import Element, Generator, UNIT, corolla, ns_compose

# An algebra relation is a dict {exponent tuple: coefficient} where the
# exponent tuple lists, sorted, the generator indices of a monomial
# (commutative word), e.g. x0*x1^2 -> (0, 1, 1).
AlgebraRelation = dict


def monomial_to_right_comb(p: Presentation, word: tuple[int, ...]) -> Element:
    """x_{i1}...x_{id} (sorted word) as the iterated last-slot composite."""
    gens = p.generators
    e = Element.monomial(corolla(gens[word[-1]]))
    for idx in reversed(word[:-1]):
        e = ns_compose(Element.monomial(corolla(gens[idx])), 2, e)
    return e


def algebra_to_operad(gen_names: list[str], relations: list[AlgebraRelation]) -> Presentation:
    """Presentation of the operad attached to k[x1..xm]/(relations).

    Relations must be homogeneous of degree >= 2 in the commutative
    generators; a degree-d algebra relation becomes an arity-(d+1) operad
    relation supported on right combs.
    """
    gens = tuple(Generator(n, 2) for n in gen_names)
    # later generators larger, so the sorted (ascending-from-root) comb is
    # the normal form of a product
    order = MonomialOrder("path_lex", tuple(reversed(gen_names)))
    pres_stub = Presentation(gens, (), order, name="algebra")
    rels: list[Element] = []

    def comb(word):
        return monomial_to_right_comb(pres_stub, word)

    m = len(gens)
    # composition independent of the order of operations:
    # for every pair (i, j): all five non-canonical quadratic composites
    # equal the sorted right comb
    for i in range(m):
        for j in range(i, m):
            canon = comb((i, j))
            a, b = gens[i], gens[j]
            Ma, Mb = Element.monomial(corolla(a)), Element.monomial(corolla(b))
            from .trees import ShuffleSurjection, compose

            candidates = [
                ns_compose(Ma, 1, Mb),  # a(b(1,2),3)
                compose(Ma, ShuffleSurjection(((1, 3), (2,))), [Mb, Element.monomial(UNIT)]),
                ns_compose(Ma, 2, Mb),  # a(1,b(2,3))
                ns_compose(Mb, 1, Ma),
                compose(Mb, ShuffleSurjection(((1, 3), (2,))), [Ma, Element.monomial(UNIT)]),
                ns_compose(Mb, 2, Ma),
            ]
            for cand in candidates:
                r = cand - canon
                if not r.is_zero():
                    rels.append(r)
    for rel in relations:
        words = sorted(rel.items())
        degs = {len(w) for w, _ in words}
        if len(degs) != 1 or min(degs) < 2:
            raise ValueError("algebra relations must be homogeneous of degree >= 2")
        e = Element.zero(len(words[0][0]) + 1)
        for word, c in words:
            e += comb(tuple(sorted(word))).scale(Fraction(c))
        if not e.is_zero():
            rels.append(e)
    # deduplicate
    uniq = []
    seen = set()
    for r in rels:
        key = frozenset(r.terms.items())
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    return Presentation(gens, tuple(uniq), order, name="from-algebra")
