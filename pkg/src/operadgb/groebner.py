"""Groebner bases for shuffle operads presented by generators and relations.

Completion works arity by arity: a small common multiple of two leading
terms either has strictly larger arity than both (proper overlap of
non-unary parts) or strictly larger weight (unary towers), so a basis
computed below an (arity, weight) cap certifies every conclusion drawn in
those strata.  Relations must be homogeneous in arity and homological
degree.  Weight may vary inside a relation (Rota-Baxter with its scalar
parameter, bracket families with a weightless binary corolla); division
still terminates because every built-in order is degree-graded, hence
well-founded on each arity component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .orders import MonomialOrder, leading_term, make_monic
from .trees import (
    Element,
    interval_blocks,
    Generator,
    Occurrence,
    TreeMonomial,
    canonical_form,
    corolla,
    divisor_occurrences,
    enumerate_shuffle_surjections,
    enumerate_trees,
    extract_standardized,
    format_element,
    format_tree,
    substitute,
)


@dataclass
class Presentation:
    """Generators, relations, a monomial order and named scalar parameters."""

    generators: tuple[Generator, ...]
    relations: tuple[Element, ...]
    order: MonomialOrder
    params: dict = field(default_factory=dict)
    name: str = ""
    nonsymmetric: bool = False

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for r in self.relations:
            if r.is_zero():
                raise ValueError("zero relation")
            # arity homogeneity is structural (Element); homological degree
            # must match for signs to be well defined.  Weight may vary
            # within a relation (Rota-Baxter with its scalar, bracket
            # families): termination relies on the order being graded.
            r.check_homogeneous(weights=False)

    @property
    def has_unary(self) -> bool:
        return any(g.arity == 1 for g in self.generators)

    def gen(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)


@dataclass(frozen=True)
class SCM:
    """A small common multiple of two leading terms with its two occurrences."""

    multiple: TreeMonomial
    occ_u: Occurrence
    occ_v: Occurrence


class GroebnerBasis:
    """A completed (up to the stated bounds) list of monic relations."""

    def __init__(
        self,
        presentation: Presentation,
        elements: Sequence[Element],
        arity_bound: int,
        weight_bound: int,
        complete: bool = True,
    ):
        self.presentation = presentation
        self.order = presentation.order
        self.elements = tuple(elements)
        self.arity_bound = arity_bound
        self.weight_bound = weight_bound
        self.complete = complete
        self.leading = tuple(leading_term(self.order, g)[0] for g in self.elements)
        self._normal_cache: dict[TreeMonomial, bool] = {}
        self._occ_cache: dict[TreeMonomial, tuple] = {}

    def leading_terms(self) -> tuple[TreeMonomial, ...]:
        return self.leading

    def find_reduction(self, mono: TreeMonomial):
        """First (element, occurrence) whose leading term divides mono."""
        if self._normal_cache.get(mono) is True:
            return None
        hit = self._occ_cache.get(mono)
        if hit is not None:
            return hit
        for g, lt in zip(self.elements, self.leading):
            if lt.nvertices > mono.nvertices or lt.arity > mono.arity:
                continue
            occs = divisor_occurrences(mono, lt)
            if occs:
                self._occ_cache[mono] = (g, occs[0])
                return g, occs[0]
        self._normal_cache[mono] = True
        return None

    def is_normal(self, mono: TreeMonomial) -> bool:
        return self.find_reduction(mono) is None


def reduce_element(f: Element, gb: GroebnerBasis, trace: list | None = None) -> Element:
    """Long division: the normal form of f modulo the basis.

    Always rewrites the order-maximal reducible monomial, at its first
    occurrence in the deterministic occurrence order.  When `trace` is
    given, every step (monomial, coefficient, element, occurrence) is
    appended so the quotient can be replayed.
    """
    order = gb.order
    work = dict(f.terms)
    normal: dict[TreeMonomial, Fraction] = {}
    guard = 0
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        if not c:
            continue
        hit = gb.find_reduction(m)
        if hit is None:
            normal[m] = normal.get(m, Fraction(0)) + c
            continue
        g, occ = hit
        guard += 1
        if guard > 200000:
            raise RuntimeError("reduction did not terminate; order not admissible?")
        if trace is not None:
            trace.append((m, c, g, occ))
        rewritten = substitute(m, occ, g)
        # rewritten = m + tail, so f -> f - c*rewritten cancels m
        for mono, cc in rewritten.terms.items():
            if mono == m:
                continue
            key = order.key(mono)
            if key >= order.key(m):
                raise RuntimeError(
                    f"reduction increased a monomial: {format_tree(m)} -> {format_tree(mono)}"
                )
            tgt = normal if mono in normal else work
            tgt[mono] = tgt.get(mono, Fraction(0)) - c * cc
            if not tgt[mono]:
                del tgt[mono]
    return Element(normal, f.arity)


# ---------------------------------------------------------------------------
# Small common multiples

def small_common_multiples(
    u: TreeMonomial,
    v: TreeMonomial,
    arity_bound: int,
    weight_bound: int | None = None,
    ns: bool = False,
) -> list[SCM]:
    """All minimal monomials carrying overlapping occurrences of u and v.

    The vertex sets of the two occurrences share at least one vertex and
    exhaust the multiple; the fully coincident self-overlap is excluded.
    """
    if u.is_unit or v.is_unit:
        return []
    shapes = []
    for x in range(u.nvertices):
        sh = _superpose(u, v, x)
        if sh is not None:
            shapes.append(sh)
    for y in range(1, v.nvertices):
        sh = _superpose(v, u, y)
        if sh is not None:
            shapes.append(sh)
    out = []
    seen = set()
    for shape in shapes:
        n = _shape_arity(shape)
        wt = _shape_weight(shape)
        if n > arity_bound:
            continue
        if weight_bound is not None and wt > weight_bound:
            continue
        for labelled in _shape_labelings(shape, tuple(range(1, n + 1)), ns):
            mono = canonical_form(labelled)
            occs_u = divisor_occurrences(mono, u)
            occs_v = divisor_occurrences(mono, v)
            for ou in occs_u:
                for ov in occs_v:
                    if not (ou.vertices & ov.vertices):
                        continue
                    if ou.vertices | ov.vertices != frozenset(range(mono.nvertices)):
                        continue
                    if u == v and ou.vertices == ov.vertices:
                        continue
                    if u == v and ov.sort_key() > ou.sort_key():
                        ou, ov = ov, ou  # deeper occurrence first
                    key = (mono, ou.vertices, ov.vertices)
                    if u == v and (mono, ov.vertices, ou.vertices) in seen:
                        continue
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(SCM(mono, ou, ov))
    out.sort(key=lambda s: (s.multiple.weight, format_tree(s.multiple),
                            tuple(sorted(s.occ_u.vertices)), tuple(sorted(s.occ_v.vertices))))
    return out


def _superpose(u: TreeMonomial, v: TreeMonomial, x: int):
    """Overlay v's root onto vertex x of u, matching child slots.

    Returns an unlabelled shape tree: nodes are (gen, tag, [children]) where
    children are shapes or ("leaf",); tag records membership ("u","v","uv").
    """
    u_nodes = {}

    def build_u(node):
        kind, idx = node
        if kind == "l":
            return ["leaf", set()]
        sh = [u.verts[idx], {"u"}, [build_u(c) for c in u.vkids[idx]]]
        u_nodes[idx] = sh
        return sh

    root_shape = build_u(("v", 0))
    target = u_nodes.get(x)
    if target is None:
        return None
    ok = _merge_clean(target, v.enc)
    if not ok:
        return None
    return root_shape


def _merge_clean(sh, enc) -> bool:
    if isinstance(enc, int):
        return True
    if sh[0] == "leaf":
        sub = _build_shape(enc, "v")
        sh[0], sh[1] = sub[0], sub[1]
        if len(sh) == 2:
            sh.append(sub[2])
        else:
            sh[2] = sub[2]
        return True
    if sh[0] != enc[0]:
        return False
    sh[1].add("v")
    for kid, sub in zip(sh[2], enc[1:]):
        if not _merge_clean(kid, sub):
            return False
    return True


def _build_shape(enc, tag):
    if isinstance(enc, int):
        return ["leaf", set()]
    return [enc[0], {tag}, [_build_shape(c, tag) for c in enc[1:]]]


def _shape_arity(sh) -> int:
    if sh[0] == "leaf":
        return 1
    return sum(_shape_arity(k) for k in sh[2])


def _shape_weight(sh) -> int:
    if sh[0] == "leaf":
        return 0
    return sh[0].weight + sum(_shape_weight(k) for k in sh[2])


def _shape_labelings(sh, labels: tuple[int, ...], ns: bool = False):
    """All raw trees obtained by distributing `labels` over the shape's
    leaves compatibly with the fixed child slots (shuffle condition).

    With ns=True only the planar (interval) labelling is produced."""
    if sh[0] == "leaf":
        yield labels[0]
        return
    kids = sh[2]
    sizes = [_shape_arity(k) for k in kids]
    if ns:
        choices = [interval_blocks(sizes)]
    else:
        choices = [phi.blocks for phi in enumerate_shuffle_surjections(sizes)]
    for blocks in choices:
        for combo in _label_combos(kids, blocks, labels, ns):
            yield (sh[0], combo)


def _label_combos(kids, blocks, labels, ns):
    lists = []
    for kid, block in zip(kids, blocks):
        sub = tuple(labels[i - 1] for i in block)
        lists.append(list(_shape_labelings(kid, sub, ns)))
    return itertools.product(*lists)


# ---------------------------------------------------------------------------
# S-polynomials and completion

def s_polynomials(
    g1: Element,
    g2: Element,
    order: MonomialOrder,
    arity_bound: int,
    weight_bound: int | None = None,
    ns: bool = False,
) -> list[tuple[SCM, Element]]:
    """S-polynomials from every small common multiple of the leading terms."""
    u = leading_term(order, g1)[0]
    v = leading_term(order, g2)[0]
    out = []
    for scm in small_common_multiples(u, v, arity_bound, weight_bound, ns):
        s = substitute(scm.multiple, scm.occ_u, g1) - substitute(scm.multiple, scm.occ_v, g2)
        out.append((scm, s))
    return out


def _default_weight_bound(p: Presentation, arity_bound: int) -> int:
    wmax = max((r.weight for r in p.relations), default=1)
    gmax = max((g.weight for g in p.generators), default=1)
    return max(2 * wmax, arity_bound * gmax, wmax + arity_bound)


def interreduce(elements: list[Element], order: MonomialOrder,
                arity_bound: int, weight_bound: int) -> list[Element]:
    """Tail-reduce every element against the others; drop redundant ones."""
    elems = [make_monic(order, e) for e in elements if not e.is_zero()]
    changed = True
    while changed:
        changed = False
        elems.sort(key=lambda e: (e.arity, e.weight, order.key(leading_term(order, e)[0])))
        for i in range(len(elems)):
            rest = elems[:i] + elems[i + 1 :]
            gb = GroebnerBasis(
                _shadow_presentation(order), rest, arity_bound, weight_bound
            )
            r = reduce_element(elems[i], gb)
            if r.is_zero():
                del elems[i]
                changed = True
                break
            r = make_monic(order, r)
            if r != elems[i]:
                elems[i] = r
                changed = True
                break
    elems.sort(key=lambda e: (e.arity, e.weight, order.key(leading_term(order, e)[0])))
    return elems


_shadow_cache: dict = {}


def _shadow_presentation(order: MonomialOrder) -> Presentation:
    key = id(order)
    if key not in _shadow_cache:
        _shadow_cache[key] = Presentation((), (), order)
    return _shadow_cache[key]


def buchberger(
    p: Presentation,
    arity_bound: int,
    weight_bound: int | None = None,
) -> GroebnerBasis:
    """Buchberger completion truncated at the given arity (and weight) bound.

    The result is monic, interreduced and sorted; it is independent of the
    order in which the input relations are listed.
    """
    if weight_bound is None:
        weight_bound = _default_weight_bound(p, arity_bound)
    order = p.order
    basis = interreduce(list(p.relations), order, arity_bound, weight_bound)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1)]
    while pairs:
        i, j = pairs.pop(0)
        g1, g2 = basis[i], basis[j]
        gb = GroebnerBasis(p, basis, arity_bound, weight_bound)
        for scm, s in s_polynomials(g1, g2, order, arity_bound, weight_bound, p.nonsymmetric):
            if s.is_zero():
                continue
            r = reduce_element(s, gb)
            if r.is_zero():
                continue
            r = make_monic(order, r)
            basis.append(r)
            k = len(basis) - 1
            pairs.extend((k, t) for t in range(k + 1))
            gb = GroebnerBasis(p, basis, arity_bound, weight_bound)
    basis = interreduce(basis, order, arity_bound, weight_bound)
    return GroebnerBasis(p, basis, arity_bound, weight_bound)


@dataclass
class CertificateEntry:
    i: int
    j: int
    scm: SCM
    remainder: Element

    @property
    def ok(self) -> bool:
        return self.remainder.is_zero()


def is_groebner(gb: GroebnerBasis) -> tuple[bool, list[CertificateEntry]]:
    """Diamond-lemma check: every S-polynomial within bounds reduces to zero."""
    cert: list[CertificateEntry] = []
    ok = True
    for i in range(len(gb.elements)):
        for j in range(i + 1):
            for scm, s in s_polynomials(
                gb.elements[i], gb.elements[j], gb.order,
                gb.arity_bound, gb.weight_bound, gb.presentation.nonsymmetric,
            ):
                r = reduce_element(s, gb) if not s.is_zero() else s
                cert.append(CertificateEntry(i, j, scm, r))
                if not r.is_zero():
                    ok = False
    return ok, cert


# ---------------------------------------------------------------------------
# Normal monomials and graded dimensions

def _auto_weight_bound(p: Presentation, gb: GroebnerBasis, n: int) -> int:
    """A sound weight cap for normal monomials of arity n, when one exists.

    Without unary generators the weight is bounded by the vertex count.
    With unary generators we need a leading term that is a pure tower of
    each unary generator; runs of that generator are then shorter than the
    tower, which bounds the weight.
    """
    gens = p.generators
    non_unary = [g for g in gens if g.arity > 1]
    unary = [g for g in gens if g.arity == 1]
    wmax = max((g.weight for g in non_unary), default=0)
    bound = max(0, (n - 1)) * wmax if non_unary else 0
    if not unary:
        return max(bound, 1)
    for u in unary:
        tower_len = None
        for lt in gb.leading_terms():
            if lt.arity == 1 and all(v == u for v in lt.verts):
                tower_len = min(tower_len or lt.nvertices, lt.nvertices)
        if tower_len is None:
            raise ValueError(
                f"cannot bound weight: no leading term kills towers of {u.name!r};"
                " pass max_weight explicitly"
            )
        bound += 2 * n * (tower_len - 1) * u.weight
    return max(bound, 1)


def normal_monomials(
    gb: GroebnerBasis, n: int, max_weight: int | None = None
) -> list[TreeMonomial]:
    """All monomials of arity n not divisible by any leading term.

    Enumerates trees recursively, pruning at the root: a divisor not
    containing the root lives in a proper subtree, so only root occurrences
    need checking once children are normal.
    """
    if n > gb.arity_bound:
        raise ValueError(f"arity {n} above certified bound {gb.arity_bound}")
    p = gb.presentation
    if max_weight is None:
        max_weight = _auto_weight_bound(p, gb, n)
    leads = [lt for lt in gb.leading_terms()]
    memo: dict[tuple[int, int], list[TreeMonomial]] = {}

    def root_normal(t: TreeMonomial) -> bool:
        for lt in leads:
            if lt.nvertices > t.nvertices or lt.arity > t.arity:
                continue
            occ = _root_occurrence(t, lt)
            if occ:
                return False
        return True

    def rec(m: int, wcap: int) -> list[TreeMonomial]:
        key = (m, wcap)
        if key in memo:
            return memo[key]
        out: list[TreeMonomial] = []
        if m == 1:
            out.append(TreeMonomial(None, 1))
        for g in p.generators:
            if g.arity > m or g.weight > wcap:
                continue
            from .trees import enumerate_shuffle_surjections_sized, _children_combos

            for blocks in enumerate_shuffle_surjections_sized(g.arity, m, p.nonsymmetric):
                sizes = [len(b) for b in blocks]
                for kids in _children_combos(sizes, wcap - g.weight, rec):
                    raw = (
                        g,
                        [
                            _relabel(k.enc, blocks[i]) if not k.is_unit else blocks[i][0]
                            for i, k in enumerate(kids)
                        ],
                    )
                    t = canonical_form(raw)
                    if root_normal(t):
                        out.append(t)
        seen = set()
        uniq = []
        for t in out:
            if t not in seen:
                seen.add(t)
                uniq.append(t)
        memo[key] = uniq
        return uniq

    def _relabel(enc, block):
        if isinstance(enc, int):
            return block[enc - 1]
        return (enc[0], [_relabel(c, block) for c in enc[1:]])

    result = [t for t in rec(n, max_weight)]
    result.sort(key=lambda t: (t.weight, format_tree(t)))
    return result


def _root_occurrence(t: TreeMonomial, lt: TreeMonomial) -> bool:
    from .trees import _match_at

    return _match_at(t, lt, 0) is not None


def hilbert(gb: GroebnerBasis, n: int, max_weight: int | None = None) -> dict:
    """Graded dimension table of the quotient in arity n.

    Returns {"total": int, "by_homdeg_weight": {(d, w): count},
    "character": {homdeg: count}}.
    """
    monos = normal_monomials(gb, n, max_weight)
    by: dict[tuple[int, int], int] = {}
    char: dict[int, int] = {}
    for t in monos:
        by[(t.homdeg, t.weight)] = by.get((t.homdeg, t.weight), 0) + 1
        char[t.homdeg] = char.get(t.homdeg, 0) + 1
    return {"total": len(monos), "by_homdeg_weight": by, "character": char}
