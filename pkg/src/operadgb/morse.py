"""Matchings on the marked-tree complex and explicit homology classes.

A staircase numbering of the divisor occurrences of a tree is one where
earlier divisors meet later ones through the divisors in between: for
i < j < k with S_i meeting S_j, the intersection of S_i and S_k is
contained in that of S_j and S_k.  Such a numbering yields an inductive
matching on the indecomposable marked trees whose critical cells carry the
homology: a cell survives iff removing any present mark makes the tree
decomposable, and wedging any absent mark S_j lets some earlier present
mark be removed indecomposably.

Numberings are found by shape (spines of unary operators, comb-shaped
binary relation sets) and otherwise by bounded exhaustive search; a
failed search degrades to the exact-rank tables, without representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .resolution import BasisElt, HomologyTable, MarkedComplex, ResolutionGenerator, abelianized_homology
from .trees import Occurrence, TreeMonomial, format_tree


def numbering_is_staircase(occs: Sequence[Occurrence]) -> bool:
    """The intersection condition on an ordered list of divisors."""
    n = len(occs)
    for i in range(n):
        for j in range(i + 1, n):
            if not (occs[i].vertices & occs[j].vertices):
                continue
            for k in range(j + 1, n):
                left = occs[i].vertices & occs[k].vertices
                if not left <= (occs[j].vertices & occs[k].vertices):
                    return False
    return True


def _is_left_comb(t: TreeMonomial) -> bool:
    v = 0
    while True:
        kids = t.vkids[v]
        first = kids[0]
        if first[0] == "l":
            return all(k[0] == "l" for k in kids)
        if any(k[0] != "l" for k in kids[1:]):
            return False
        v = first[1]


def _is_right_comb(t: TreeMonomial) -> bool:
    v = 0
    while True:
        kids = t.vkids[v]
        last = kids[-1]
        if last[0] == "l":
            return all(k[0] == "l" for k in kids)
        if any(k[0] != "l" for k in kids[:-1]):
            return False
        v = last[1]


def staircase_numbering(
    tree: TreeMonomial, occs: tuple[Occurrence, ...], search_budget: int = 40320
) -> tuple[Occurrence, ...] | None:
    """Order divisors so the staircase condition holds, or None.

    Tried in turn: position along a unary spine (all divisors on one
    path), the comb order (deeper-rooted divisors first, left combs before
    right combs at a shared root), then bounded exhaustive search.
    """
    if len(occs) <= 1:
        return occs

    # unary spine: every vertex has at most one child vertex
    spine = all(
        sum(1 for k in tree.vkids[v] if k[0] == "v") <= 1 for v in range(tree.nvertices)
    )
    if spine:
        cand = tuple(sorted(occs, key=lambda o: tree.vdepth[o.root]))
        if numbering_is_staircase(cand):
            return cand

    def comb_rank(o: Occurrence):
        # deeper roots first; left comb before right comb at equal depth
        left = _is_left_comb(o.beta)
        return (-tree.vdepth[o.root], 0 if left else 1, o.sort_key())

    cand = tuple(sorted(occs, key=comb_rank))
    if numbering_is_staircase(cand):
        return cand

    count = 0
    for perm in itertools.permutations(occs):
        count += 1
        if count > search_budget:
            return None
        if numbering_is_staircase(perm):
            return perm
    return None


@dataclass
class Matching:
    """An acyclic partial matching on the indecomposable marked trees of
    one underlying tree."""

    tree: TreeMonomial
    edges: dict  # matched cell -> its partner one degree down
    critical: list[BasisElt]


def build_matching(mc: MarkedComplex, tree: TreeMonomial) -> Matching:
    """The inductive matching: at stage k, pair v with v minus its k-th
    mark whenever both are unmatched and the removal stays indecomposable."""
    occs = mc.divisors(tree)
    q = len(occs)
    cells = [
        (tree, marks) for marks in mc.mark_subsets(tree) if mc.is_indecomposable((tree, marks))
    ]
    unmatched = set(cells)
    edges: dict = {}
    for k in range(q):
        for v in sorted(unmatched, key=lambda b: (len(b[1]), b[1])):
            marks = v[1]
            if k not in marks:
                continue
            w = (tree, tuple(i for i in marks if i != k))
            if w in unmatched and w != v and mc.is_indecomposable(w):
                unmatched.discard(v)
                unmatched.discard(w)
                edges[v] = w
    critical = sorted(unmatched, key=lambda b: (len(b[1]), b[1]))
    return Matching(tree, edges, critical)


def matching_is_acyclic(mc: MarkedComplex, m: Matching) -> bool:
    """No directed cycles once matched edges are reversed."""
    cells = set()
    for v, w in m.edges.items():
        cells.add(v)
        cells.add(w)
    cells.update(m.critical)
    graph: dict[BasisElt, list[BasisElt]] = {c: [] for c in cells}
    reverse_of = {w: v for v, w in m.edges.items()}
    for v in cells:
        for w in mc.d_ab(v):
            if w not in graph:
                continue
            if m.edges.get(v) == w:
                continue  # matched edge: will be reversed
            graph[v].append(w)
    for w, v in reverse_of.items():
        graph[w].append(v)
    # DFS cycle detection
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {c: WHITE for c in graph}

    def dfs(u):
        stack = [(u, iter(graph[u]))]
        color[u] = GRAY
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == GRAY:
                    return False
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(graph[nxt])))
                    break
            else:
                color[node] = BLACK
                stack.pop()
        return True

    for c in graph:
        if color[c] == WHITE:
            if not dfs(c):
                return False
    return True


def critical_cells_by_conditions(mc: MarkedComplex, tree: TreeMonomial) -> list[BasisElt]:
    """Cells passing the two survival conditions directly."""
    occs = mc.divisors(tree)
    out = []
    for marks in mc.mark_subsets(tree):
        b = (tree, marks)
        if not mc.is_indecomposable(b):
            continue
        ok = True
        for j in marks:  # condition I: removals decompose
            rest = tuple(i for i in marks if i != j)
            if mc.is_indecomposable((tree, rest)):
                ok = False
                break
        if not ok:
            continue
        present = set(marks)
        for j in range(len(occs)):  # condition II: earlier rescues exist
            if j in present:
                continue
            extended = tuple(sorted(present | {j}))
            found = False
            for i in marks:
                if i >= j:
                    continue
                test = tuple(x for x in extended if x != i)
                if mc.is_indecomposable((tree, test)):
                    found = True
                    break
            if not found:
                ok = False
                break
        if ok:
            out.append(b)
    return out


@dataclass
class CriticalCellReport:
    cells: list[ResolutionGenerator]
    fallback_trees: list[TreeMonomial]  # strata without a staircase numbering


def critical_cells(
    mc_plain: MarkedComplex, arity: int, max_weight: int
) -> CriticalCellReport:
    """Critical cells per underlying tree, for strata admitting a
    staircase numbering.  Other strata are reported for the rank fallback.
    """
    cells: list[ResolutionGenerator] = []
    fallback: list[TreeMonomial] = []
    renumbered = MarkedComplex(
        mc_plain.leading,
        mc_plain.generators,
        numbering=lambda t, occs: staircase_numbering(t, occs) or occs,
        ns=mc_plain.ns,
    )
    for t in mc_plain.tree_strata(arity, max_weight):
        occs0 = renumbered.divisors(t)
        if len(occs0) > 1 and staircase_numbering(t, tuple(sorted(occs0, key=Occurrence.sort_key))) is None:
            fallback.append(t)
            continue
        for b in critical_cells_by_conditions(renumbered, t):
            occs = renumbered.divisors(t)
            cells.append(
                ResolutionGenerator(t, b[1], tuple(occs[i] for i in b[1]))
            )
    cells.sort(key=lambda g: (g.weight, len(g.marks), format_tree(g.tree), g.marks))
    return CriticalCellReport(cells, fallback)


def homology_oracle(
    leading: Sequence[TreeMonomial],
    generators,
    arity: int,
    max_weight: int,
    ns: bool = False,
) -> HomologyTable:
    """Exact-rank homology of the differential on indecomposables."""
    mc = MarkedComplex(leading, generators, ns=ns)
    return abelianized_homology(mc, arity, max_weight)
