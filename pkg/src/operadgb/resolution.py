"""The free resolution of an operad with monomial relations.

Basis elements are tree monomials with a set of marked divisor occurrences
of the (monomial) relations; the differential removes one mark at a time
with exterior-algebra signs.  For a fixed underlying tree the complex is
the augmented chain complex of a simplex, hence acyclic whenever the tree
is divisible at all; the quotient operad sits in homological degree zero.

Free generators are the marked trees in which every internal edge is
covered by some mark ("indecomposable"); projecting the differential to
the span of generators computes Quillen homology in the monomial case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .trees import (
    Generator,
    Occurrence,
    TreeMonomial,
    divisor_occurrences,
    enumerate_trees,
    format_tree,
)

# A basis element of the marked complex: (tree, marks) where marks is a
# sorted tuple of indices into the divisor list of the tree.
BasisElt = tuple[TreeMonomial, tuple[int, ...]]


@dataclass(frozen=True)
class ResolutionGenerator:
    """An indecomposable marked tree: a free generator of the resolution."""

    tree: TreeMonomial
    marks: tuple[int, ...]
    occurrences: tuple[Occurrence, ...]

    @property
    def degree(self) -> int:
        """Homological degree: marks plus the tree's own degree."""
        return self.tree.homdeg + len(self.marks)

    @property
    def weight(self) -> int:
        return self.tree.weight

    @property
    def arity(self) -> int:
        return self.tree.arity

    def __repr__(self):
        return f"<gen {format_tree(self.tree)} marks={self.marks}>"


class MarkedComplex:
    """Marked-tree complex for a fixed set of monomial relations.

    `numbering` optionally reorders the divisor occurrences of each tree
    (e.g. a staircase numbering from the matching module); by default the
    deterministic occurrence order is used.  The numbering fixes all wedge
    signs, the contracting homotopy, and which divisor is "first".
    """

    def __init__(
        self,
        leading: Sequence[TreeMonomial],
        generators: Sequence[Generator],
        numbering: Callable[[TreeMonomial, tuple[Occurrence, ...]], tuple[Occurrence, ...]]
        | None = None,
        ns: bool = False,
    ):
        self.leading = tuple(leading)
        self.generators = tuple(generators)
        self.numbering = numbering
        self.ns = ns
        self._div_cache: dict[TreeMonomial, tuple[Occurrence, ...]] = {}
        self._indec_cache: dict[BasisElt, bool] = {}

    # -- divisors -----------------------------------------------------
    def divisors(self, tree: TreeMonomial) -> tuple[Occurrence, ...]:
        occs = self._div_cache.get(tree)
        if occs is None:
            found = []
            for lt in self.leading:
                found.extend(divisor_occurrences(tree, lt))
            found.sort(key=Occurrence.sort_key)
            occs = tuple(found)
            if self.numbering is not None:
                occs = self.numbering(tree, occs)
            self._div_cache[tree] = occs
        return occs

    # -- basis bookkeeping --------------------------------------------
    def degree(self, b: BasisElt) -> int:
        return b[0].homdeg + len(b[1])

    def parity_prefix(self, tree: TreeMonomial) -> int:
        """Number of odd vertices, mod 2 (sign prefix for wedge operators)."""
        return sum(g.parity for g in tree.verts) & 1

    def is_indecomposable(self, b: BasisElt) -> bool:
        hit = self._indec_cache.get(b)
        if hit is None:
            hit = self._compute_indec(b)
            self._indec_cache[b] = hit
        return hit

    def _compute_indec(self, b: BasisElt) -> bool:
        tree, marks = b
        if tree.is_unit:
            return False
        if tree.nvertices == 1:
            return True  # corolla: no internal edges to cover
        occs = self.divisors(tree)
        covered = set()
        for i in marks:
            vs = occs[i].vertices
            for v in vs:
                parent, _ = tree.vparent[v]
                if parent is not None and parent in vs:
                    covered.add((parent, v))
        for v in range(1, tree.nvertices):
            parent, _ = tree.vparent[v]
            if (parent, v) not in covered:
                return False
        return True

    # -- differential ---------------------------------------------------
    def d(self, b: BasisElt) -> dict[BasisElt, Fraction]:
        """Remove one mark at a time; signs pass the tree's odd vertices
        and the earlier wedge factors."""
        tree, marks = b
        out: dict[BasisElt, Fraction] = {}
        prefix = self.parity_prefix(tree)
        for r, i in enumerate(marks):
            sign = -1 if (prefix + r) & 1 else 1
            rest = marks[:r] + marks[r + 1 :]
            key = (tree, rest)
            out[key] = out.get(key, Fraction(0)) + sign
        return {k: c for k, c in out.items() if c}

    def d_ab(self, b: BasisElt) -> dict[BasisElt, Fraction]:
        """Differential followed by projection to indecomposables."""
        return {k: c for k, c in self.d(b).items() if self.is_indecomposable(k)}

    def h(self, b: BasisElt) -> dict[BasisElt, Fraction]:
        """Contracting homotopy: wedge with the first divisor when absent."""
        tree, marks = b
        occs = self.divisors(tree)
        if not occs or (marks and marks[0] == 0):
            return {}
        if 0 in marks:
            return {}
        sign = -1 if self.parity_prefix(tree) & 1 else 1
        return {(tree, (0,) + marks): Fraction(sign)}

    # -- enumeration ----------------------------------------------------
    def mark_subsets(self, tree: TreeMonomial):
        occs = self.divisors(tree)
        n = len(occs)
        for mask in range(1 << n):
            yield tuple(i for i in range(n) if mask >> i & 1)

    def tree_strata(self, arity: int, max_weight: int) -> list[TreeMonomial]:
        return enumerate_trees(self.generators, arity, max_weight, self.ns)

    def basis(self, arity: int, max_weight: int) -> list[BasisElt]:
        out = []
        for t in self.tree_strata(arity, max_weight):
            for marks in self.mark_subsets(t):
                out.append((t, marks))
        return out

    def resolution_generators(self, arity: int, max_weight: int) -> list[ResolutionGenerator]:
        """All indecomposable marked trees of the given arity."""
        gens = []
        for t in self.tree_strata(arity, max_weight):
            occs = self.divisors(t)
            for marks in self.mark_subsets(t):
                if self.is_indecomposable((t, marks)):
                    gens.append(
                        ResolutionGenerator(t, marks, tuple(occs[i] for i in marks))
                    )
        gens.sort(key=lambda g: (g.weight, len(g.marks), format_tree(g.tree), g.marks))
        return gens

    # -- homology of a single tree stratum -------------------------------
    def tree_complex_acyclic(self, tree: TreeMonomial) -> bool:
        """Exact-rank check that the full marked complex of a divisible
        tree is acyclic (in every degree, including zero)."""
        occs = self.divisors(tree)
        q = len(occs)
        if q == 0:
            return True
        by_deg: dict[int, list[tuple[int, ...]]] = {}
        for marks in self.mark_subsets(tree):
            by_deg.setdefault(len(marks), []).append(marks)
        ranks: dict[int, int] = {}
        for k in range(1, q + 1):
            target_index = {m: i for i, m in enumerate(by_deg.get(k - 1, []))}
            rows = []
            for m in by_deg.get(k, []):
                row = {}
                for key, c in self.d((tree, m)).items():
                    row[target_index[key[1]]] = c
                rows.append(row)
            ranks[k] = linalg.rank(rows)
        for k in range(0, q + 1):
            dim = len(by_deg.get(k, []))
            if dim - ranks.get(k, 0) - ranks.get(k + 1, 0) != 0:
                return False
        return True


@dataclass
class HomologyTable:
    """Dimensions by (arity, homological degree), finer split by weight."""

    dims: dict
    by_weight: dict
    representatives: dict | None = None

    def dim(self, arity: int, degree: int) -> int:
        return self.dims.get((arity, degree), 0)

    def rows(self):
        return sorted(self.dims.items())


def abelianized_homology(
    mc: MarkedComplex, arity: int, max_weight: int, keep_reps: bool = False
) -> HomologyTable:
    """Quillen homology of the monomial quotient: exact ranks of the
    differential induced on indecomposables, stratified by weight."""
    gens = mc.resolution_generators(arity, max_weight)
    strata: dict[tuple[int, int], list[ResolutionGenerator]] = {}
    for g in gens:
        strata.setdefault((g.degree, g.weight), []).append(g)
    dims: dict = {}
    by_weight: dict = {}
    reps: dict = {}
    rank_cache: dict[tuple[int, int], int] = {}

    def rank_from(deg: int, wt: int) -> int:
        key = (deg, wt)
        if key in rank_cache:
            return rank_cache[key]
        sources = strata.get((deg, wt), [])
        targets = strata.get((deg - 1, wt), [])
        tindex = {(g.tree, g.marks): i for i, g in enumerate(targets)}
        rows = []
        for g in sources:
            row = {}
            for k, c in mc.d_ab((g.tree, g.marks)).items():
                if k in tindex:
                    row[tindex[k]] = c
            rows.append(row)
        rank_cache[key] = linalg.rank(rows)
        return rank_cache[key]

    for (deg, wt), gs in sorted(strata.items()):
        r_out = rank_from(deg, wt)
        r_in = rank_from(deg + 1, wt)
        b = len(gs) - r_out - r_in
        if b:
            dims[(arity, deg)] = dims.get((arity, deg), 0) + b
            by_weight[(arity, deg, wt)] = b
            if keep_reps and r_out == 0 and r_in == 0:
                # zero differential on this stratum: the generators are reps
                reps.setdefault((arity, deg), []).extend(gs)
    return HomologyTable(dims, by_weight, reps if keep_reps else None)
