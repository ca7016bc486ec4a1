"""Admissible total orders on tree monomials.

Three order families are provided.  All of them work from the path data of
a monomial: for each leaf, the word of generator names met on the way from
the root to that leaf, plus the planar sequence of leaf labels.

* ``path_lex``: compare the words of leaf 1, leaf 2, ... in turn, each
  word degree-lexicographically (longer word wins, then generator
  precedence letter by letter); ties broken by the planar leaf sequence
  (smaller sequence wins).
* ``pathlex_then_perm``: same scheme, but the degree of a word is the sum
  of per-generator order weights (default 1 per letter, overridable), so
  letters can be made heavier or lighter before the letterwise tiebreak.
* ``weight_first_reverse_pathlex``: compare total tree weights first,
  then as in path_lex.  Intended for presentations whose generator
  precedence is reversed-by-arity (larger arity smaller), e.g. families
  of bracket operations.

Words are always read from the root and leaves are always scanned in
label order: scanning in any other order is not stable under shuffle
relabelling (block minima increase with the leaf index, block maxima do
not).  Every stage is stable under composition factor by factor, which is
what makes long division terminate; `check_admissibility` samples random
compositions to confirm admissibility for a given alphabet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .trees import (
    Element,
    Generator,
    TreeMonomial,
    compose,
    enumerate_shuffle_surjections,
    enumerate_trees,
)

KINDS = ("path_lex", "pathlex_then_perm", "weight_first_reverse_pathlex")

LT, EQ, GT = -1, 0, 1


@dataclass
class MonomialOrder:
    """A total order on tree monomials of equal arity."""

    kind: str
    precedence: tuple[str, ...] = ()
    order_weights: dict | None = None

    _ranks: dict = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}; choose from {KINDS}")
        self._ranks = {
            name: len(self.precedence) - i for i, name in enumerate(self.precedence)
        }

    def _rank(self, gen: Generator) -> int:
        r = self._ranks.get(gen.name)
        if r is None:
            # unlisted generators sit below all listed ones, by name
            r = -1 - sum(ord(c) for c in gen.name) % 1000
            self._ranks[gen.name] = r
        return r

    def _order_weight(self, gen: Generator) -> int:
        if self.order_weights is not None and gen.name in self.order_weights:
            return self.order_weights[gen.name]
        return 1

    def key(self, mono: TreeMonomial):
        """Sort key: bigger key means bigger monomial."""
        k = self._cache.get(mono)
        if k is None:
            k = self._build_key(mono)
            self._cache[mono] = k
        return k

    def _build_key(self, mono: TreeMonomial):
        if mono.is_unit:
            return (0,)
        gen_of = {}
        for v in mono.verts:
            gen_of[v.name] = v
        weighted = self.kind == "pathlex_then_perm" and self.order_weights
        words = []
        for path in mono.leaf_paths:
            letters = tuple(self._rank(gen_of[name]) for name in path)
            if weighted:
                deg = sum(self._order_weight(gen_of[name]) for name in path)
                words.append((deg, len(letters), letters))
            else:
                words.append((len(letters), letters))
        labels = tuple(-l for l in mono.planar_leaves)
        if self.kind == "weight_first_reverse_pathlex":
            return (1, mono.weight, tuple(words), labels)
        return (1, tuple(words), labels)

    def compare(self, a: TreeMonomial, b: TreeMonomial) -> int:
        if a.arity != b.arity:
            raise ValueError("cannot compare monomials of different arities")
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LT
        if ka > kb:
            return GT
        return EQ


def leading_term(order: MonomialOrder, f: Element):
    """Order-maximal monomial of a nonzero element, with its coefficient."""
    if f.is_zero():
        raise ValueError("zero element has no leading term")
    m = max(f.terms, key=order.key)
    return m, f.terms[m]


def leading_monomial(order: MonomialOrder, f: Element) -> TreeMonomial:
    return leading_term(order, f)[0]


def make_monic(order: MonomialOrder, f: Element) -> Element:
    _, c = leading_term(order, f)
    return f.scale(1 / c)


# ---------------------------------------------------------------------------
# Admissibility testing

@dataclass
class AdmissibilityReport:
    samples: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_admissibility(
    order: MonomialOrder,
    gens: Sequence[Generator],
    sample_budget: int = 2000,
    seed: int = 0,
    max_arity: int = 4,
    max_weight: int = 5,
    compare=None,
) -> AdmissibilityReport:
    """Sampled test that the order is monotone under shuffle composition.

    Draws random same-arity pairs a > b, wraps both in the same random
    composition context (either as an inner factor or as the outer factor),
    and checks the comparison is preserved.  Any violation witness is
    reported.  An empty budget passes trivially.
    """
    rng = random.Random(seed)
    cmp = compare or order.compare
    pool: dict[int, list[TreeMonomial]] = {}
    for n in range(1, max_arity + 1):
        trees = enumerate_trees(gens, n, max_weight)
        if len(trees) >= 2:
            pool[n] = trees
    violations = []
    arities = sorted(pool)
    if not arities:
        return AdmissibilityReport(0, [])
    done = 0
    while done < sample_budget:
        n = rng.choice(arities)
        a, b = rng.sample(pool[n], 2)
        c = cmp(a, b)
        if c == 0:
            continue
        if c < 0:
            a, b = b, a
        done += 1
        if rng.random() < 0.5:
            # inner position: gamma(outer; ..., a, ...) vs same with b
            k = rng.randint(1, 3)
            slot = rng.randint(1, k)
            outers = pool.get(k)
            if not outers:
                continue
            outer = rng.choice(outers)
            sizes = [rng.randint(1, 2) for _ in range(k)]
            sizes[slot - 1] = n
            phis = enumerate_shuffle_surjections(sizes)
            phi = rng.choice(phis)
            inner_monos = []
            for i, s in enumerate(sizes):
                if i == slot - 1:
                    inner_monos.append(a)
                else:
                    choices = pool.get(s) or []
                    inner_monos.append(rng.choice(choices) if choices else None)
            if any(x is None for x in inner_monos):
                continue
            ca = compose(
                Element.monomial(outer), phi, [Element.monomial(x) for x in inner_monos]
            )
            inner_monos[slot - 1] = b
            cb = compose(
                Element.monomial(outer), phi, [Element.monomial(x) for x in inner_monos]
            )
        else:
            # outer position: gamma(a; h...) vs gamma(b; h...)
            sizes = [rng.randint(1, 2) for _ in range(n)]
            phis = enumerate_shuffle_surjections(sizes)
            phi = rng.choice(phis)
            hs = []
            for s in sizes:
                choices = pool.get(s) or []
                hs.append(rng.choice(choices) if choices else None)
            if any(x is None for x in hs):
                continue
            ca = compose(Element.monomial(a), phi, [Element.monomial(x) for x in hs])
            cb = compose(Element.monomial(b), phi, [Element.monomial(x) for x in hs])
        ma = next(iter(ca.terms))
        mb = next(iter(cb.terms))
        if cmp(ma, mb) != GT:
            violations.append((a, b, ma, mb))
            if len(violations) >= 5:
                break
    return AdmissibilityReport(done, violations)
