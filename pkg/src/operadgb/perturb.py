"""Deforming the monomial resolution to resolve the actual quotient.

Given a completed basis, the marked-tree complex of its leading terms is
deformed: on a one-mark generator the new differential returns the whole
relation (not just its leading term), higher degrees are corrected by the
contracting homotopy, and everything extends to composite marked trees as
a derivation.  The homotopy against the deformed differential is built by
peeling leading underlying trees, which strictly decrease at every step.

The differential induced on the space of free generators (project the
value of D to indecomposables) computes Quillen homology of the quotient
and the generator tables of its minimal model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .groebner import GroebnerBasis, reduce_element
from .orders import leading_term
from .resolution import BasisElt, HomologyTable, MarkedComplex, ResolutionGenerator
from .trees import (
    Element,
    TreeMonomial,
    format_tree,
    graft_monomials,
    koszul_sign,
    substitute,
)

Vec = dict  # BasisElt -> Fraction


def vadd(a: Vec, b: Vec, scale: Fraction = Fraction(1)) -> Vec:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) + scale * c
        if not out[k]:
            del out[k]
    return out


def vscale(a: Vec, c) -> Vec:
    c = Fraction(c)
    return {k: c * x for k, x in a.items()} if c else {}


class PerturbedComplex:
    """The deformed differential D and homotopy H over a completed basis."""

    def __init__(self, gb: GroebnerBasis, mc: MarkedComplex | None = None):
        self.gb = gb
        self.order = gb.order
        p = gb.presentation
        self.mc = mc or MarkedComplex(gb.leading_terms(), p.generators, ns=p.nonsymmetric)
        if self.mc.leading != gb.leading_terms():
            raise ValueError("marked complex must be built on the basis leading terms")
        self._relation_of = {lt: g for lt, g in zip(gb.leading_terms(), gb.elements)}
        self._D_cache: dict[BasisElt, Vec] = {}
        self._div_index: dict[TreeMonomial, dict[frozenset, int]] = {}

    # ------------------------------------------------------------------
    def _divisor_index(self, tree: TreeMonomial) -> dict[frozenset, int]:
        idx = self._div_index.get(tree)
        if idx is None:
            idx = {o.vertices: i for i, o in enumerate(self.mc.divisors(tree))}
            self._div_index[tree] = idx
        return idx

    def degree(self, b: BasisElt) -> int:
        return self.mc.degree(b)

    # -- composition of marked basis elements ---------------------------
    def compose_marked(
        self, outer: BasisElt, blocks, inners: Sequence[BasisElt | None]
    ) -> tuple[BasisElt, int]:
        """Graft marked trees; None stands for the identity.

        The sign is the Koszul sign of merging the factors' symbol
        sequences (vertices, then marks, per factor) into the composite's
        (vertices in depth-first order, marks in numbering order); marks
        count as odd symbols.
        """
        t_out, m_out = outer
        in_trees = []
        in_marks = []
        for x in inners:
            if x is None:
                from .trees import UNIT

                in_trees.append(UNIT)
                in_marks.append(())
            else:
                in_trees.append(x[0])
                in_marks.append(x[1])
        comp, _vsign, maps = graft_monomials(t_out, blocks, in_trees)
        # transported marks
        occ_lists = [self.mc.divisors(t_out)] + [self.mc.divisors(t) for t in in_trees]
        comp_index = self._divisor_index(comp)
        mark_symbols = []  # (composite divisor index, symbol)
        all_marks = [m_out] + list(in_marks)
        for fi, marks in enumerate(all_marks):
            for mk in marks:
                occ = occ_lists[fi][mk]
                comp_vs = frozenset(maps[fi][v] for v in occ.vertices)
                ci = comp_index.get(comp_vs)
                if ci is None:
                    raise RuntimeError("transported mark is not a divisor of the composite")
                mark_symbols.append((ci, ("m", fi, mk)))
        comp_marks = tuple(sorted(ci for ci, _ in mark_symbols))
        if len(set(comp_marks)) != len(comp_marks):
            raise RuntimeError("mark collision under composition")
        # symbol sequences
        parity = {}
        src = []
        factors = [t_out] + in_trees
        for fi, t in enumerate(factors):
            for v in range(t.nvertices):
                sym = ("v", fi, v)
                parity[sym] = t.verts[v].parity
                src.append(sym)
            for mk in all_marks[fi]:
                sym = ("m", fi, mk)
                parity[sym] = 1
                src.append(sym)
        inv_vertex = {}
        for fi, mp in enumerate(maps):
            for v, c in enumerate(mp):
                inv_vertex[c] = ("v", fi, v)
        dst = [inv_vertex[c] for c in range(comp.nvertices)]
        dst += [sym for _, sym in sorted(mark_symbols, key=lambda x: x[0])]
        sign = koszul_sign(src, dst, parity)
        return (comp, comp_marks), sign

    # -- factorisation ---------------------------------------------------
    def factor(self, b: BasisElt):
        """Split at uncovered internal edges: (root piece, blocks, args).

        Returns None when b is indecomposable.  Each argument is a marked
        basis element on its own standardized tree (or None for a bare
        leaf), and composing back reproduces b up to the returned sign.
        """
        tree, marks = b
        if self.mc.is_indecomposable(b):
            return None
        occs = self.mc.divisors(tree)
        covered = set()
        for i in marks:
            vs = occs[i].vertices
            for v in vs:
                parent, _ = tree.vparent[v]
                if parent is not None and parent in vs:
                    covered.add((parent, v))
        # root component
        comp = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for node in tree.vkids[v]:
                if node[0] == "v" and (v, node[1]) in covered:
                    comp.add(node[1])
                    frontier.append(node[1])
        # holes of the root component, in planar order with their label sets
        holes = []  # (min_label, child_node)

        def hole_labels(node):
            kind, idx = node
            if kind == "l":
                return (idx,)
            return tuple(sorted(_subtree_labels(tree, idx)))

        for v in sorted(comp):
            for node in tree.vkids[v]:
                if node[0] == "l" or node[1] not in comp:
                    labels = hole_labels(node)
                    holes.append((labels[0], labels, node))
        holes.sort()
        blocks = tuple(h[1] for h in holes)
        root_piece = _extract_basis(self, tree, frozenset(comp), marks, occs)
        args = []
        for _, labels, node in holes:
            if node[0] == "l":
                args.append(None)
            else:
                sub_vs = frozenset(_subtree_vertices(tree, node[1]))
                args.append(_extract_basis(self, tree, sub_vs, marks, occs))
        return root_piece, blocks, args

    # -- plain and deformed differentials -------------------------------
    def D(self, b: BasisElt) -> Vec:
        got = self._D_cache.get(b)
        if got is not None:
            return got
        tree, marks = b
        if not marks:
            result: Vec = {}
        else:
            fac = self.factor(b)
            if fac is None:
                result = self._D_generator(b)
            else:
                result = self._D_leibniz(b, fac)
        self._D_cache[b] = result
        return result

    def _D_generator(self, b: BasisElt) -> Vec:
        tree, marks = b
        if len(marks) == 1:
            # substitute the whole relation at the mark; the sign prefix
            # matches d (the mark operator passes the tree's odd vertices)
            occ = self.mc.divisors(tree)[marks[0]]
            g = self._relation_of[occ.beta]
            sign = -1 if self.mc.parity_prefix(tree) else 1
            value = substitute(tree, occ, g).scale(sign)
            return {(m, ()): c for m, c in value.terms.items()}
        d_b = self.mc.d(b)
        Dd: Vec = {}
        for k, c in d_b.items():
            Dd = vadd(Dd, self.D(k), c)
        correction = self.H(Dd)
        out = dict(d_b)
        for k, c in correction.items():
            out[k] = out.get(k, Fraction(0)) - c
            if not out[k]:
                del out[k]
        return out

    def _D_leibniz(self, b: BasisElt, fac) -> Vec:
        root_piece, blocks, args = fac
        back, s = self.compose_marked(root_piece, blocks, args)
        if back != b:
            raise RuntimeError("factorisation did not recompose")
        out: Vec = {}
        # derivative of the root piece
        for k, c in self.D(root_piece).items():
            comp, sg = self.compose_marked(k, blocks, args)
            out = vadd(out, {comp: Fraction(sg)}, c)
        # derivative of each argument with the Koszul prefix
        prefix = self.degree(root_piece)
        for i, arg in enumerate(args):
            if arg is not None:
                sgn = -1 if prefix & 1 else 1
                for k, c in self.D(arg).items():
                    new_args = list(args)
                    new_args[i] = k
                    comp, sg = self.compose_marked(root_piece, blocks, new_args)
                    out = vadd(out, {comp: Fraction(sg * sgn)}, c)
                prefix += self.degree(arg)
        return vscale(out, s)

    # -- homotopy ---------------------------------------------------------
    def leading_tree(self, u: Vec) -> TreeMonomial:
        return max({k[0] for k in u}, key=self.order.key)

    def H(self, u: Vec) -> Vec:
        """Homotopy against D, defined on cycles (and on degree zero).

        Iteratively contracts the part with the largest underlying tree;
        normal degree-zero monomials are dropped (they form the residue).
        """
        u = dict(u)
        result: Vec = {}
        guard = 0
        while u:
            guard += 1
            if guard > 100000:
                raise RuntimeError("homotopy failed to terminate")
            t = self.leading_tree(u)
            part = {k: c for k, c in u.items() if k[0] == t}
            if not self.mc.divisors(t):
                # normal tree: only degree-zero cells live here
                for k in part:
                    if k[1]:
                        raise RuntimeError("marked cell on a normal tree")
                    del u[k]
                continue
            v: Vec = {}
            for k, c in part.items():
                for hk, hc in self.mc.h(k).items():
                    v[hk] = v.get(hk, Fraction(0)) + hc * c
            if not v:
                # top divisor already present in every cell of the part:
                # h vanishes; this can only happen off the kernel
                raise RuntimeError("homotopy stuck: input is not a cycle")
            result = vadd(result, v)
            Dv: Vec = {}
            for k, c in v.items():
                Dv = vadd(Dv, self.D(k), c)
            u = vadd(u, Dv, Fraction(-1))
            if any(k[0] == t for k in u):
                raise RuntimeError("leading tree failed to decrease in homotopy")
        return result

    def D_element(self, u: Vec) -> Vec:
        out: Vec = {}
        for k, c in u.items():
            out = vadd(out, self.D(k), c)
        return out

    def residue(self, u: Vec) -> Vec:
        """The degree-zero residue map: long division of the tree part."""
        out: Vec = {}
        for (t, marks), c in u.items():
            if marks:
                raise ValueError("residue is defined in degree zero")
            r = reduce_element(Element.monomial(t, c), self.gb)
            for m, cc in r.terms.items():
                k = (m, ())
                out[k] = out.get(k, Fraction(0)) + cc
                if not out[k]:
                    del out[k]
        return out


def _subtree_vertices(tree: TreeMonomial, v: int) -> list[int]:
    out = [v]
    stack = [v]
    while stack:
        x = stack.pop()
        for node in tree.vkids[x]:
            if node[0] == "v":
                out.append(node[1])
                stack.append(node[1])
    return out


def _subtree_labels(tree: TreeMonomial, v: int) -> list[int]:
    out = []
    stack = [v]
    while stack:
        x = stack.pop()
        for node in tree.vkids[x]:
            if node[0] == "l":
                out.append(node[1])
            else:
                stack.append(node[1])
    return out


def _extract_basis(
    pc: PerturbedComplex,
    tree: TreeMonomial,
    vertices: frozenset,
    marks: tuple[int, ...],
    occs,
) -> BasisElt:
    """Standardize the marked subtree spanned by `vertices`."""
    from .trees import TreeMonomial as TM
    from .trees import _canonicalize

    root = [v for v in vertices if tree.vparent[v][0] not in vertices]
    assert len(root) == 1
    hole_mins: list[int] = []

    def build(v):
        kids = []
        for node in tree.vkids[v]:
            kind, idx = node
            if kind == "v" and idx in vertices:
                kids.append(build(idx))
            else:
                mn = idx if kind == "l" else tree.vertex_subtree_minleaf(idx)
                hole_mins.append(mn)
                kids.append(("hole", mn))
        return [tree.verts[v], v, kids]

    shape = build(root[0])
    order = {m: i + 1 for i, m in enumerate(sorted(hole_mins))}

    def to_raw(s):
        if isinstance(s, tuple) and s[0] == "hole":
            return order[s[1]]
        gen, token, kids = s
        return (gen, token, [to_raw(k) for k in kids])

    tokens: list = []
    enc, _ = _canonicalize(to_raw(shape), tokens)
    mono = TM(enc, len(hole_mins))
    vmap = {tok: i for i, tok in enumerate(tokens)}
    sub_index = pc._divisor_index(mono)
    sub_marks = []
    for i in marks:
        vs = occs[i].vertices
        if vs <= vertices:
            key = frozenset(vmap[v] for v in vs)
            sub_marks.append(sub_index[key])
    return (mono, tuple(sorted(sub_marks)))


# ---------------------------------------------------------------------------
# Quillen homology via the induced differential on generators

def induced_differential(pc: PerturbedComplex, gen: ResolutionGenerator) -> Vec:
    full = pc.D((gen.tree, gen.marks))
    return {k: c for k, c in full.items() if pc.mc.is_indecomposable(k)}


def quillen_homology(
    gb: GroebnerBasis,
    arity_bound: int,
    max_weight: int,
    arities: Sequence[int] | None = None,
) -> tuple[HomologyTable, dict]:
    """Homology of the induced differential on generators, per arity.

    Returns the table and the raw induced values keyed by generator.
    Strata are (arity, homological degree); the weight cap bounds the
    generator enumeration and is recorded by the caller's report.
    """
    p = gb.presentation
    pc = PerturbedComplex(gb)
    dims: dict = {}
    by_weight: dict = {}
    values: dict = {}
    for n in arities or range(1, arity_bound + 1):
        gens = pc.mc.resolution_generators(n, max_weight)
        by_deg: dict[int, list[ResolutionGenerator]] = {}
        for g in gens:
            by_deg.setdefault(g.degree, []).append(g)
        images: dict[int, list[Vec]] = {}
        for deg, gs in by_deg.items():
            images[deg] = []
            for g in gs:
                val = induced_differential(pc, g)
                values[(g.tree, g.marks)] = val
                images[deg].append(val)
        ranks: dict[int, int] = {}
        for deg, vecs in images.items():
            targets = by_deg.get(deg - 1, [])
            tindex = {(g.tree, g.marks): i for i, g in enumerate(targets)}
            rows = []
            for v in vecs:
                rows.append({tindex[k]: c for k, c in v.items() if k in tindex})
            ranks[deg] = linalg.rank(rows)
        for deg, gs in by_deg.items():
            betti = len(gs) - ranks.get(deg, 0) - ranks.get(deg + 1, 0)
            if betti:
                dims[(n, deg)] = betti
                wts = {}
                for g in gs:
                    wts[g.weight] = wts.get(g.weight, 0) + 1
                by_weight[(n, deg)] = wts
    return HomologyTable(dims, by_weight), values


# -- symbolic expansion of an induced value in generator composites ------

def expand_in_generators(pc: PerturbedComplex, u: Vec) -> list[tuple[Fraction, str]]:
    """Render each basis term as a composite of generator pieces."""
    out = []
    for b, c in sorted(u.items(), key=lambda kv: format_tree(kv[0][0])):
        out.append((c, render_composite(pc, b)))
    return out


def generator_symbol(b: BasisElt) -> str:
    """A printable name for an indecomposable marked tree."""
    tree, marks = b
    if not marks and tree.nvertices == 1:
        return tree.verts[0].name
    return f"g[{format_tree(tree)};{len(marks)}]"


def render_composite(pc: PerturbedComplex, b: BasisElt, args: list | None = None) -> str:
    """Render a marked tree as nested generator applications.

    Slots are filled with '-' so the expression reads as an operation.
    """
    tree, marks = b
    provided = args if args is not None else ["-"] * tree.arity
    fac = pc.factor(b)
    if fac is None:
        return f"{generator_symbol(b)}({','.join(provided)})"
    root_piece, blocks, sub_args = fac
    rendered = []
    for blk, a in zip(blocks, sub_args):
        inner = [provided[l - 1] for l in blk]
        if a is None:
            rendered.append(inner[0])
        else:
            rendered.append(render_composite(pc, a, inner))
    return render_composite(pc, root_piece, rendered)
