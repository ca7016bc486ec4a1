"""Tree monomials of free shuffle operads.

A tree monomial is a rooted tree whose internal vertices are decorated by
generators (the arity of the generator equals the number of children) and
whose leaves are labelled bijectively by 1..n.  The canonical planar form
orders the children of every vertex by their minimal reachable leaf label.
Monomials of odd homological degree carry signs: every monomial fixes the
depth-first order of its internal vertices, and any operation that reorders
vertices (composition, substitution, relabelling) picks up the Koszul sign
of the permutation of odd-degree vertices.

The degenerate tree (no vertices, one leaf) is the composition unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


@dataclass(frozen=True)
class Generator:
    """An operation symbol: name, arity, homological degree, weight."""

    name: str
    arity: int
    homdeg: int = 0
    weight: int = 1

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"generator {self.name!r} must have arity >= 1")

    @property
    def parity(self) -> int:
        return self.homdeg & 1

    def __repr__(self):
        return f"Generator({self.name!r}, {self.arity})"


# A tree is encoded as nested tuples: a leaf is an int label, an internal
# vertex is (generator, child, child, ...).  The encoding of a canonical
# monomial always lists children sorted by minimal reachable leaf.
Enc = Union[int, tuple]

_INTERN: dict = {}


def _enc_min_leaf(enc: Enc) -> int:
    while not isinstance(enc, int):
        enc = enc[1]  # children sorted by min leaf, so first child holds it
    return enc


class TreeMonomial:
    """A canonical planar decorated tree; hashable and interned."""

    __slots__ = (
        "enc", "arity", "nvertices", "weight", "homdeg",
        "verts", "vkids", "vparent", "vdepth",
        "leaf_parent", "planar_leaves", "leaf_paths", "_hash",
    )

    def __new__(cls, enc: Enc, arity: int):
        key = (enc, arity)
        cached = _INTERN.get(key)
        if cached is not None:
            return cached
        self = object.__new__(cls)
        self.enc = enc
        self.arity = arity
        self._build()
        _INTERN[key] = self
        return self

    def _build(self):
        verts: list[Generator] = []
        vkids: list[tuple] = []
        vparent: list[tuple] = []
        vdepth: list[int] = []
        leaf_parent: dict[int, tuple] = {}
        planar_leaves: list[int] = []
        paths: dict[int, tuple] = {}

        def walk(enc, parent, slot, depth, prefix):
            if isinstance(enc, int):
                leaf_parent[enc] = (parent, slot)
                planar_leaves.append(enc)
                paths[enc] = prefix
                return ("l", enc)
            gen = enc[0]
            idx = len(verts)
            verts.append(gen)
            vparent.append((parent, slot))
            vdepth.append(depth)
            vkids.append(None)  # placeholder
            kids = tuple(
                walk(c, idx, j, depth + 1, prefix + (gen.name,))
                for j, c in enumerate(enc[1:])
            )
            vkids[idx] = kids
            return ("v", idx)

        if self.enc is None:  # degenerate tree
            leaf_parent[1] = (None, 0)
            planar_leaves.append(1)
            paths[1] = ()
        else:
            walk(self.enc, None, 0, 1, ())

        self.nvertices = len(verts)
        self.verts = tuple(verts)
        self.vkids = tuple(vkids)
        self.vparent = tuple(vparent)
        self.vdepth = tuple(vdepth)
        self.leaf_parent = leaf_parent
        self.planar_leaves = tuple(planar_leaves)
        self.leaf_paths = tuple(paths[i] for i in range(1, self.arity + 1))
        self.weight = sum(g.weight for g in verts)
        self.homdeg = sum(g.homdeg for g in verts)
        self._hash = hash((self.enc, self.arity))

    @property
    def is_unit(self) -> bool:
        return self.enc is None

    @property
    def root_gen(self):
        return None if self.enc is None else self.enc[0]

    def parities(self) -> tuple[int, ...]:
        return tuple(g.parity for g in self.verts)

    def vertex_subtree_minleaf(self, v: int) -> int:
        enc = self._vertex_enc(v)
        return _enc_min_leaf(enc)

    def _vertex_enc(self, v: int) -> Enc:
        path = []
        cur = v
        while cur is not None:
            parent, slot = self.vparent[cur]
            path.append(slot)
            cur = parent
        enc = self.enc
        for slot in reversed(path[:-1]):
            enc = enc[1 + slot]
        return enc

    def __eq__(self, other):
        return self is other or (
            isinstance(other, TreeMonomial)
            and self.enc == other.enc
            and self.arity == other.arity
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{format_tree(self)}>"


UNIT = TreeMonomial(None, 1)


def format_tree(t: TreeMonomial) -> str:
    def fmt(enc):
        if isinstance(enc, int):
            return str(enc)
        gen = enc[0]
        return f"{gen.name}({','.join(fmt(c) for c in enc[1:])})"

    return "id" if t.is_unit else fmt(t.enc)


# ---------------------------------------------------------------------------
# Koszul signs

def koszul_sign_from_positions(positions: Sequence[int]) -> int:
    """Sign of the permutation given by the listed source positions.

    `positions` lists, in target order, the source positions of the odd
    symbols only; the sign is (-1)^inversions.
    """
    inv = 0
    for i in range(len(positions)):
        pi = positions[i]
        for j in range(i + 1, len(positions)):
            if positions[j] < pi:
                inv += 1
    return -1 if inv & 1 else 1


def koszul_sign(src_order: Sequence, dst_order: Sequence, parity: dict) -> int:
    """Koszul sign of reordering symbols from src_order to dst_order.

    Only symbols of odd parity contribute.  Both orders list the same
    hashable tokens.
    """
    pos = {tok: i for i, tok in enumerate(src_order)}
    odd_positions = [pos[tok] for tok in dst_order if parity[tok]]
    return koszul_sign_from_positions(odd_positions)


# ---------------------------------------------------------------------------
# Canonicalisation

def _canonicalize(raw, tokens_out: list) -> tuple:
    """raw: int leaf or (Generator, token, [raw children]).

    Returns (enc, minleaf); appends vertex tokens to tokens_out in the
    depth-first order of the canonical representative.
    """
    if isinstance(raw, int):
        return raw, raw
    gen, token, children = raw
    if gen.arity != len(children):
        raise ValueError(
            f"generator {gen.name!r} has arity {gen.arity}, got {len(children)} children"
        )
    done = []
    for c in children:
        sub_tokens: list = []
        enc, mn = _canonicalize(c, sub_tokens)
        done.append((mn, enc, sub_tokens))
    done.sort(key=lambda x: x[0])
    mins = [d[0] for d in done]
    if len(set(mins)) != len(mins):
        raise ValueError("duplicate leaf labels in tree")
    tokens_out.append(token)
    for _, _, sub in done:
        tokens_out.extend(sub)
    enc = (gen,) + tuple(d[1] for d in done)
    return enc, done[0][0]


def canonical_form_signed(raw) -> tuple[TreeMonomial, int]:
    """Canonicalise a raw tree, returning the monomial and the Koszul sign.

    `raw` is an int leaf or (Generator, [children]); vertices are taken in
    prefix order as the reference ordering.  Leaf labels must be exactly
    1..n.
    """
    counter = itertools.count()
    parities: dict[int, int] = {}

    def attach(r):
        if isinstance(r, int):
            return r
        gen, children = r
        tok = next(counter)
        parities[tok] = gen.parity
        return (gen, tok, [attach(c) for c in children])

    tagged = attach(raw)
    if isinstance(tagged, int):
        if tagged != 1:
            raise ValueError("degenerate tree must have leaf label 1")
        return UNIT, 1
    tokens: list[int] = []
    enc, _ = _canonicalize(tagged, tokens)
    leaves = sorted(_collect_leaves(enc))
    if leaves != list(range(1, len(leaves) + 1)):
        raise ValueError(f"leaf labels must be exactly 1..n, got {leaves}")
    sign = koszul_sign(range(len(tokens)), tokens, parities)
    return TreeMonomial(enc, len(leaves)), sign


def canonical_form(raw) -> TreeMonomial:
    """Canonical planar representative of a raw tree (sign discarded)."""
    return canonical_form_signed(raw)[0]


def _collect_leaves(enc) -> list[int]:
    if isinstance(enc, int):
        return [enc]
    out = []
    for c in enc[1:]:
        out.extend(_collect_leaves(c))
    return out


def corolla(gen: Generator) -> TreeMonomial:
    return TreeMonomial((gen,) + tuple(range(1, gen.arity + 1)), gen.arity)


# ---------------------------------------------------------------------------
# Elements: linear combinations over exact rationals

class Element:
    """Finite linear combination of tree monomials of one arity."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: dict[TreeMonomial, Fraction], arity: int):
        self.terms = {m: c for m, c in terms.items() if c}
        self.arity = arity
        for m in self.terms:
            if m.arity != arity:
                raise ValueError("mixed arities in element")

    @staticmethod
    def zero(arity: int) -> "Element":
        return Element({}, arity)

    @staticmethod
    def monomial(m: TreeMonomial, c=1) -> "Element":
        return Element({m: Fraction(c)}, m.arity)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Element") -> "Element":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Element(terms, self.arity)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return Element.zero(self.arity)
        return Element({m: c * x for m, x in self.terms.items()}, self.arity)

    def coeff(self, m: TreeMonomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def monomials(self):
        return self.terms.keys()

    def check_homogeneous(self, weights: bool = True) -> tuple[int, int | None]:
        """Assert equal homdeg (and optionally weight) across terms."""
        degs = {m.homdeg for m in self.terms}
        if len(degs) > 1:
            raise ValueError(f"element not homogeneous in homological degree: {degs}")
        wts = {m.weight for m in self.terms}
        if weights and len(wts) > 1:
            raise ValueError(f"element not homogeneous in weight: {wts}")
        deg = degs.pop() if degs else 0
        wt = wts.pop() if len(wts) == 1 else None
        return deg, wt

    @property
    def homdeg(self) -> int:
        return next(iter(self.terms)).homdeg if self.terms else 0

    @property
    def weight(self) -> int:
        return next(iter(self.terms)).weight if self.terms else 0

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"<Element {format_element(self)}>"


def format_element(f: Element) -> str:
    if f.is_zero():
        return "0"
    bits = []
    for m, c in sorted(f.terms.items(), key=lambda mc: format_tree(mc[0])):
        s = format_tree(m)
        if c == 1:
            bits.append(f"+ {s}")
        elif c == -1:
            bits.append(f"- {s}")
        elif c > 0:
            bits.append(f"+ {c}*{s}")
        else:
            bits.append(f"- {-c}*{s}")
    out = " ".join(bits)
    return out[2:] if out.startswith("+ ") else out


# ---------------------------------------------------------------------------
# Shuffle surjections

@dataclass(frozen=True)
class ShuffleSurjection:
    """Ordered partition of {1..n} into blocks with increasing minima."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        prev_min = 0
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if list(b) != sorted(b):
                raise ValueError("blocks must be listed in increasing order")
            if b[0] <= prev_min:
                raise ValueError("block minima must increase")
            prev_min = b[0]
            seen.update(b)
        n = sum(len(b) for b in self.blocks)
        if seen != set(range(1, n + 1)):
            raise ValueError("blocks must partition 1..n")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)


def enumerate_shuffle_surjections(block_sizes: Sequence[int]) -> list[ShuffleSurjection]:
    """All shuffle surjections with the given block sizes, in a fixed order."""
    if not block_sizes:
        raise ValueError("need at least one block")
    if any(s < 1 for s in block_sizes):
        raise ValueError("block sizes must be >= 1")
    n = sum(block_sizes)
    out: list[ShuffleSurjection] = []

    def rec(label, blocks):
        if label > n:
            out.append(ShuffleSurjection(tuple(tuple(b) for b in blocks)))
            return
        # the smallest unplaced label goes into the first empty block, or
        # into any started block that still has room
        placed_empty = False
        for i, b in enumerate(blocks):
            if not b:
                if not placed_empty:
                    b.append(label)
                    rec(label + 1, blocks)
                    b.pop()
                    placed_empty = True
            elif len(b) < block_sizes[i]:
                b.append(label)
                rec(label + 1, blocks)
                b.pop()

    rec(1, [[] for _ in block_sizes])
    return out


def count_shuffle_surjections(block_sizes: Sequence[int]) -> int:
    """Product formula for the number of shuffle surjections of given type."""
    import math

    n = sum(block_sizes)
    num = math.factorial(n)
    for m in block_sizes:
        num //= math.factorial(m)
    for m in block_sizes:
        num *= m
    den = 1
    tail = list(block_sizes)
    while tail:
        den *= sum(tail)
        tail.pop(0)
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# Composition

def _tagged(mono: TreeMonomial, offset: int, relabel: dict[int, int] | None):
    """Tagged raw copy of a canonical monomial; tokens offset by `offset`."""

    def walk(enc):
        if isinstance(enc, int):
            return relabel[enc] if relabel else enc
        gen = enc[0]
        tok = walk.counter
        walk.counter += 1
        return (gen, tok, [walk(c) for c in enc[1:]])

    walk.counter = offset
    return walk(mono.enc)


def graft_monomials(
    outer: TreeMonomial, blocks: Sequence[Sequence[int]], inners: Sequence[TreeMonomial]
) -> tuple[TreeMonomial, int, list[list[int]]]:
    """Graft inner monomials onto the leaves of `outer` along shuffle blocks.

    Returns (result, sign, vertex_maps) where vertex_maps[i] sends the
    depth-first vertex indices of factor i (0 = outer, i >= 1 = inners[i-1])
    to vertex indices of the result.
    """
    k = len(blocks)
    if outer.arity != k or len(inners) != k:
        raise ValueError("number of blocks must match outer arity")
    parities: dict[int, int] = {}
    offsets = [0]
    for g in outer.verts:
        parities[len(parities)] = g.parity
    pieces = []
    for i, (blk, inner) in enumerate(zip(blocks, inners)):
        if inner.arity != len(blk):
            raise ValueError(f"inner {i} arity {inner.arity} != block size {len(blk)}")
        off = len(parities)
        offsets.append(off)
        for g in inner.verts:
            parities[len(parities)] = g.parity
        relabel = {j + 1: blk[j] for j in range(len(blk))}
        if inner.is_unit:
            pieces.append(relabel[1])
        else:
            pieces.append(_tagged(inner, off, relabel))

    if outer.is_unit:
        piece = pieces[0]
        if isinstance(piece, int):
            return UNIT, 1, [[], []]
    else:
        def build(enc):
            if isinstance(enc, int):
                return pieces[enc - 1]
            gen = enc[0]
            tok = build.counter
            build.counter += 1
            return (gen, tok, [build(c) for c in enc[1:]])

        build.counter = 0
        piece = build(outer.enc)

    tokens: list[int] = []
    enc, _ = _canonicalize(piece, tokens)
    n = sum(len(b) for b in blocks)
    result = TreeMonomial(enc, n)
    sign = koszul_sign(range(len(tokens)), tokens, parities)
    pos = {tok: i for i, tok in enumerate(tokens)}
    maps = []
    sizes = [outer.nvertices] + [t.nvertices for t in inners]
    for i, off in enumerate(offsets):
        maps.append([pos[off + j] for j in range(sizes[i])])
    return result, sign, maps


def compose(outer: Element, phi: ShuffleSurjection, inners: Sequence[Element]) -> Element:
    """Shuffle composition, extended bilinearly with Koszul signs."""
    blocks = phi.blocks
    result = Element.zero(phi.n)
    for m0, c0 in outer.terms.items():
        for combo in itertools.product(*[list(f.terms.items()) for f in inners]):
            monos = [mc[0] for mc in combo]
            coeff = c0
            for _, c in combo:
                coeff *= c
            res, sign, _ = graft_monomials(m0, blocks, monos)
            result += Element.monomial(res, coeff * sign)
    return result


def ns_compose(outer: Element, slot: int, inner: Element) -> Element:
    """Partial composition outer o_slot inner with consecutive labels."""
    m = inner.arity
    k = outer.arity
    blocks = []
    for i in range(1, k + 1):
        if i < slot:
            blocks.append((i,))
        elif i == slot:
            blocks.append(tuple(range(slot, slot + m)))
        else:
            blocks.append((i + m - 1,))
    phi = ShuffleSurjection(tuple(blocks))
    inners = []
    for i in range(1, k + 1):
        inners.append(inner if i == slot else Element.monomial(UNIT))
    return compose(outer, phi, inners)


# ---------------------------------------------------------------------------
# Divisors, occurrences, substitution

@dataclass(frozen=True)
class Occurrence:
    """An occurrence of a monomial `beta` as a divisor of `host`.

    `vertices` are depth-first indices of the host; `beta_order` lists them
    in the depth-first order of beta; `holes[j]` tells where the subtree
    standardised to beta's leaf j+1 hangs: (vertex, slot) or None for the
    host root position (impossible for divisors) .
    """

    host: TreeMonomial
    beta: TreeMonomial
    vertices: frozenset[int]
    beta_order: tuple[int, ...]
    holes: tuple[tuple[int, int], ...]

    @property
    def root(self) -> int:
        return self.beta_order[0]

    def sort_key(self):
        return (self.root, tuple(sorted(self.vertices)))


def _host_child(host: TreeMonomial, v: int, slot: int):
    return host.vkids[v][slot]


def _subtree_min(host: TreeMonomial, node) -> int:
    kind, idx = node
    if kind == "l":
        return idx
    return host.vertex_subtree_minleaf(idx)


def divisor_occurrences(host: TreeMonomial, beta: TreeMonomial) -> list[Occurrence]:
    """All occurrences of beta as a divisor of host, in a deterministic order."""
    if beta.is_unit:
        return [Occurrence(host, beta, frozenset(), (), ())] if host.is_unit else []
    if host.is_unit or beta.nvertices > host.nvertices or beta.arity > host.arity:
        return []
    out = []
    for r in range(host.nvertices):
        occ = _match_at(host, beta, r)
        if occ is not None:
            out.append(occ)
    out.sort(key=Occurrence.sort_key)
    return out


def _match_at(host: TreeMonomial, beta: TreeMonomial, r: int) -> Occurrence | None:
    beta_order: list[int] = []
    holes: list[tuple[tuple[int, int], int]] = []  # ((vertex, slot), beta_leaf)

    def walk(benc, hv) -> bool:
        gen = benc[0]
        if host.verts[hv] is not gen and host.verts[hv] != gen:
            return False
        beta_order.append(hv)
        for slot, bc in enumerate(benc[1:]):
            hchild = _host_child(host, hv, slot)
            if isinstance(bc, int):
                holes.append(((hv, slot), bc))
            else:
                if hchild[0] != "v":
                    return False
                if not walk(bc, hchild[1]):
                    return False
        return True

    if not walk(beta.enc, r):
        return None
    # standardisation check: hole labelled j must have the j-th smallest
    # minimal descendant among all holes
    mins = []
    for (hv, slot), bleaf in holes:
        mins.append((_subtree_min(host, _host_child(host, hv, slot)), bleaf))
    ranked = sorted(mins)
    for rank, (_, bleaf) in enumerate(ranked, start=1):
        if bleaf != rank:
            return None
    hole_by_leaf = {}
    for (hv, slot), bleaf in holes:
        hole_by_leaf[bleaf] = (hv, slot)
    return Occurrence(
        host,
        beta,
        frozenset(beta_order),
        tuple(beta_order),
        tuple(hole_by_leaf[j] for j in range(1, beta.arity + 1)),
    )


def extract_standardized(host: TreeMonomial, vertices: frozenset[int]) -> TreeMonomial | None:
    """Standardised monomial spanned by a connected, closed set of vertices.

    Returns None if the vertex set is not connected as a subtree.
    """
    if not vertices:
        return None
    roots = [v for v in vertices if host.vparent[v][0] not in vertices]
    if len(roots) != 1:
        return None
    r = roots[0]
    hole_mins: list[int] = []

    def shape(v):
        gen = host.verts[v]
        kids = []
        for node in host.vkids[v]:
            kind, idx = node
            if kind == "v" and idx in vertices:
                kids.append(shape(idx))
            else:
                hole_mins.append(_subtree_min(host, node))
                kids.append(("hole", len(hole_mins) - 1))
        return (gen, kids)

    sh = shape(r)
    if len(vertices) != _count_shape(sh):
        return None
    order = {m: i + 1 for i, m in enumerate(sorted(hole_mins))}

    def to_raw(s):
        if isinstance(s, tuple) and s and s[0] == "hole":
            return order[hole_mins[s[1]]]
        gen, kids = s
        return (gen, [to_raw(k) for k in kids])

    return canonical_form(to_raw(sh))


def _count_shape(sh) -> int:
    if isinstance(sh, tuple) and sh and sh[0] == "hole":
        return 0
    _, kids = sh
    return 1 + sum(_count_shape(k) for k in kids)


def substitute(host: TreeMonomial, occ: Occurrence, g: Element) -> Element:
    """Replace the occurrence `occ` in `host` by the element `g`.

    g must be homogeneous of the same arity, homological degree and weight
    as occ.beta; signs follow the composition convention.  Substituting beta
    itself returns host with coefficient +1.
    """
    if g.arity != occ.beta.arity:
        raise ValueError("substituted element has wrong arity")
    ctx = [v for v in range(host.nvertices) if v not in occ.vertices]
    parities: dict = {}
    for v in range(host.nvertices):
        parities[("h", v)] = host.verts[v].parity
    # sign of pulling the occurrence vertices out to the back, in beta order
    src = [("h", v) for v in range(host.nvertices)]
    dst = [("h", v) for v in ctx] + [("h", v) for v in occ.beta_order]
    sign1 = koszul_sign(src, dst, parities)

    result = Element.zero(host.arity)
    for mono, coeff in g.terms.items():
        if mono.homdeg != occ.beta.homdeg:
            raise ValueError("substituted element must match divisor degree")
        tokens_parity: dict = {}
        counter = itertools.count()

        # Rebuild the host tree with explicit vertex indices, swapping the
        # occurrence for `mono` whose leaves pick up the hole subtrees.
        def rebuild(node):
            kind, idx = node
            if kind == "l":
                return idx
            if idx == occ.root:
                return replacement()
            tok = ("h", idx)
            tokens_parity[tok] = host.verts[idx].parity
            return (host.verts[idx], tok, [rebuild(c) for c in host.vkids[idx]])

        def hole_node(j):
            hv, slot = occ.holes[j - 1]
            return host.vkids[hv][slot]

        def replacement():
            def walk_m(enc):
                if isinstance(enc, int):
                    return rebuild(hole_node(enc))
                tok = ("m", next(counter))
                tokens_parity[tok] = enc[0].parity
                return (enc[0], tok, [walk_m(c) for c in enc[1:]])

            if mono.is_unit:
                return rebuild(hole_node(1))
            return walk_m(mono.enc)

        raw = rebuild(("v", 0))
        tokens: list = []
        enc, _ = _canonicalize(raw, tokens)
        new_mono = TreeMonomial(enc, host.arity)
        # source order: context vertices (host order) then mono vertices
        src2 = [("h", v) for v in ctx] + [("m", j) for j in range(mono.nvertices)]
        for j in range(mono.nvertices):
            tokens_parity[("m", j)] = mono.verts[j].parity
        sign2 = koszul_sign(src2, tokens, tokens_parity)
        result += Element.monomial(new_mono, coeff * sign1 * sign2)
    return result


def relabel_leaves(mono: TreeMonomial, sigma: dict[int, int]) -> tuple[TreeMonomial, int]:
    """Relabel leaves by the permutation sigma and recanonicalise.

    Returns (monomial, Koszul sign of the induced vertex reordering).
    """
    if sorted(sigma) != list(range(1, mono.arity + 1)) or sorted(
        sigma.values()
    ) != list(range(1, mono.arity + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    if mono.is_unit:
        return mono, 1
    parities = {i: g.parity for i, g in enumerate(mono.verts)}

    def walk(enc):
        if isinstance(enc, int):
            return sigma[enc]
        tok = walk.counter
        walk.counter += 1
        return (enc[0], tok, [walk(c) for c in enc[1:]])

    walk.counter = 0
    raw = walk(mono.enc)
    tokens: list = []
    enc, _ = _canonicalize(raw, tokens)
    sign = koszul_sign(range(mono.nvertices), tokens, parities)
    return TreeMonomial(enc, mono.arity), sign


def relabel_element(f: Element, sigma: dict[int, int]) -> Element:
    out = Element.zero(f.arity)
    for m, c in f.terms.items():
        m2, s = relabel_leaves(m, sigma)
        out += Element.monomial(m2, c * s)
    return out


# ---------------------------------------------------------------------------
# Tree enumeration

_TREE_ENUM_CACHE: dict = {}


def enumerate_trees(
    gens: Sequence[Generator], arity: int, max_weight: int, ns: bool = False
) -> list[TreeMonomial]:
    """All tree monomials of the given arity and weight <= max_weight.

    Includes the degenerate tree for arity 1.  With ns=True only
    non-symmetric trees are produced (leaf labels in planar order, i.e.
    every subtree spans an interval of labels).
    """
    gens = tuple(gens)
    cache_tag = (gens, ns)
    found = _TREE_ENUM_CACHE.setdefault(cache_tag, {})

    def rec(n: int, wcap: int) -> list[TreeMonomial]:
        key = (n, wcap)
        if key in found:
            return found[key]
        out: list[TreeMonomial] = []
        if n == 1:
            out.append(UNIT)
        for g in gens:
            if g.arity > n or g.weight > wcap:
                continue
            if g.arity == n:
                out.append(corolla(g))
            for phi in enumerate_shuffle_surjections_sized(g.arity, n, ns):
                sizes = [len(b) for b in phi]
                for kids in _children_combos(sizes, wcap - g.weight, rec):
                    if all(k.is_unit for k in kids):
                        continue  # that is the corolla, added above
                    raw = (
                        g,
                        [
                            _relabel_raw(k.enc, phi[i]) if not k.is_unit else phi[i][0]
                            for i, k in enumerate(kids)
                        ],
                    )
                    out.append(canonical_form(raw))
        seen = set()
        uniq = []
        for t in out:
            if t not in seen:
                seen.add(t)
                uniq.append(t)
        found[key] = uniq
        return uniq

    def _relabel_raw(enc, block):
        if isinstance(enc, int):
            return block[enc - 1]
        return (enc[0], [_relabel_raw(c, block) for c in enc[1:]])

    result = [t for t in rec(arity, max_weight) if t.weight <= max_weight]
    result.sort(key=lambda t: (t.weight, format_tree(t)))
    return result


def enumerate_shuffle_surjections_sized(k: int, n: int, ns: bool = False):
    """All shuffle surjections of 1..n into k blocks of any positive sizes.

    With ns=True only interval blocks (non-symmetric compositions).
    """
    out = []
    for sizes in _compositions(n, k):
        if ns:
            out.append(interval_blocks(sizes))
        else:
            for phi in enumerate_shuffle_surjections(sizes):
                out.append(phi.blocks)
    return out


def interval_blocks(sizes: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    blocks = []
    start = 1
    for s in sizes:
        blocks.append(tuple(range(start, start + s)))
        start += s
    return tuple(blocks)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _children_combos(sizes, wcap, rec):
    """Cartesian product of subtree choices within a total weight cap."""
    if not sizes:
        yield []
        return
    first, rest = sizes[0], sizes[1:]
    for t in rec(first, wcap):
        if t.weight > wcap:
            continue
        for tail in _children_combos(rest, wcap - t.weight, rec):
            yield [t] + tail
