"""Canonical forms, compositions, signs, divisors, substitution."""

import itertools
import random

import pytest

from operadgb.trees import (
    UNIT,
    Element,
    Generator,
    ShuffleSurjection,
    canonical_form,
    canonical_form_signed,
    compose,
    corolla,
    count_shuffle_surjections,
    divisor_occurrences,
    enumerate_shuffle_surjections,
    enumerate_trees,
    format_element,
    format_tree,
    ns_compose,
    relabel_leaves,
    substitute,
)

M = Element.monomial

circ = Generator("c", 2)
bull = Generator("b", 2)
mu = Generator("mu", 3, homdeg=1)


def big_example_tree():
    # ((a1 c a3) b a5) c ((a2 b a7) c (a4 c a6))
    raw = (
        circ,
        [
            (bull, [(circ, [1, 3]), 5]),
            (circ, [(bull, [2, 7]), (circ, [4, 6])]),
        ],
    )
    return raw


def test_corolla_is_canonical():
    t = corolla(mu)
    assert format_tree(t) == "mu(1,2,3)"
    assert canonical_form((mu, [1, 2, 3])) is t


def test_big_example_already_canonical():
    raw = big_example_tree()
    t, sign = canonical_form_signed(raw)
    assert sign == 1
    assert format_tree(t) == "c(b(c(1,3),5),c(b(2,7),c(4,6)))"


def test_degenerate_tree_unit():
    assert canonical_form(1) is UNIT
    x = ns_compose(M(corolla(circ)), 1, M(corolla(circ)))
    assert ns_compose(M(UNIT), 1, x) == x
    y = x
    for slot in (1, 2, 3):
        y = ns_compose(y, slot, M(UNIT))
    assert y == x


def test_canonical_sorts_children():
    raw = (circ, [(circ, [2, 3]), 1])
    t = canonical_form(raw)
    assert format_tree(t) == "c(1,c(2,3))"


def test_canonical_rejects_bad_leaves():
    with pytest.raises(ValueError):
        canonical_form((circ, [1, 1]))
    with pytest.raises(ValueError):
        canonical_form((circ, [1, 3]))
    with pytest.raises(ValueError):
        canonical_form((mu, [1, 2]))


def test_canonical_idempotent_on_enumeration():
    trees = enumerate_trees([circ, bull], 4, 4)

    def to_raw(enc):
        if isinstance(enc, int):
            return enc
        return (enc[0], [to_raw(c) for c in enc[1:]])

    for t in trees:
        t2, s = canonical_form_signed(to_raw(t.enc))
        assert t2 is t and s == 1


# -- shuffle surjections ----------------------------------------------------

def brute_force_surjections(sizes):
    n = sum(sizes)
    seen = set()
    for perm in itertools.permutations(range(1, n + 1)):
        blocks, i = [], 0
        for s in sizes:
            blocks.append(tuple(sorted(perm[i : i + s])))
            i += s
        if all(blocks[j][0] < blocks[j + 1][0] for j in range(len(blocks) - 1)):
            seen.add(tuple(blocks))
    return seen


def test_single_block():
    assert len(enumerate_shuffle_surjections([4])) == 1


def test_all_singletons():
    out = enumerate_shuffle_surjections([1, 1, 1, 1])
    assert len(out) == 1
    assert out[0].blocks == ((1,), (2,), (3,), (4,))


def test_two_two_gives_three():
    out = enumerate_shuffle_surjections([2, 2])
    assert len(out) == 3
    assert {s.blocks for s in out} == brute_force_surjections([2, 2])
    assert count_shuffle_surjections([2, 2]) == 3


@pytest.mark.parametrize(
    "sizes",
    [(2, 1), (3, 2), (2, 2, 2), (1, 3, 2), (4, 2), (2, 1, 2, 1), (3, 3, 2)],
)
def test_counts_match_formula_and_bruteforce(sizes):
    listed = enumerate_shuffle_surjections(list(sizes))
    assert len(listed) == len({s.blocks for s in listed})
    assert {s.blocks for s in listed} == brute_force_surjections(list(sizes))
    assert len(listed) == count_shuffle_surjections(list(sizes))


def test_bad_blocks_rejected():
    with pytest.raises(ValueError):
        ShuffleSurjection(((2,), (1,)))
    with pytest.raises(ValueError):
        ShuffleSurjection(((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        enumerate_shuffle_surjections([])


# -- composition ------------------------------------------------------------

def test_plain_grafting():
    c = M(corolla(circ))
    out = compose(c, ShuffleSurjection(((1, 2), (3,))), [c, M(UNIT)])
    assert format_element(out) == "c(c(1,2),3)"


def test_odd_sign_identity():
    # with an odd ternary generator: (mu o3 mu) o1 mu = -(mu o1 mu) o5 mu
    Mm = M(corolla(mu))
    lhs = ns_compose(ns_compose(Mm, 3, Mm), 1, Mm)
    rhs = ns_compose(ns_compose(Mm, 1, Mm), 5, Mm)
    assert lhs == rhs.scale(-1)


def test_even_generators_never_produce_signs():
    rng = random.Random(1)
    trees = enumerate_trees([circ, bull], 3, 3)
    for _ in range(200):
        outer = rng.choice(trees)
        if outer.is_unit:
            continue
        sizes = [rng.randint(1, 2) for _ in range(outer.arity)]
        phi = rng.choice(enumerate_shuffle_surjections(sizes))
        pool = [rng.choice(enumerate_trees([circ, bull], s, 2)) for s in sizes]
        out = compose(M(outer), phi, [M(x) for x in pool])
        assert all(c == 1 for c in out.terms.values())


def test_monoid_coherence_nested():
    Mm = M(corolla(mu))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            left = ns_compose(ns_compose(Mm, i, Mm), i + j - 1, Mm)
            right = ns_compose(Mm, i, ns_compose(Mm, j, Mm))
            assert left == right


def test_monoid_coherence_disjoint_slots_odd():
    Mm = M(corolla(mu))
    left = ns_compose(ns_compose(Mm, 1, Mm), 5, Mm)
    right = ns_compose(ns_compose(Mm, 3, Mm), 1, Mm)
    assert left == right.scale(-1)


def test_monoid_coherence_two_stage():
    # gamma(gamma(f; g...); h...) = gamma(f; gamma(g_i; h-part)...) along
    # the composite shuffle surjection, signs included
    rng = random.Random(7)
    gens = [circ, Generator("u", 1, homdeg=1), mu]
    pool = {n: [t for t in enumerate_trees(gens, n, 3)] for n in (1, 2, 3)}
    trials = 0
    while trials < 120:
        k = rng.choice([2, 3])
        outers = [t for t in pool[k] if not t.is_unit]
        if not outers:
            continue
        f = rng.choice(outers)
        g_sizes = [rng.randint(1, 2) for _ in range(k)]
        phi = rng.choice(enumerate_shuffle_surjections(g_sizes))
        gs = [rng.choice(pool[s]) for s in g_sizes]
        mid_arity = sum(g_sizes)
        h_sizes = [rng.randint(1, 2) for _ in range(mid_arity)]
        psi = rng.choice(enumerate_shuffle_surjections(h_sizes))
        hs = [rng.choice(pool[s]) for s in h_sizes]
        # two stages
        F = compose(M(f), phi, [M(x) for x in gs])
        two = compose(F, psi, [M(x) for x in hs])
        # one stage: gamma(f; gamma(g_i; h-part)) with derived blocks
        theta_blocks = []
        inner_elems = []
        for blk in phi.blocks:
            union = sorted(x for j in blk for x in psi.blocks[j - 1])
            theta_blocks.append(tuple(union))
            rankmap = {x: r + 1 for r, x in enumerate(union)}
            inner_blocks = tuple(
                tuple(rankmap[x] for x in psi.blocks[j - 1]) for j in blk
            )
            gi = gs[phi.blocks.index(blk)]
            inner = compose(
                M(gi),
                ShuffleSurjection(inner_blocks),
                [M(hs[j - 1]) for j in blk],
            )
            inner_elems.append(inner)
        theta_blocks_sorted = sorted(theta_blocks, key=lambda b: b[0])
        assert theta_blocks_sorted == theta_blocks  # phi block minima increase
        one = compose(M(f), ShuffleSurjection(tuple(theta_blocks)), inner_elems)
        # dg interchange sign: two-stage orders symbols g1..gk h1..hn,
        # one-stage orders them g1 (h of block 1) g2 (h of block 2) ...
        from operadgb.trees import koszul_sign

        parity = {}
        for i, g in enumerate(gs):
            parity[("g", i)] = g.homdeg & 1
        for j, h in enumerate(hs):
            parity[("h", j)] = h.homdeg & 1
        src = [("g", i) for i in range(k)] + [("h", j) for j in range(len(hs))]
        dst = []
        for i, blk in enumerate(phi.blocks):
            dst.append(("g", i))
            dst.extend(("h", j - 1) for j in blk)
        sign = koszul_sign(src, dst, parity)
        assert one == (two if sign == 1 else two.scale(-1))
        trials += 1


# -- divisors and substitution ----------------------------------------------

def test_divisor_occurrences_two_places():
    host = canonical_form(big_example_tree())
    beta = canonical_form((circ, [(bull, [1, 4]), (circ, [2, 3])]))
    occs = divisor_occurrences(host, beta)
    assert len(occs) == 2
    assert all(o.beta is beta for o in occs)


def test_self_divisor_and_size_obstruction():
    host = canonical_form(big_example_tree())
    assert len(divisor_occurrences(host, host)) == 1
    big = canonical_form((mu, [1, 2, 3]))
    small = canonical_form((circ, [1, 2]))
    assert divisor_occurrences(small, canonical_form(big_example_tree())) == []


def test_substitute_identity():
    host = canonical_form(big_example_tree())
    beta = canonical_form((circ, [(bull, [1, 4]), (circ, [2, 3])]))
    for occ in divisor_occurrences(host, beta):
        assert substitute(host, occ, M(beta)) == M(host)


def test_substitute_associativity_step():
    c = M(corolla(circ))
    lc4 = ns_compose(ns_compose(c, 1, c), 1, c)  # ((a1 a2) a3) a4
    host = next(iter(lc4.terms))
    beta = next(iter(ns_compose(c, 1, c).terms))
    g = ns_compose(c, 1, c) - ns_compose(c, 2, c)
    occs = divisor_occurrences(host, beta)
    root_occ = [o for o in occs if o.root == 0][0]
    out = substitute(host, root_occ, g)
    # ((a1 a2) a3) a4 - (a1 (a2 a3)) a4
    expect = lc4 - ns_compose(ns_compose(c, 2, c), 1, c)
    assert out == expect


def test_substitute_odd_reduction_sign():
    # substituting the odd relation at the root of (mu o1 mu) o1 mu
    Mm = M(corolla(mu))
    g = ns_compose(Mm, 1, Mm) - ns_compose(Mm, 3, Mm)
    host = next(iter(ns_compose(ns_compose(Mm, 1, Mm), 1, Mm).terms))
    beta = next(iter(ns_compose(Mm, 1, Mm).terms))
    occs = divisor_occurrences(host, beta)
    root_occ = [o for o in occs if o.root == 0][0]
    out = substitute(host, root_occ, g)
    # host - (mu o3 mu) o1 mu = host + (mu o1 mu) o5 mu as canonical elements
    expect = M(host) - ns_compose(ns_compose(Mm, 3, Mm), 1, Mm)
    assert out == expect


# -- relabeling ---------------------------------------------------------------

def test_relabel_identity():
    host = canonical_form(big_example_tree())
    t, s = relabel_leaves(host, {i: i for i in range(1, 8)})
    assert t is host and s == 1


def test_relabel_standardisation_pattern():
    # relabeling (1,2,3,4) -> (1,4,2,3) realises the standardisation pattern
    # of the subtree occurring in the running example
    sub = canonical_form((circ, [(bull, [1, 2]), (circ, [3, 4])]))
    t, s = relabel_leaves(sub, {1: 1, 2: 4, 3: 2, 4: 3})
    assert format_tree(t) == "c(b(1,4),c(2,3))"
    assert s == 1


def test_relabel_group_action_roundtrip():
    rng = random.Random(3)
    host = canonical_form(big_example_tree())
    for _ in range(30):
        perm = list(range(1, 8))
        rng.shuffle(perm)
        sigma = {i + 1: perm[i] for i in range(7)}
        inv = {v: k for k, v in sigma.items()}
        t1, s1 = relabel_leaves(host, sigma)
        t2, s2 = relabel_leaves(t1, inv)
        assert t2 is host and s1 * s2 == 1


def test_divisor_count_stable_under_recanonicalisation():
    host = canonical_form(big_example_tree())
    beta = canonical_form((circ, [(bull, [1, 4]), (circ, [2, 3])]))
    t, s = relabel_leaves(host, {i: i for i in range(1, 8)})
    assert len(divisor_occurrences(t, beta)) == len(divisor_occurrences(host, beta))


# -- enumeration ---------------------------------------------------------------

def test_binary_tree_counts_double_factorial():
    # shuffle trees on one binary generator: 1, 3, 15, 105
    expect = {2: 1, 3: 3, 4: 15, 5: 105}
    for n, c in expect.items():
        assert len(enumerate_trees([circ], n, n)) == c


def test_ns_tree_counts_catalan():
    # planar binary trees: Catalan numbers 1, 2, 5, 14
    expect = {2: 1, 3: 2, 4: 5, 5: 14}
    for n, c in expect.items():
        assert len(enumerate_trees([circ], n, n, ns=True)) == c
