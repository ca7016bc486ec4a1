"""Total orders on tree monomials: pins, totality, admissibility."""

import itertools

import pytest

from operadgb.orders import (
    EQ,
    GT,
    MonomialOrder,
    check_admissibility,
    leading_term,
)
from operadgb.trees import (
    Element,
    Generator,
    UNIT,
    canonical_form,
    corolla,
    enumerate_trees,
    format_tree,
    ns_compose,
)
from operadgb import builtins as B

M = Element.monomial


def T(raw):
    return canonical_form(raw)


dot = Generator("mul", 2)
P = Generator("P", 1)
b = Generator("b", 2)
d = Generator("d", 1, homdeg=1)


def test_rb_leading_term():
    o = MonomialOrder("path_lex", ("P", "mul"))
    lhs = T((dot, [(P, [1]), (P, [2])]))
    r1 = T((P, [(dot, [(P, [1]), 2])]))
    r2 = T((P, [(dot, [1, (P, [2])])]))
    r3 = T((P, [(dot, [1, 2])]))
    rel = M(r1) + M(r2) + M(r3) - M(lhs)
    lm, c = leading_term(o, rel)
    assert lm is r1 and c == 1


def test_left_combs_lead_associativity():
    for kind in ("path_lex", "pathlex_then_perm"):
        o = MonomialOrder(kind, ("mul",))
        lc1 = T((dot, [(dot, [1, 2]), 3]))
        lc2 = T((dot, [(dot, [1, 3]), 2]))
        rc = T((dot, [1, (dot, [2, 3])]))
        assert o.compare(lc1, rc) == GT
        assert o.compare(lc2, rc) == GT


def test_odd_assoc_partial_composites_ordered():
    mu = Generator("mu", 3, homdeg=1)
    o = MonomialOrder("path_lex", ("mu",))
    Mm = M(corolla(mu))
    m1 = next(iter(ns_compose(Mm, 1, Mm).terms))
    m2 = next(iter(ns_compose(Mm, 2, Mm).terms))
    m3 = next(iter(ns_compose(Mm, 3, Mm).terms))
    assert o.compare(m1, m2) == GT and o.compare(m2, m3) == GT


def test_compare_eq_and_arity_mismatch():
    o = MonomialOrder("path_lex", ("mul",))
    x = T((dot, [1, 2]))
    assert o.compare(x, x) == EQ
    with pytest.raises(ValueError):
        o.compare(x, T((dot, [(dot, [1, 2]), 3])))


def test_grav_leading_terms_l_positive():
    # the right-hand side leads every frame of the bracket relations
    p = B.grav(5)
    o = p.order
    for rel in p.relations:
        lm, _ = leading_term(o, rel)
        # leading monomial is characterised by: root carries the wide
        # bracket composite with a binary top or a weight-2 monomial
        assert lm in rel.terms
    g = {x.name: x for x in p.generators}
    rhs31 = T((g["br2"], [(g["br3"], [1, 2, 3]), 4]))
    lhs31 = T((g["br3"], [(g["br2"], [1, 2]), 3, 4]))
    assert o.compare(rhs31, lhs31) == GT
    rhs42 = T((g["br3"], [(g["br4"], [1, 2, 3, 4]), 5, 6]))
    lhs42 = T((g["br5"], [(g["br2"], [1, 2]), 3, 4, 5, 6]))
    assert o.compare(rhs42, lhs42) == GT


def test_grav_weight_dominates():
    p = B.grav(5)
    o = p.order
    g = {x.name: x for x in p.generators}
    heavy = T((g["br3"], [(g["br3"], [1, 2, 3]), 4, 5]))  # weight 2
    light = T((g["br2"], [(g["br4"], [1, 2, 3, 4]), 5]))  # weight 1
    assert heavy.weight > light.weight
    assert o.compare(heavy, light) == GT


def test_totality_and_antisymmetry_small_enumerations():
    fixtures = [
        (MonomialOrder("path_lex", ("P", "mul")), [dot, P], 3, 4),
        (MonomialOrder("pathlex_then_perm", ("d", "b")), [b, d], 3, 4),
    ]
    for order, gens, max_ar, max_w in fixtures:
        for n in range(1, max_ar + 1):
            trees = enumerate_trees(gens, n, max_w)
            keys = [order.key(t) for t in trees]
            assert len(set(keys)) == len(keys)  # strict totality
            for x, y in itertools.combinations(trees, 2):
                assert order.compare(x, y) == -order.compare(y, x)


@pytest.mark.parametrize(
    "order,gens",
    [
        (MonomialOrder("path_lex", ("P", "mul")), (dot, P)),
        (MonomialOrder("pathlex_then_perm", ("d", "b")), (b, d)),
        (
            B.grav(4).order,
            tuple(B.grav(4).generators),
        ),
    ],
)
def test_admissibility_sampled(order, gens):
    rep = check_admissibility(order, gens, sample_budget=1200, seed=11, max_arity=4, max_weight=4)
    assert rep.samples > 0
    assert rep.ok, rep.violations[:2]


def test_non_admissible_order_detected():
    class PermOnly(MonomialOrder):
        def _build_key(self, mono):
            if mono.is_unit:
                return (0,)
            return (1, tuple(-l for l in mono.planar_leaves), format_tree(mono))

    po = PermOnly("path_lex", ("mul", "P"))
    rep = check_admissibility(po, (dot, P), sample_budget=800, seed=3, max_arity=4, max_weight=4)
    assert not rep.ok


def test_empty_budget_trivially_passes():
    o = MonomialOrder("path_lex", ("mul",))
    rep = check_admissibility(o, (dot,), sample_budget=0, seed=0)
    assert rep.ok and rep.samples == 0


def test_unit_is_minimal():
    o = MonomialOrder("path_lex", ("P",))
    tower = T((P, [(P, [1])]))
    assert o.compare(tower, UNIT) == GT
