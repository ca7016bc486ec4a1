"""Operads from commutative algebras and quadratic-basis verdicts."""

import pytest

from operadgb import builtins as B
from operadgb.algebra import algebra_to_operad
from operadgb.groebner import buchberger, normal_monomials
from operadgb.koszul import INCONCLUSIVE, NOT_QUADRATIC, PBW_KOSZUL, pbw_koszul_check


def test_polynomial_line_dims():
    p = algebra_to_operad(["x"], [])
    gb = buchberger(p, arity_bound=6)
    for n in range(2, 7):
        assert len(normal_monomials(gb, n)) == 1


def test_dual_numbers_dims():
    p = algebra_to_operad(["x"], [{(0, 0): 1}])
    gb = buchberger(p, arity_bound=6)
    expected = {2: 1, 3: 0, 4: 0, 5: 0, 6: 0}
    for n, dim in expected.items():
        assert len(normal_monomials(gb, n)) == dim


def test_two_variables_dims():
    p = algebra_to_operad(["x", "y"], [])
    gb = buchberger(p, arity_bound=5)
    for n in range(2, 6):
        assert len(normal_monomials(gb, n)) == n  # monomials of degree n-1


def test_quotient_plane_curve_dims():
    # k[x,y]/(xy): degree-d part has dimension 2 for d >= 1
    p = algebra_to_operad(["x", "y"], [{(0, 1): 1}])
    gb = buchberger(p, arity_bound=5)
    for n in range(3, 6):
        assert len(normal_monomials(gb, n)) == 2


def test_inhomogeneous_algebra_relation_rejected():
    with pytest.raises(ValueError):
        algebra_to_operad(["x"], [{(0, 0): 1, (0,): 1}])


def test_pbw_verdicts():
    assert pbw_koszul_check(algebra_to_operad(["x"], [{(0, 0): 1}]), 5).verdict == PBW_KOSZUL
    assert pbw_koszul_check(B.grav(4), 4).verdict == PBW_KOSZUL
    rep = pbw_koszul_check(B.bv(), 4, weight_bound=8)
    assert rep.verdict == NOT_QUADRATIC
    assert max(m.weight for m in rep.witness.terms) == 4


def test_pbw_inconclusive_when_bound_too_small():
    rep = pbw_koszul_check(B.ncrb(), 2)
    assert rep.verdict == INCONCLUSIVE


def test_pbw_diagonal_table():
    rep = pbw_koszul_check(B.grav(4), 4, diagonal_bound=4)
    assert rep.verdict == PBW_KOSZUL
    for (n, d), count in rep.diagonal.items():
        assert count > 0
