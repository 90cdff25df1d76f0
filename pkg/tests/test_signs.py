from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cy4.numbers import I, GaussQ
from cy4.signs import (CompositionError, Det, Dual, LineIso, Space, Tensor, Unit, compare_dual, degree,
                       double_dual_discrepancy, dual_iso, dual_orientation_sides, eor_sides, evaluate,
                       identity, induced_orientation, inverse_roundtrip, is_orientation, ot_comparison,
                       perm_sign, sigma, verify_eps_swap, verify_pentagon)

ranks = st.integers(0, 4)


@given(ranks, ranks)
def test_pentagon(a, b):
    ok, lhs, rhs = verify_pentagon(a, b)
    assert ok and lhs == rhs


@given(ranks, ranks)
def test_eps_swap(a, b):
    assert verify_eps_swap(a, b)


@given(st.integers(0, 8))
def test_double_dual(r):
    assert double_dual_discrepancy(Det(Space.standard("v", r))) == (-1) ** r


@pytest.mark.parametrize("n", range(5))
def test_dual_orientation_ratio(n):
    assert compare_dual(n) == (-1) ** n


@pytest.mark.parametrize("a", range(4))
@pytest.mark.parametrize("b", range(4))
@pytest.mark.parametrize("c", range(4))
def test_ot_comparison(a, b, c):
    assert ot_comparison(a, b, c) == (-1) ** (b + c)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("dual", [False, True])
def test_induced_orientations_are_orientations(n, dual):
    o = induced_orientation(2 * n, dual)
    assert is_orientation(o)
    lhs, rhs = eor_sides(o)
    assert lhs == rhs
    assert o.scalar in {GaussQ.of(1), GaussQ.of(-1), I, -I}
    a, b = dual_orientation_sides(o)
    assert a == b


def test_space_double_dual():
    V = Space.standard("v", 3)
    assert V.dual().dual() == V
    assert V.dual() != V


def test_sigma_sign():
    a, b = Det(Space.standard("a", 1)), Det(Space.standard("b", 3))
    assert sigma(a, b).scalar == -1
    assert sigma(a, Det(Space.standard("c", 2))).scalar == 1


def test_degrees():
    V = Space.standard("v", 3)
    assert degree(Det(V)) == 3
    # duals keep the degree so that C_r* can be identified with C_r
    assert degree(Dual(Det(V))) == 3
    assert degree(Tensor(Det(V), Unit(2))) == 5


def test_composition_checks_endpoints():
    a, b = Det(Space.standard("a", 1)), Det(Space.standard("b", 1))
    with pytest.raises(CompositionError):
        evaluate([identity(a), identity(b)])


def test_inverse_roundtrip():
    a = Det(Space.standard("a", 2))
    f = LineIso(a, a, GaussQ(2, 1), "f")
    assert inverse_roundtrip(f) == 1
    assert dual_iso(f).scalar == f.scalar


def test_perm_sign():
    assert perm_sign("abc", "bca") == 1
    assert perm_sign("abc", "bac") == -1
