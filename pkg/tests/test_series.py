from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, strategies as st

from cy4 import oracles
from cy4.numbers import InputError
from cy4.series import (CoeffRing, EqKClass, InvalidNormalBundle, LaurentSeries, SingularInputError,
                        emit_series, euler_class, expand_power, explicit_expansion, global_residue_check,
                        localize_general, parse_expr, positive_part, random_roots, ring_for,
                        series_from_expr, sqrt_euler_check, total_chern)

R = CoeffRing(("l1",))


@pytest.mark.parametrize("regime", ["local", "global"])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_explicit_matches_inversion(regime, k):
    a = expand_power(R, "l1", k, regime, 10)
    b = explicit_expansion(R, "l1", k, regime, 10)
    assert a.agrees(b, 10)


@pytest.mark.parametrize("regime", ["local", "global"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_inversion_matches_sympy_taylor(regime, k):
    a = expand_power(R, "l1", k, regime, 10)
    for e, c in oracles.taylor_coefficients(k, regime, 10).items():
        assert sympy.simplify(R.to_expr(a.z_coeff(e)) - c) == 0


def test_frozen_coefficients():
    lines = emit_series(expand_power(R, "l1", 2, "local", 3), 3)
    assert lines == ["1 * z^0 * l1^-2", "-2 * z^1 * l1^-3", "3 * z^2 * l1^-4", "-4 * z^3 * l1^-5"]
    lines = emit_series(expand_power(R, "l1", 2, "global", 4), 4)
    assert lines == ["3 * z^-4 * l1^2", "-2 * z^-3 * l1", "1 * z^-2"]


def test_residues_by_regime():
    assert not expand_power(R, "l1", 1, "local", 8).residue()
    assert expand_power(R, "l1", 1, "global", 8).residue() == R.one


@given(st.integers(1, 4), st.sampled_from(["l1", "l2", "l1+l2", "3*l1-2*l2"]))
def test_local_residue_of_pure_lambda_pole_vanishes(k, lam):
    R2 = CoeffRing(("l1", "l2"))
    assert not expand_power(R2, lam, k, "local", 8).residue()


@given(st.integers(0, 10**6))
def test_sqrt_euler_identity(seed):
    rng = random.Random(seed)
    t_ge, t_le, e_ge = (random_roots(rng, rng.randint(0, 3)) for _ in range(3))
    assert sqrt_euler_check(t_ge, t_le, e_ge, 8)


def test_sqrt_euler_with_nilpotent_roots():
    t_ge = EqKClass.bundle(["x", "y"])
    t_le = EqKClass.bundle(["u"])
    e_ge = EqKClass.bundle(["x+u"])
    assert sqrt_euler_check(t_ge, t_le, e_ge, 6)


def test_global_residue_predicate():
    single = EqKClass.line(lams=(1,))
    pair = single + EqKClass.line(lams=(-1,))
    assert global_residue_check(single) is False
    assert global_residue_check(pair) is True


def test_series_arithmetic():
    z = LaurentSeries.z(R, "local", 6)
    s = LaurentSeries.linear(R, 1, "l1", "local", 6)
    assert (s * s.inverse()).agrees(LaurentSeries.constant(R, 1, "local", 6))
    assert (s - z).agrees(LaurentSeries.constant(R, "l1", "local", 6))


def test_zero_series_is_singular():
    zero = LaurentSeries.constant(R, 0, "local", 4)
    with pytest.raises(SingularInputError):
        zero.inverse()


def test_nilpotent_truncation():
    Rn = CoeffRing((), ("x",), nil_order=2)
    s = LaurentSeries.linear(Rn, 1, "x", "global", 4)
    inv = s.inverse()
    assert Rn.to_expr(inv.z_coeff(-3)) == sympy.Symbol("x") ** 2


def test_localization_uses_positive_part():
    N = EqKClass.line(lams=(1,)) + EqKClass.line(lams=(-1,)) + EqKClass.line(lams=(0, 1))
    assert len(positive_part(N).terms) == 2
    ring = ring_for(N)
    token, s = localize_general("A", N, ring, "local", 4)
    assert token == "A"
    assert sympy.simplify(ring.to_expr(s.z_coeff(0)) - 1 / (sympy.Symbol("l1") * sympy.Symbol("l2"))) == 0


def test_weight_zero_normal_bundle_rejected():
    with pytest.raises(InvalidNormalBundle):
        positive_part(EqKClass.line())


def test_total_chern_needs_trivial_weight():
    K = EqKClass.line(nz=1)
    with pytest.raises(InputError):
        total_chern(K, ring_for(K), "global", 4)


def test_euler_class_of_dual():
    K = EqKClass.bundle([1, 2], lams=(1,))
    ring = ring_for(K)
    a = euler_class(K, ring, "local", 4)
    b = euler_class(K.dual(), ring, "local", 4)
    assert a.agrees(b)  # even rank: e(K*) = e(K)


def test_parse_and_expand():
    expr, lams = parse_expr("(l1+z)^-2")
    assert lams == ["l1"]
    s = series_from_expr(expr, CoeffRing(lams), "local", 5)
    assert s.agrees(expand_power(R, "l1", 2, "local", 5), 5)


def test_parse_rejects_garbage():
    with pytest.raises(InputError):
        parse_expr("(l1+")
    with pytest.raises(InputError):
        series_from_expr(sympy.sympify("exp(z)"), R, "local", 3)
