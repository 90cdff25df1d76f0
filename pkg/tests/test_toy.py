from __future__ import annotations

import sympy
import pytest
from hypothesis import given, strategies as st

from cy4 import oracles
from cy4.numbers import InputError
from cy4.toy import (ProjBundleModel, ThetaLine, bracket_pushdown, cap_tau, ezT_convolve, ezT_vector, h,
                     fixed_locus_residues, locus3_coefficient, proj_pushforward, segre, self_dual_toy,
                     substitute_roots, tau, theta_class, z)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_pushforward_gives_segre(r):
    M = ProjBundleModel(r)
    s = segre(M.c, 4)
    for j in range(4):
        assert sympy.expand(proj_pushforward(M, h ** (r - 1 + j)) - s[j]) == 0
    for k in range(r - 1):
        assert proj_pushforward(M, h ** k) == 0


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4, unique=True), st.integers(0, 6))
def test_pushforward_against_lagrange(roots, k):
    M = ProjBundleModel(len(roots))
    base = substitute_roots(M, proj_pushforward(M, h ** k), roots)
    assert sympy.Rational(base) == sympy.Rational(str(oracles.lagrange_pushforward(h ** k, roots)))


def test_frozen_pushforward():
    M = ProjBundleModel(3)
    c1, c2, c3 = M.c
    assert sympy.expand(proj_pushforward(M, h ** 4) - (c1 ** 2 - c2)) == 0


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_fiber_euler_characteristic(r):
    M = ProjBundleModel(r)
    assert proj_pushforward(M, M.euler_T_pi()) == r


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("a", [0, 2])
def test_bracket_pushdown(r, a):
    rep = bracket_pushdown(r, a)
    assert rep.ok
    assert rep.residue == r and rep.step2


def test_bracket_pushdown_rejects_odd_degree():
    with pytest.raises(InputError):
        bracket_pushdown(2, 1)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_ezT_convolution(coeffs):
    f = sum(c * tau ** i for i, c in enumerate(coeffs))
    assert ezT_convolve(f, 6)


def test_cap_lowers_p_degree():
    out = cap_tau(ezT_vector(3), tau ** 2).as_dict()
    assert out == {0: z ** 2, 1: z ** 3}


def test_loci():
    rep = fixed_locus_residues()
    assert rep.locus1 == "A"
    assert rep.locus2 == "-Ap"
    assert rep.locus3 == "1 [A1,A2]"
    assert locus3_coefficient((ThetaLine("x", 1),)) == sympy.Rational(1, 2)


def test_self_dual_sum_cancels():
    assert self_dual_toy().total == 0


def test_theta_weight_zero_rejected():
    with pytest.raises(InputError):
        theta_class((ThetaLine("x", -1),))


def test_rank_must_be_positive():
    with pytest.raises(InputError):
        ProjBundleModel(0)
