from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cy4.lie import LieExpr
from cy4.numbers import InputError
from cy4.wallcross import (P, ClassLattice, EpsilonSystem, FlagTerm, ShapeError, X, chi_of_generator,
                           dtpt_series, flag_wc_rhs, hilb_series, invert_js, js_rhs, omega_transform,
                           ordered_decompositions, qseries_emit, random_euler_form, roundtrip_check,
                           symsign_check, wc_invert)

LATTICES = [ClassLattice((1,), (1,)), ClassLattice((1,), (3,)), ClassLattice((1, 1), (1, 2)),
            ClassLattice((1, 2), (2, 1)), ClassLattice((1, 1, 1), (1, 2, 3))]


@pytest.mark.parametrize("L", LATTICES, ids=str)
def test_roundtrip_derived(L):
    ok, bad = roundtrip_check(L, 4)
    assert ok, bad


def test_printed_normalization_fails_roundtrip():
    # the formula without 1/χ(α) does not invert js_rhs once χ(α) > 1
    ok, bad = roundtrip_check(ClassLattice((1, 1), (1, 2)), 2, normalization="printed")
    assert not ok and bad == (1, 1)


def test_roundtrip_with_phases():
    L = ClassLattice((1, 1), (1, 2))
    phase = lambda a: Fraction(a[1], a[0] + a[1])
    assert roundtrip_check(L, 4, phase)[0]


def test_invert_values():
    L = ClassLattice((1, 1), (1, 2))
    omega = {a: X(a) for a in [(1, 0), (0, 1), (1, 1)]}
    derived = invert_js(omega, L)[(1, 1)]
    printed = invert_js(omega, L, normalization="printed")[(1, 1)]
    assert derived.emit() == ["1 X_1_1", "1/6 [X_0_1,X_1_0]"]
    assert printed.emit() == ["1 X_1_1", "1/2 [X_0_1,X_1_0]"]


def test_js_rhs_rank_two():
    values = {(1,): X((1,)), (2,): X((2,))}
    assert js_rhs((2,), values).emit() == ["1 [X_2,P]", "1/2 [X_1,[X_1,P]]"]
    assert js_rhs((0,), values) == P


def test_js_rhs_same_phase_filter():
    values = {a: X(a) for a in [(1, 0), (0, 1), (1, 1)]}
    phase = lambda a: Fraction(a[1], sum(a))
    assert js_rhs((1, 1), values, phase).emit() == ["1 [X_1_1,P]"]


def test_omega_transform_rules():
    a, b = LieExpr.gen("X_1"), LieExpr.gen("X_2")
    chi = {"X_1": 1, "X_2": 2}.__getitem__
    assert omega_transform(a.bracket(P), chi) == a
    assert omega_transform(b.bracket(a.bracket(P)), chi) == b.bracket(a)
    assert omega_transform(P, chi).is_zero()
    with pytest.raises(ShapeError):
        omega_transform(a, chi)
    with pytest.raises(ShapeError):
        omega_transform(P.bracket(a.bracket(P)), chi)


def test_unknown_generator_class():
    chi = chi_of_generator(ClassLattice((1,), (1,)), {})
    with pytest.raises(ShapeError):
        chi("X_9")


def test_ordered_decompositions():
    parts = ordered_decompositions((2,), [(1,), (2,)])
    assert sorted(parts) == [((1,), (1,)), ((2,),)]
    assert len(ordered_decompositions((3,), [(1,), (2,), (3,)])) == 4


def test_lattice_validation():
    with pytest.raises(InputError):
        ClassLattice((1, 0), (1, 1))
    with pytest.raises(InputError):
        ClassLattice((1,), (1,)).check((-1,))


def test_dtpt_to_q4():
    G, PT, DT = dtpt_series(4)
    assert wc_invert(G, DT, 4) == PT
    want = (PT[2] + G[1].bracket(PT[1]) + G[2].bracket(PT[0])
            + G[1].bracket(G[1].bracket(PT[0])).scale(Fraction(1, 2)))
    assert DT[2] == want


def test_hilb_to_q4():
    G, H = hilb_series(4)
    assert wc_invert(G, H, 4) == {0: P}
    assert qseries_emit({n: H[n] for n in (0, 1, 2)}) == [
        "q^0: 1 P", "q^1: 1 [M_1p,P]", "q^2: 1 [M_2p,P]", "q^2: 1/2 [M_1p,[M_1p,P]]"]
    # coefficient of ad(M_1)^4 P is 1/4!
    assert (Fraction(1, 24), ("M_1p",) * 4 + ("P",)) in [(c, w) for c, w in H[4].lyndon_terms()]


def test_flag_binomial_weights():
    a, b = X((1, 0)), X((0, 1))
    assert flag_wc_rhs([]).is_zero()
    assert flag_wc_rhs([FlagTerm(2, 1, 1, a, b)]) == a.bracket(b).scale(Fraction(1, 2))
    assert flag_wc_rhs([FlagTerm(4, 2, 2, a, b)]) == a.bracket(b).scale(Fraction(1, 6))
    with pytest.raises(InputError):
        flag_wc_rhs([FlagTerm(3, 1, 1, a, b)])


classes = st.tuples(*[st.integers(0, 4)] * 3)


@given(st.integers(0, 10**6), classes, classes, classes)
def test_epsilon_cocycle_and_symsign(seed, a, b, c):
    chi = random_euler_form(random.Random(seed), 3)
    E = EpsilonSystem.from_euler_form(chi)
    assert E.cocycle_check(a, b, c)
    assert symsign_check(E, chi, a, b)
    assert E.epsilon(a, (0, 0, 0)) == 1


def test_epsilon_needs_even_diagonal():
    with pytest.raises(InputError):
        EpsilonSystem.from_euler_form([[1, 0], [0, 0]])
