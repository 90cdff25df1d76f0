from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cy4 import oracles
from cy4.examples import c4_spec, example_spec, point_spec
from cy4.numbers import InputError, ResourceError
from cy4.quiver import cy4_complete, graft
from cy4.rep import (Representation, euler_form, ext_complex, monomial_fixed_points, random_representation,
                     relation_defects, staircases)

EXAMPLE = cy4_complete(example_spec())
C4 = cy4_complete(c4_spec())
POINT = cy4_complete(point_spec())
JS = graft(C4, "js")

dims4 = st.lists(st.integers(0, 5), min_size=4, max_size=4)


@given(dims4, dims4)
def test_euler_symmetric_example(d, e):
    v = EXAMPLE.full.vertices
    d, e = dict(zip(v, d)), dict(zip(v, e))
    assert euler_form(EXAMPLE, d, e) == euler_form(EXAMPLE, e, d)
    assert euler_form(EXAMPLE, d, d) % 2 == 0


@given(st.integers(0, 6), st.integers(0, 6))
def test_euler_c4_vanishes_and_point_is_2de(d, e):
    assert euler_form(C4, {"0": d}, {"0": e}) == 0
    assert euler_form(POINT, {"0": d}, {"0": e}) == 2 * d * e


def test_euler_example_values():
    assert euler_form(EXAMPLE, {"1": 1}, {"2": 1}) == -1
    assert euler_form(EXAMPLE, {"1": 1}, {"1": 1}) == 2


@pytest.mark.parametrize("Q", [EXAMPLE, graft(C4, "flag", 3)], ids=["example", "c4+flag3"])
@given(seed=st.integers(0, 10**6))
def test_ext_complex_random(Q, seed):
    rng = random.Random(seed)
    dims = {v: rng.randint(0, 3) for v in Q.full.vertices}
    M = random_representation(Q, dims, rng)
    assert not relation_defects(Q, M)
    C = ext_complex(Q, M)
    assert C.square_zero()
    assert C.euler_characteristic() == euler_form(Q, dims, dims)
    assert sum((-1) ** i * n for i, n in enumerate(C.ext_dims())) == C.euler_characteristic()


def test_ext_at_one_point():
    fp = monomial_fixed_points(1)[0]
    assert ext_complex(JS, fp.rep).ext_dims()[1] == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_serre_symmetry(n):
    for fp in monomial_fixed_points(n):
        d = ext_complex(JS, fp.rep).ext_dims()
        assert d == d[::-1]


def test_fixed_points_commute_and_are_cyclic():
    for fp in monomial_fixed_points(3):
        assert not relation_defects(JS, fp.rep)


def test_staircase_counts():
    # values frozen from the height-array oracle
    assert [len(staircases(n)) for n in range(7)] == [1, 1, 4, 10, 26, 59, 140]


@pytest.mark.parametrize("n", range(1, 6))
def test_staircases_match_oracle(n):
    oracle = {oracles.heights_to_boxes(h) for h in oracles.solid_partitions(n)}
    assert set(staircases(n)) == oracle


def test_max_n_bound(monkeypatch):
    monkeypatch.setenv("CY4_MAX_N", "3")
    with pytest.raises(ResourceError):
        staircases(4)
    assert len(staircases(3)) == 10


def test_validate_shapes():
    M = Representation({"0": 2}, {"x1": [[Fraction(0)]]})
    with pytest.raises(InputError):
        M.validate(C4)


def test_relation_defect_detected():
    one = Fraction(1)
    M = Representation({"0": 2}, {"x1": [[0, one], [0, 0]], "x2": [[one, 0], [0, 0]]})
    assert "c12" in relation_defects(C4, M)
