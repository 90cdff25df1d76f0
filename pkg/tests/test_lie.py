from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cy4 import oracles
from cy4.lie import LieExpr, bracket_str, is_lyndon, nested, standard_factorization

GENS = ["A", "B", "C", "P"]


def lie_elements(depth=3):
    leaf = st.sampled_from(GENS).map(LieExpr.gen)
    return st.recursive(leaf, lambda s: st.tuples(s, s).map(lambda t: t[0].bracket(t[1])), max_leaves=depth)


@given(lie_elements(), lie_elements())
def test_antisymmetry(a, b):
    assert (a.bracket(b) + b.bracket(a)).is_zero()


@given(lie_elements(2), lie_elements(2), lie_elements(2))
def test_jacobi(a, b, c):
    j = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
    assert j.is_zero()


@given(lie_elements(4), st.integers(0, 10**6))
def test_lyndon_terms_against_matrix_oracle(x, seed):
    rng = random.Random(seed)
    mats = oracles.random_matrices(GENS, 3, rng)
    assert oracles.evaluate_assoc(x.poly, mats, 3) == oracles.evaluate_lyndon(x.lyndon_terms(), mats, 3)


def test_emit_format():
    a, b = LieExpr.gen("X_a"), LieExpr.gen("X_b")
    assert a.bracket(b).scale(Fraction(1, 2)).emit() == ["1/2 [X_a,X_b]"]
    assert b.bracket(a).emit() == ["-1 [X_a,X_b]"]


def test_point_sorts_last():
    x, p = LieExpr.gen("X_2"), LieExpr.gen("P")
    assert x.bracket(p).emit() == ["1 [X_2,P]"]
    assert nested([x, x], p).emit() == ["1 [X_2,[X_2,P]]"]


@pytest.mark.parametrize("word,ok", [(("A", "B"), True), (("B", "A"), False), (("A", "A", "B"), True),
                                     (("A", "B", "A"), False), (("A", "P"), True)])
def test_is_lyndon(word, ok):
    assert is_lyndon(word) is ok


def test_standard_factorization():
    assert standard_factorization(("A", "A", "B")) == (("A",), ("A", "B"))
    assert bracket_str(("A", "A", "B")) == "[A,[A,B]]"


def test_equality_and_hash():
    a = LieExpr.gen("A").bracket(LieExpr.gen("B"))
    b = -(LieExpr.gen("B").bracket(LieExpr.gen("A")))
    assert a == b and hash(a) == hash(b)
    assert str(LieExpr()) == "0"
