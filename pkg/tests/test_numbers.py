from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cy4.numbers import I, GaussQ, InputError, fmt_q, parse_rational

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
gauss = st.builds(GaussQ, rationals, rationals)


def test_parse_rational_forms():
    assert parse_rational("-1") == -1
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -2 / 4 ") == Fraction(-1, 2)
    assert parse_rational(7) == 7


@pytest.mark.parametrize("bad", ["1.5", "a/2", "1/0", "", True, None, "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad, "field")


def test_error_mentions_field():
    with pytest.raises(InputError, match="edges\\[2\\].coeff"):
        parse_rational("x", "edges[2].coeff")


@given(rationals)
def test_fmt_roundtrip(q):
    assert parse_rational(fmt_q(q)) == q


def test_gauss_text_form():
    assert str(GaussQ(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4*i"
    assert str(GaussQ(Fraction(0), Fraction(-1))) == "0-1*i"
    assert str(I) == "0+1*i"
    assert str(GaussQ.of(-3)) == "-3"


def test_i_powers():
    assert I * I == -1
    assert I ** 4 == 1
    assert I ** -1 == -I


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * a.inverse() == 1


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        GaussQ().inverse()
