"""Exact scalars: rationals and Gaussian rationals, with their text forms."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_RAT = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class InputError(ValueError):
    """Malformed user input; the CLI maps this to exit code 2."""


class ResourceError(RuntimeError):
    """A configured size bound was exceeded; exit code 3."""


def parse_rational(text, where: str = "value") -> Fraction:
    if isinstance(text, bool):
        raise InputError(f"{where}: expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RAT.match(text):
        raise InputError(f"{where}: malformed rational {text!r}")
    num, _, den = text.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise InputError(f"{where}: zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GaussQ:
    """An element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.of(other))

    def __mul__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussQ":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussQ.of(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = GaussQ(Fraction(1)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussQ.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return fmt_q(self.re)
        im = fmt_q(self.im)
        sign = "" if self.im < 0 else "+"
        return f"{fmt_q(self.re)}{sign}{im}*i"

    __repr__ = __str__


I = GaussQ(Fraction(0), Fraction(1))
