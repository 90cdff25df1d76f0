"""Free Lie algebra over Q, embedded in the free associative algebra.

An element is stored as its associative expansion (word -> coefficient);
[a, b] = ab - ba. Normal form is read off in the Lyndon basis: the least word
of a Lie element is a Lyndon word, and subtracting its standard bracketing
strictly increases the least word, so peeling terminates.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .numbers import fmt_q

POINT = "P"


def letter_key(name: str):
    return (1 if name == POINT else 0, name)


def word_key(word: tuple):
    return tuple(letter_key(x) for x in word)


def is_lyndon(word: tuple) -> bool:
    k = word_key(word)
    return bool(word) and all(k < k[i:] + k[:i] for i in range(1, len(word)))


@lru_cache(maxsize=None)
def standard_factorization(word: tuple) -> tuple[tuple, tuple]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


class LieExpr:
    __slots__ = ("poly",)

    def __init__(self, poly: dict | None = None):
        self.poly = {w: Fraction(c) for w, c in (poly or {}).items() if c}

    @classmethod
    def gen(cls, name: str) -> "LieExpr":
        return cls({(name,): Fraction(1)})

    @classmethod
    def zero(cls) -> "LieExpr":
        return cls()

    def __add__(self, other: "LieExpr") -> "LieExpr":
        out = dict(self.poly)
        for w, c in other.poly.items():
            out[w] = out.get(w, 0) + c
        return LieExpr(out)

    def __neg__(self):
        return LieExpr({w: -c for w, c in self.poly.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LieExpr":
        c = Fraction(c)
        return LieExpr({w: c * x for w, x in self.poly.items()})

    __rmul__ = scale

    def bracket(self, other: "LieExpr") -> "LieExpr":
        out: dict = {}
        for u, a in self.poly.items():
            for v, b in other.poly.items():
                out[u + v] = out.get(u + v, 0) + a * b
                out[v + u] = out.get(v + u, 0) - a * b
        return LieExpr(out)

    def is_zero(self) -> bool:
        return not self.poly

    def __eq__(self, other):
        return isinstance(other, LieExpr) and self.poly == other.poly

    def __hash__(self):
        return hash(frozenset(self.poly.items()))

    def letters(self) -> set:
        return {x for w in self.poly for x in w}

    def degree_in(self, name: str) -> set:
        return {w.count(name) for w in self.poly}

    def lyndon_terms(self) -> list[tuple[Fraction, tuple]]:
        """Coefficients in the Lyndon basis, sorted by Lyndon word."""
        rest = dict(self.poly)
        out = []
        while rest:
            w = min(rest, key=lambda x: (len(x), word_key(x)))
            if not is_lyndon(w):
                raise ValueError("element is not a Lie polynomial")
            c = rest[w]
            out.append((c, w))
            for u, a in bracketing(w).poly.items():
                v = rest.get(u, 0) - c * a
                if v:
                    rest[u] = v
                else:
                    rest.pop(u, None)
        out.sort(key=lambda t: (len(t[1]), word_key(t[1])))
        return out

    def emit(self) -> list[str]:
        return [f"{fmt_q(c)} {bracket_str(w)}" for c, w in self.lyndon_terms()]

    def __str__(self):
        lines = self.emit()
        return " + ".join(lines) if lines else "0"

    __repr__ = __str__


@lru_cache(maxsize=None)
def _bracketing(word: tuple) -> tuple:
    if len(word) == 1:
        return ((word, Fraction(1)),)
    u, v = standard_factorization(word)
    return tuple(bracketing(u).bracket(bracketing(v)).poly.items())


def bracketing(word: tuple) -> LieExpr:
    """Standard bracketing of a Lyndon word."""
    return LieExpr(dict(_bracketing(word)))


def bracket_str(word: tuple) -> str:
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return f"[{bracket_str(u)},{bracket_str(v)}]"


def nested(gens: Iterable[LieExpr], last: LieExpr) -> LieExpr:
    """[g_n, [… [g_1, last]]] for gens = (g_1, …, g_n)."""
    out = last
    for g in gens:
        out = g.bracket(out)
    return out


def lie_sum(items: Iterable[LieExpr]) -> LieExpr:
    out = LieExpr()
    for x in items:
        out = out + x
    return out
