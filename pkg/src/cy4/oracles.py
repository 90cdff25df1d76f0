"""Independent cross-checks. None of these share code paths with the engines
they check: fixed points come from height arrays instead of box growth,
pushforwards from Lagrange interpolation over integer roots instead of normal
forms, series from sympy's Taylor expansion instead of Cauchy inversion.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import sympy


def solid_partitions(n: int) -> list[dict]:
    """Height arrays π(i,j,k) ≥ 0, weakly decreasing along each axis, summing to n."""
    cells = sorted((c for c in product(range(n), repeat=3) if sum(c) < n), key=lambda c: (sum(c), c))
    out = []

    def rec(idx: int, rest: int, heights: dict):
        if rest == 0:
            out.append({c: h for c, h in heights.items() if h})
            return
        if idx == len(cells):
            return
        c = cells[idx]
        bound = rest
        for axis in range(3):
            if c[axis]:
                prev = tuple(c[j] - (j == axis) for j in range(3))
                bound = min(bound, heights.get(prev, 0))
        for hgt in range(bound, -1, -1):
            heights[c] = hgt
            rec(idx + 1, rest - hgt, heights)
        heights.pop(c, None)

    rec(0, n, {})
    return out


def heights_to_boxes(heights: dict) -> frozenset:
    return frozenset((i, j, k, l) for (i, j, k), hgt in heights.items() for l in range(hgt))


def solid_partition_count(n: int) -> int:
    return len(solid_partitions(n))


def lagrange_pushforward(f, roots) -> Fraction:
    """p_*(f(h)) = Σ_i f(-a_i)/Π_{j≠i}(a_j - a_i) for distinct integer roots a_i."""
    h = sympy.Symbol("h")
    roots = list(roots)
    if len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct")
    total = sympy.Integer(0)
    for i, a in enumerate(roots):
        den = sympy.prod([b - a for j, b in enumerate(roots) if j != i])
        total += sympy.sympify(f).subs(h, -a) / den
    q = sympy.Rational(total)
    return Fraction(int(q.p), int(q.q))


def taylor_coefficients(k: int, regime: str, order: int) -> dict:
    """z-exponent -> coefficient of (l1+z)^{-k} via sympy series expansion."""
    z, l1, w = sympy.symbols("z l1 w")
    if regime == "local":
        ser = sympy.series((l1 + z) ** (-k), z, 0, order + 1).removeO()
        poly = sympy.Poly(sympy.expand(ser), z)
        return {m[0]: sympy.simplify(c) for m, c in poly.terms()}
    ser = sympy.series((l1 + 1 / w) ** (-k), w, 0, order + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser), w)
    return {-m[0]: sympy.simplify(c) for m, c in poly.terms()}


def random_matrices(names, size: int, rng: random.Random, bound: int = 3) -> dict:
    return {n: sympy.Matrix(size, size, lambda i, j: rng.randint(-bound, bound)) for n in names}


def evaluate_assoc(poly: dict, mats: dict, size: int):
    """Evaluate a word -> coefficient polynomial on matrices."""
    out = sympy.zeros(size, size)
    for word, c in poly.items():
        m = sympy.eye(size)
        for x in word:
            m = m * mats[x]
        out += sympy.Rational(c.numerator, c.denominator) * m
    return out


def evaluate_lyndon(terms, mats: dict, size: int):
    """Evaluate Σ c·(bracketed Lyndon word) by recursive matrix commutators."""
    from .lie import standard_factorization

    def br(word):
        if len(word) == 1:
            return mats[word[0]]
        u, v = standard_factorization(word)
        a, b = br(u), br(v)
        return a * b - b * a

    out = sympy.zeros(size, size)
    for c, w in terms:
        out += sympy.Rational(c.numerator, c.denominator) * br(w)
    return out
