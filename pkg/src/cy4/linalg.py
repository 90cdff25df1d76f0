"""Exact matrix helpers over Q (lists of Fraction rows)."""
from __future__ import annotations

from fractions import Fraction
from math import lcm


def zeros(r: int, c: int) -> list:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> list:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def matmul(a: list, b: list, inner: int | None = None) -> list:
    rows = len(a)
    inner = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def is_zero(m: list) -> bool:
    return all(not x for row in m for x in row)


def rank(m: list) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer rescaling."""
    rows = []
    for row in m:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        if any(ints):
            rows.append(ints)
    if not rows:
        return 0
    ncols = len(rows[0])
    r, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            ri = rows[i]
            rr = rows[r]
            for j in range(col, ncols):
                ri[j] = (p * ri[j] - a * rr[j]) // prev
        prev = p
        r += 1
        if r == len(rows):
            break
    return r
