"""Wall-crossing combinatorics on free Lie algebras.

Classes are nonnegative integer vectors. ``X_a_b`` names the generator of class
(a, b) and ``P`` is the framing point class. Rank and χ of a class come from
linear functionals (``ClassLattice``) so additivity holds by construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Iterable, Optional

from .lie import POINT, LieExpr, lie_sum, nested
from .numbers import InputError, ResourceError


class ShapeError(InputError):
    pass


Class = tuple


def gen_name(alpha: Class) -> str:
    return "X_" + "_".join(str(a) for a in alpha)


def X(alpha: Class) -> LieExpr:
    return LieExpr.gen(gen_name(alpha))


P = LieExpr.gen(POINT)


@dataclass(frozen=True)
class ClassLattice:
    rk: tuple   # rk(α) = Σ rk_i α_i
    chi: tuple  # χ(α(k)) = Σ chi_i α_i

    def __post_init__(self):
        if len(self.rk) != len(self.chi):
            raise InputError("rk and chi weights must have the same length")
        if any(r <= 0 for r in self.rk) or any(c <= 0 for c in self.chi):
            raise InputError("rk and chi weights must be positive")

    @property
    def dim(self) -> int:
        return len(self.rk)

    def rank(self, a: Class) -> int:
        return sum(x * y for x, y in zip(self.rk, a))

    def chi_of(self, a: Class) -> int:
        return sum(x * y for x, y in zip(self.chi, a))

    def check(self, a: Class) -> Class:
        a = tuple(int(x) for x in a)
        if len(a) != self.dim or any(x < 0 for x in a):
            raise InputError(f"class {a} is not a nonnegative vector of length {self.dim}")
        return a

    def classes_up_to_rank(self, max_rank: int) -> list[Class]:
        bounds = [max_rank // r for r in self.rk]
        out = [a for a in product(*(range(b + 1) for b in bounds)) if any(a) and self.rank(a) <= max_rank]
        return sorted(out, key=lambda a: (self.rank(a), a))


# ---------------------------------------------------------------------------
# ε sign systems

@dataclass(frozen=True)
class EpsilonSystem:
    """ε_{α,β} = (-1)^{αᵀBβ} with B upper triangular, B_ij = χ_ij mod 2 for i < j."""

    B: tuple

    @classmethod
    def from_euler_form(cls, chi: Iterable[Iterable[int]]) -> "EpsilonSystem":
        chi = [list(r) for r in chi]
        n = len(chi)
        for i in range(n):
            if len(chi[i]) != n:
                raise InputError("Euler form must be square")
            if chi[i][i] % 2:
                raise InputError(f"χ(e{i},e{i}) = {chi[i][i]} is odd; no ε-system exists")
            for j in range(n):
                if (chi[i][j] - chi[j][i]) % 2:
                    raise InputError("Euler form is not symmetric mod 2")
        return cls(tuple(tuple(chi[i][j] % 2 if i < j else 0 for j in range(n)) for i in range(n)))

    def b(self, a: Class, c: Class) -> int:
        return sum(a[i] * self.B[i][j] * c[j] for i in range(len(a)) for j in range(len(c))) % 2

    def epsilon(self, a: Class, c: Class) -> int:
        return -1 if self.b(a, c) else 1

    def cocycle_check(self, a: Class, b: Class, c: Class) -> bool:
        ab = tuple(x + y for x, y in zip(a, b))
        bc = tuple(x + y for x, y in zip(b, c))
        return self.epsilon(a, b) * self.epsilon(ab, c) == self.epsilon(b, c) * self.epsilon(a, bc)


def euler_pairing(chi, a: Class, b: Class) -> int:
    return sum(a[i] * chi[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))


def symsign_check(E: EpsilonSystem, chi, a: Class, b: Class) -> bool:
    return E.epsilon(a, b) == (-1) ** euler_pairing(chi, a, b) * E.epsilon(b, a)


# ---------------------------------------------------------------------------
# Joyce–Song pairs

def _same_phase(phase: Optional[Callable]) -> Callable:
    if phase is None:
        return lambda parts: True
    return lambda parts: len({phase(p) for p in parts}) <= 1


MAX_TUPLES = 200_000


def ordered_decompositions(alpha: Class, support: Iterable[Class]) -> list[tuple]:
    """Ordered tuples of support classes summing to alpha."""
    support = [s for s in support if any(s)]
    for s in support:
        if any(x < 0 for x in s):
            raise ResourceError(f"class {s} has negative entries; decompositions of {alpha} are unbounded")
    out: list = []

    def rec(rest, acc):
        if len(out) > MAX_TUPLES:
            raise ResourceError(f"more than {MAX_TUPLES} decompositions of {alpha}")
        if not any(rest):
            out.append(tuple(acc))
            return
        for s in support:
            if all(x <= y for x, y in zip(s, rest)):
                rec(tuple(y - x for x, y in zip(s, rest)), acc + [s])

    rec(tuple(alpha), [])
    return out


def js_rhs(alpha: Class, values: dict, phase: Optional[Callable] = None) -> LieExpr:
    """Σ over ordered (α₁..α_n) ⊢ α of equal phase, (1/n!)[v_{α_n},…[v_{α₁},P]…]."""
    alpha = tuple(alpha)
    if not any(alpha):
        return P
    ok = _same_phase(phase)
    terms = []
    for parts in ordered_decompositions(alpha, values):
        if ok(parts):
            terms.append(nested((values[p] for p in parts), P).scale(Fraction(1, factorial(len(parts)))))
    return lie_sum(terms)


def omega_transform(e: LieExpr, chi: Callable[[str], int]) -> LieExpr:
    """ad(x_n…x_1)P ↦ χ(x_1)·[x_n,…[x_2,x_1]]; bare P ↦ 0.

    Every word of a P-linear Lie element has exactly one P, and the words ending
    in P read off the element ad(u)P uniquely.
    """
    out: dict = {}
    for w, c in e.poly.items():
        n = w.count(POINT)
        if n != 1:
            raise ShapeError(f"term with P-degree {n}; expected nested brackets on a single P")
    for w, c in e.poly.items():
        if w[-1] != POINT or len(w) == 1:
            continue
        xs = w[:-1]  # x_n … x_1
        term = LieExpr.gen(xs[-1]).scale(c * chi(xs[-1]))
        for x in reversed(xs[:-1]):
            term = LieExpr.gen(x).bracket(term)
        for k, v in term.poly.items():
            out[k] = out.get(k, 0) + v
    return LieExpr(out)


def chi_of_generator(lattice: ClassLattice, named: dict) -> Callable[[str], int]:
    def chi(name: str) -> int:
        if name not in named:
            raise ShapeError(f"generator {name} has no class")
        return lattice.chi_of(named[name])
    return chi


def invert_js(omega: dict, lattice: ClassLattice, phase: Optional[Callable] = None,
              normalization: str = "derived") -> dict:
    """Solve for ⟨M_α⟩ by induction on rank.

    ``derived``: M_α = Ω_α − χ(α)^{-1} Σ_{n≥2} χ(α₁)/n! [M_{α_n},…[M_{α₂},M_{α₁}]], which makes
    omega_transform(js_rhs(α, M)) = χ(α)Ω_α. ``printed`` omits the χ(α)^{-1}.
    """
    if normalization not in ("derived", "printed"):
        raise InputError(f"unknown normalization {normalization!r}")
    ok = _same_phase(phase)
    classes = sorted((lattice.check(a) for a in omega), key=lambda a: (lattice.rank(a), a))
    M: dict = {}
    for a in classes:
        corr = []
        for parts in ordered_decompositions(a, M):
            if len(parts) < 2 or not ok(parts):
                continue
            inner = M[parts[0]]
            for p in parts[1:]:
                inner = M[p].bracket(inner)
            corr.append(inner.scale(Fraction(lattice.chi_of(parts[0]), factorial(len(parts)))))
        total = lie_sum(corr)
        if normalization == "derived":
            total = total.scale(Fraction(1, lattice.chi_of(a)))
        M[a] = omega[a] - total
    return M


def roundtrip_check(lattice: ClassLattice, max_rank: int, phase: Optional[Callable] = None,
                    normalization: str = "derived") -> tuple[bool, Optional[Class]]:
    classes = lattice.classes_up_to_rank(max_rank)
    omega = {a: X(a) for a in classes}
    named = {gen_name(a): a for a in classes}
    M = invert_js(omega, lattice, phase, normalization)
    chi = chi_of_generator(lattice, named)
    ok = _same_phase(phase)
    for a in classes:
        if phase is not None and not ok((a,)):
            continue
        lhs = omega_transform(js_rhs(a, M, phase), chi)
        if lhs != omega[a].scale(lattice.chi_of(a)):
            return False, a
    return True, None


# ---------------------------------------------------------------------------
# q-series of Lie elements

QSeries = dict  # n -> LieExpr


def _ad(G: QSeries, S: QSeries, order: int) -> QSeries:
    out: QSeries = {}
    for n, g in G.items():
        if n <= 0:
            raise InputError("generator series must start at q^1")
        for m, s in S.items():
            if n + m <= order:
                out[n + m] = out.get(n + m, LieExpr()) + g.bracket(s)
    return {k: v for k, v in out.items() if not v.is_zero()}


def exp_adjoint(G: QSeries, T: QSeries, order: int) -> QSeries:
    """exp(Σ_n ad_{G_n} qⁿ) applied to T, exact through q^order."""
    result = {n: t for n, t in T.items() if n <= order}
    term = dict(result)
    k = 0
    while term:
        k += 1
        term = {n: v.scale(Fraction(1, k)) for n, v in _ad(G, term, order).items()}
        for n, v in term.items():
            result[n] = result.get(n, LieExpr()) + v
    return {n: v for n, v in sorted(result.items()) if not v.is_zero()}


def negate(G: QSeries) -> QSeries:
    return {n: -g for n, g in G.items()}


def wc_invert(G: QSeries, S: QSeries, order: int) -> QSeries:
    """Undo exp_adjoint(G, ·)."""
    return exp_adjoint(negate(G), S, order)


def point_gen(n: int) -> LieExpr:
    return LieExpr.gen(f"M_{n}p")


def dtpt_series(order: int) -> tuple[QSeries, QSeries, QSeries]:
    """(G, PT, DT) with G_n = ⟨M_{np}⟩, PT_n free generators and DT = exp(ad G)PT."""
    G = {n: point_gen(n) for n in range(1, order + 1)}
    PT = {n: LieExpr.gen(f"PT_{n}") for n in range(order + 1)}
    return G, PT, exp_adjoint(G, PT, order)


def hilb_series(order: int) -> tuple[QSeries, QSeries]:
    """Hilb(q) = exp(Σ ad_{⟨M_{np}⟩} qⁿ) e^{(1,0)}."""
    G = {n: point_gen(n) for n in range(1, order + 1)}
    return G, exp_adjoint(G, {0: P}, order)


def qseries_emit(S: QSeries) -> list[str]:
    out = []
    for n in sorted(S):
        for line in S[n].emit():
            out.append(f"q^{n}: {line}")
    return out


# ---------------------------------------------------------------------------
# flag wall-crossing

@dataclass(frozen=True)
class FlagTerm:
    chi: int
    chi1: int
    chi2: int
    omega1: LieExpr
    omega2: LieExpr


def flag_wc_rhs(terms: Iterable[FlagTerm]) -> LieExpr:
    """Σ_j C(χ, χ₁ʲ)^{-1} [Ω₁ʲ, Ω₂ʲ]."""
    out = []
    for j, t in enumerate(terms):
        if t.chi != t.chi1 + t.chi2:
            raise InputError(f"o-data[{j}]: χ = {t.chi} is not χ₁ + χ₂ = {t.chi1} + {t.chi2}")
        if t.chi1 < 0 or t.chi2 < 0:
            raise InputError(f"o-data[{j}]: negative χ")
        out.append(t.omega1.bracket(t.omega2).scale(Fraction(1, comb(t.chi, t.chi1))))
    return lie_sum(out)


def random_triple(rng: random.Random, dim: int, bound: int = 4) -> tuple:
    return tuple(tuple(rng.randint(0, bound) for _ in range(dim)) for _ in range(3))


def random_euler_form(rng: random.Random, dim: int, bound: int = 5) -> list:
    chi = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        chi[i][i] = 2 * rng.randint(-bound, bound)
        for j in range(i + 1, dim):
            chi[i][j] = chi[j][i] = rng.randint(-bound, bound)
    return chi
