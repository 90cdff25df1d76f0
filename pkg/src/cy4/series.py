"""Truncated Laurent series in z for equivariant Chern-class computations.

Coefficients live in ``QQ(λ₁..λ_k)[x₁..x_m]`` where the x's are nilpotent
Chern-root symbols (monomials of total x-degree above ``nil_order`` vanish).
A series is stored in the expansion variable w: w = z in the local regime
(|z| < |λ|, finitely many negative z powers) and w = 1/z in the global regime.
Every series records an absolute precision: coefficients of w^k with
k >= prec are unknown. Exact (polynomial) series have prec None.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional

import sympy
from sympy import QQ
from sympy.polys.rings import ring as poly_ring

from .numbers import InputError, fmt_q

DEFAULT_ORDER = 12
REGIMES = ("local", "global")


class SingularInputError(InputError):
    """Inverting a series whose leading coefficient is not a unit."""


class InvalidNormalBundle(InputError):
    pass


class CoeffRing:
    def __init__(self, lams: Iterable[str] = (), nils: Iterable[str] = (), nil_order: int = DEFAULT_ORDER):
        self.lams = tuple(lams)
        self.nils = tuple(nils)
        if set(self.lams) & set(self.nils) or "z" in self.lams + self.nils:
            raise InputError("symbol declared twice (z, λ's and nilpotents must be distinct)")
        self.nil_order = nil_order
        self.base = QQ.frac_field(*map(sympy.Symbol, self.lams)) if self.lams else QQ
        gens = self.nils or ("_nil",)
        self.R = poly_ring(",".join(gens), self.base)[0]

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and (self.lams, self.nils, self.nil_order) == (
            other.lams, other.nils, other.nil_order)

    def __hash__(self):
        return hash((self.lams, self.nils, self.nil_order))

    @property
    def zero(self):
        return self.R.zero

    @property
    def one(self):
        return self.R.one

    def convert(self, x):
        if isinstance(x, (int, Fraction)):
            x = sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sympy.Integer(x)
        if isinstance(x, str):
            x = sympy.sympify(x)
        if getattr(x, "ring", None) == self.R:
            return x
        extra = {s.name for s in x.free_symbols} - set(self.lams) - set(self.nils)
        if extra:
            raise InputError(f"unknown symbols {sorted(extra)} in coefficient {x}")
        return self.truncate(self.R.from_expr(x))

    def lam(self, name: str):
        return self.convert(sympy.Symbol(name))

    def truncate(self, p):
        if not self.nils:
            return p
        D = self.nil_order
        if all(sum(m) <= D for m in p.keys()):
            return p
        return self.R({m: c for m, c in p.items() if sum(m) <= D})

    def mul(self, a, b):
        return self.truncate(a * b)

    def constant_part(self, p):
        return p.coeff(1) if p else self.base.zero

    def inverse(self, p):
        """Inverse of c₀ + n with n nilpotent; c₀ must be nonzero."""
        c0 = self.base.convert(p.coeff(1)) if p else self.base.zero
        if not c0:
            raise SingularInputError(f"leading coefficient {self.to_expr(p)} is not invertible")
        inv0 = self.R.ground_new(1 / c0)
        n = p - self.R.ground_new(c0)
        if not n:
            return inv0
        out, term = self.one, self.one
        u = self.mul(-n, inv0)
        for _ in range(self.nil_order):
            term = self.mul(term, u)
            if not term:
                break
            out = out + term
        return self.mul(out, inv0)

    def to_expr(self, p):
        return p.as_expr() if p else sympy.Integer(0)


# ---------------------------------------------------------------------------
# series

@dataclass(frozen=True)
class LaurentSeries:
    ring: CoeffRing
    regime: str
    coeffs: dict = field(hash=False)  # w-exponent -> ring element
    prec: Optional[int] = None
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise InputError(f"regime must be local or global, got {self.regime!r}")

    # constructors
    @classmethod
    def constant(cls, ring: CoeffRing, c, regime: str, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        c = ring.convert(c) if not getattr(c, "ring", None) == ring.R else c
        return cls(ring, regime, {0: c} if c else {}, None, order)

    @classmethod
    def z(cls, ring: CoeffRing, regime: str, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        return cls(ring, regime, {1 if regime == "local" else -1: ring.one}, None, order)

    @classmethod
    def linear(cls, ring: CoeffRing, nz: int, c, regime: str, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        """The root n_z·z + c."""
        return cls.z(ring, regime, order).scale(ring.convert(nz)) + cls.constant(ring, c, regime, order)

    def _new(self, coeffs, prec):
        if prec is not None:
            coeffs = {k: v for k, v in coeffs.items() if k < prec}
        return LaurentSeries(self.ring, self.regime, {k: v for k, v in coeffs.items() if v}, prec, self.order)

    def _check(self, other: "LaurentSeries"):
        if other.ring != self.ring or other.regime != self.regime:
            raise InputError("series from different rings or regimes")

    @property
    def valuation(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, self.ring.zero) + v
        return self._new(out, _min_prec(self.prec, other.prec))

    def __neg__(self):
        return self._new({k: -v for k, v in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        return self._new({k: self.ring.mul(v, c) for k, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        va, vb = self.valuation, other.valuation
        precs = []
        if self.prec is not None:
            precs.append(self.prec + (vb if vb is not None else other.prec or 0))
        if other.prec is not None:
            precs.append(other.prec + (va if va is not None else self.prec or 0))
        prec = min(precs) if precs else None
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if prec is not None and i + j >= prec:
                    continue
                out[i + j] = out.get(i + j, self.ring.zero) + self.ring.mul(a, b)
        return self._new(out, prec)

    def inverse(self) -> "LaurentSeries":
        v = self.valuation
        if v is None:
            raise SingularInputError("cannot invert the zero series")
        R = self.ring
        c_inv = R.inverse(self.coeffs[v])
        # self = c·w^v·(1 + g)
        g = {k - v: R.mul(c, c_inv) for k, c in self.coeffs.items() if k != v}
        target = self.order + 1 + v  # exponent bound for the unit part
        if self.prec is not None:
            target = min(target, self.prec - v)
        b = [R.one]
        for n in range(1, max(target, 1)):
            acc = R.zero
            for k in range(1, n + 1):
                gk = g.get(k)
                if gk:
                    acc = acc - R.mul(gk, b[n - k])
            b.append(acc)
        out = {n - v: R.mul(bn, c_inv) for n, bn in enumerate(b) if n < target}
        return self._new(out, target - v)

    def __pow__(self, k: int) -> "LaurentSeries":
        base = self if k >= 0 else self.inverse()
        out = LaurentSeries.constant(self.ring, 1, self.regime, self.order)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __truediv__(self, other):
        return self * other.inverse()

    def truncated(self, order: Optional[int] = None) -> "LaurentSeries":
        n = self.order if order is None else order
        cap = n + 1 if self.prec is None else min(self.prec, n + 1)
        return self._new(self.coeffs, cap)

    def w_to_z(self, k: int) -> int:
        return k if self.regime == "local" else -k

    def z_coeff(self, e: int):
        k = self.w_to_z(e)
        if self.prec is not None and k >= self.prec:
            raise InputError(f"coefficient of z^{e} is beyond the truncation order")
        return self.coeffs.get(k, self.ring.zero)

    def z_terms(self) -> dict:
        return {self.w_to_z(k): v for k, v in self.coeffs.items()}

    def residue(self):
        return self.z_coeff(-1)

    def agrees(self, other: "LaurentSeries", order: Optional[int] = None) -> bool:
        """Equality of all coefficients known for both, capped at w^order."""
        self._check(other)
        n = min(self.order, other.order) if order is None else order
        cap = _min_prec(_min_prec(self.prec, other.prec), n + 1)
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.ring.zero
        return all(self.coeffs.get(k, z) == other.coeffs.get(k, z) for k in keys if k < cap)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# explicit expansion of (λ+z)^{-k}

def expand_power(ring: CoeffRing, lam, k: int, regime: str, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """(λ+z)^{-k} computed by series inversion."""
    if k < 1:
        raise InputError("k must be positive")
    return LaurentSeries.linear(ring, 1, lam, regime, order) ** (-k)


def explicit_expansion(ring: CoeffRing, lam, k: int, regime: str, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Closed form: λ^{-k} Σ C(k+i-1,k-1)(-z/λ)^i locally, the z↔λ mirror globally."""
    lam_el = ring.convert(lam)
    lam_inv = ring.inverse(lam_el)
    out = {}
    if regime == "local":
        for i in range(order + 1):
            c = ring.convert((-1) ** i * comb(k + i - 1, k - 1))
            out[i] = ring.mul(c, _rpow(ring, lam_inv, k + i))
        prec = order + 1
    else:
        for i in range(order - k + 1):
            c = ring.convert((-1) ** i * comb(k + i - 1, k - 1))
            out[k + i] = ring.mul(c, _rpow(ring, lam_el, i))
        prec = max(order + 1, k)
    return LaurentSeries(ring, regime, {a: b for a, b in out.items() if b}, prec, order)


def _rpow(ring: CoeffRing, x, n: int):
    out = ring.one
    for _ in range(n):
        out = ring.mul(out, x)
    return out


# ---------------------------------------------------------------------------
# equivariant K-theory classes

@dataclass(frozen=True)
class WeightVector:
    nz: int = 0
    lams: tuple = ()

    def __neg__(self):
        return WeightVector(-self.nz, tuple(-n for n in self.lams))

    def is_zero(self) -> bool:
        return self.nz == 0 and not any(self.lams)

    def lex_sign(self) -> int:
        for n in (self.nz,) + self.lams:
            if n:
                return 1 if n > 0 else -1
        return 0


@dataclass(frozen=True)
class KTerm:
    """sign · (e^{weight} ⊗ bundle with the given Chern roots)."""

    weight: WeightVector
    roots: tuple  # strings: integers, rationals or nilpotent symbols
    sign: int = 1

    @property
    def rank(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class EqKClass:
    terms: tuple = ()

    @classmethod
    def line(cls, nz: int = 0, lams: tuple = (), root="0", sign: int = 1) -> "EqKClass":
        return cls((KTerm(WeightVector(nz, tuple(lams)), (str(root),), sign),))

    @classmethod
    def bundle(cls, roots, nz: int = 0, lams: tuple = (), sign: int = 1) -> "EqKClass":
        return cls((KTerm(WeightVector(nz, tuple(lams)), tuple(str(r) for r in roots), sign),))

    def __add__(self, other: "EqKClass") -> "EqKClass":
        return EqKClass(self.terms + other.terms)

    def __neg__(self):
        return EqKClass(tuple(KTerm(t.weight, t.roots, -t.sign) for t in self.terms))

    @property
    def rank(self) -> int:
        return sum(t.sign * t.rank for t in self.terms)

    def dual(self) -> "EqKClass":
        return EqKClass(tuple(KTerm(-t.weight, tuple(_neg_root(r) for r in t.roots), t.sign) for t in self.terms))

    def twist(self, nz: int) -> "EqKClass":
        """Tensor with t^{nz}."""
        return EqKClass(tuple(KTerm(WeightVector(t.weight.nz + nz, t.weight.lams), t.roots, t.sign)
                              for t in self.terms))

    def symbols(self) -> tuple[set, int]:
        nils = set()
        nlam = 0
        for t in self.terms:
            nlam = max(nlam, len(t.weight.lams))
            for r in t.roots:
                nils |= {s.name for s in sympy.sympify(r).free_symbols}
        return nils, nlam


def _neg_root(r: str) -> str:
    return str(-sympy.sympify(r))


def lam_names(k: int) -> tuple:
    return tuple(f"l{i}" for i in range(1, k + 1))


def ring_for(*classes: EqKClass, lams: Iterable[str] = (), nils: Iterable[str] = (),
             nil_order: int = DEFAULT_ORDER) -> CoeffRing:
    all_nils, nlam = set(nils), 0
    for K in classes:
        n, k = K.symbols()
        all_nils |= n
        nlam = max(nlam, k)
    lam_set = list(lams)
    for name in lam_names(nlam):
        if name not in lam_set:
            lam_set.append(name)
    return CoeffRing(tuple(lam_set), tuple(sorted(all_nils - set(lam_set))), nil_order)


def _lam_part(ring: CoeffRing, w: WeightVector):
    out = ring.zero
    for name, n in zip(lam_names(len(w.lams)), w.lams):
        if n:
            out = out + ring.convert(n) * ring.lam(name)
    return out


def euler_class(K: EqKClass, ring: CoeffRing, regime: str, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Π over Chern roots of (n_z z + λ-part + x)^{±1}."""
    out = LaurentSeries.constant(ring, 1, regime, order)
    for t in K.terms:
        lam = _lam_part(ring, t.weight)
        for r in t.roots:
            root = LaurentSeries.linear(ring, t.weight.nz, lam + ring.convert(r), regime, order)
            out = out * (root if t.sign > 0 else root.inverse())
    return out


def total_chern(K: EqKClass, ring: CoeffRing, regime: str, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """z^{Rk} c_{z^{-1}}(K) = Π(z + x_i)^{±1} for a class with trivial z-weight."""
    if any(t.weight.nz for t in K.terms):
        raise InputError("total_chern expects classes without z-weight")
    return euler_class(K.twist(1), ring, regime, order)


def _check_no_zero_weight(N: EqKClass):
    for t in N.terms:
        if t.weight.is_zero():
            raise InvalidNormalBundle("normal bundle has a weight-zero summand")


def localize(fixed_class: str, N: EqKClass, ring: CoeffRing, regime: str = "global",
             order: int = DEFAULT_ORDER) -> tuple[str, LaurentSeries]:
    """[M^T]^vir / e(N≥) as (token, series)."""
    _check_no_zero_weight(N)
    return fixed_class, euler_class(N, ring, regime, order).inverse()


def positive_part(N: EqKClass) -> EqKClass:
    """Terms whose weight is positive in the lexicographic order on (z, λ₁, λ₂, …)."""
    _check_no_zero_weight(N)
    return EqKClass(tuple(t for t in N.terms if t.weight.lex_sign() > 0))


def localize_general(fixed_class: str, N: EqKClass, ring: CoeffRing, regime: str = "local",
                     order: int = DEFAULT_ORDER) -> tuple[str, LaurentSeries]:
    return localize(fixed_class, positive_part(N), ring, regime, order)


# ---------------------------------------------------------------------------
# identities

def sqrt_euler_sides(t_ge: EqKClass, t_le: EqKClass, e_ge: EqKClass, order: int = 8,
                     regime: str = "global") -> tuple[LaurentSeries, LaurentSeries]:
    """(-1)^{Rk T≤} e(T^m)/√e(E^m) against the Chern-series product.

    T^m = t·T≥ ⊕ t^{-1}·T≤ and √e(E^m) = e(t·E≥) for the orientation o_{E≥}.
    """
    ring = ring_for(t_ge, t_le, e_ge, nil_order=order)
    e_tm = euler_class(t_ge.twist(1), ring, regime, order) * euler_class(t_le.twist(-1), ring, regime, order)
    lhs = e_tm / euler_class(e_ge.twist(1), ring, regime, order)
    if t_le.rank % 2:
        lhs = -lhs
    rhs = (total_chern(t_ge, ring, regime, order) * total_chern(t_le.dual(), ring, regime, order)
           / total_chern(e_ge, ring, regime, order))
    return lhs, rhs


def sqrt_euler_check(t_ge: EqKClass, t_le: EqKClass, e_ge: EqKClass, order: int = 8,
                     regime: str = "global") -> bool:
    lhs, rhs = sqrt_euler_sides(t_ge, t_le, e_ge, order, regime)
    return lhs.agrees(rhs, order)


def global_residue(theta: EqKClass, order: int = DEFAULT_ORDER):
    ring = ring_for(theta, nil_order=order)
    return total_chern(theta, ring, "global", order).inverse().residue(), ring


def global_residue_check(theta: EqKClass, order: int = DEFAULT_ORDER) -> bool:
    res, _ = global_residue(theta, order)
    return not res


def random_roots(rng: random.Random, rank: int, lo: int = -5, hi: int = 5) -> EqKClass:
    return EqKClass.bundle([rng.randint(lo, hi) for _ in range(rank)]) if rank else EqKClass()


# ---------------------------------------------------------------------------
# expressions and emission

def parse_expr(text: str, nils: Iterable[str] = ()):
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"z": sympy.Symbol("z")})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise InputError(f"cannot parse expression {text!r}: {exc}") from None
    nils = tuple(nils)
    lams = sorted(s.name for s in expr.free_symbols if s.name != "z" and s.name not in nils)
    return expr, lams


def series_from_expr(expr, ring: CoeffRing, regime: str, order: int = DEFAULT_ORDER) -> LaurentSeries:
    z = sympy.Symbol("z")
    if z not in expr.free_symbols:
        return LaurentSeries.constant(ring, expr, regime, order)
    if expr == z:
        return LaurentSeries.z(ring, regime, order)
    if expr.is_Add:
        out = LaurentSeries.constant(ring, 0, regime, order)
        for a in expr.args:
            out = out + series_from_expr(a, ring, regime, order)
        return out
    if expr.is_Mul:
        out = LaurentSeries.constant(ring, 1, regime, order)
        for a in expr.args:
            out = out * series_from_expr(a, ring, regime, order)
        return out
    if expr.is_Pow and expr.exp.is_Integer:
        return series_from_expr(expr.base, ring, regime, order) ** int(expr.exp)
    raise InputError(f"unsupported expression {expr} (only sums, products and integer powers)")


def _monomials(ring: CoeffRing, c):
    """Split a coefficient into (λ-exponents, nil-exponents, rational) when its denominator is a monomial."""
    out = []
    for nil_m, fc in c.items():
        fc = ring.base.convert(fc)
        if ring.lams:
            num, den = fc.numer, fc.denom
            dterms = den.terms()
            if len(dterms) != 1:
                return None
            dm, dc = dterms[0]
            for m, a in num.terms():
                lam_m = tuple(x - y for x, y in zip(m, dm))
                out.append((lam_m, nil_m, Fraction(int(a.numerator), int(a.denominator)) /
                            Fraction(int(dc.numerator), int(dc.denominator))))
        else:
            out.append(((), nil_m, Fraction(int(fc.numerator), int(fc.denominator))))
    return out


def _mono_str(names, exps) -> list:
    return [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]


def emit_series(s: LaurentSeries, order: Optional[int] = None) -> list[str]:
    """Monomial lines ``coeff * z^e * l1^a ...`` sorted by (z-exponent, λ-multidegree)."""
    s = s.truncated(order)
    R = s.ring
    nil_names = R.nils if R.nils else ()
    rows = []
    for ze, c in s.z_terms().items():
        monos = _monomials(R, c)
        if monos is None:
            rows.append(((ze, (), ()), f"({sympy.simplify(R.to_expr(c))}) * z^{ze}"))
            continue
        for lam_m, nil_m, q in monos:
            if not q:
                continue
            nil_m = nil_m if R.nils else ()
            parts = [f"z^{ze}"] + _mono_str(R.lams, lam_m) + _mono_str(nil_names, nil_m)
            rows.append(((ze, lam_m, nil_m), f"{fmt_q(q)} * " + " * ".join(parts)))
    rows.sort(key=lambda r: r[0])
    return [r[1] for r in rows]


__all__ = [
    "CoeffRing", "LaurentSeries", "WeightVector", "KTerm", "EqKClass", "SingularInputError",
    "InvalidNormalBundle", "expand_power", "explicit_expansion", "euler_class", "total_chern",
    "localize", "localize_general", "positive_part", "sqrt_euler_check", "sqrt_euler_sides",
    "global_residue", "global_residue_check", "parse_expr", "series_from_expr", "emit_series",
    "ring_for", "DEFAULT_ORDER",
]
