"""A miniature intersection theory: projective bundles, the BG_m cap calculus
and the residue bookkeeping of fixed loci.

PolyClass values are sympy polynomials in c1..cr (Chern classes of V), h (the
hyperplane class, with O(-1) ⊂ p^*V so that Π(h + a_i) = 0) and τ.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Optional

import sympy

from .numbers import InputError
from .series import CoeffRing, EqKClass, KTerm, LaurentSeries, WeightVector, euler_class

h, tau, z = sympy.symbols("h tau z")


def chern_symbols(r: int) -> tuple:
    return sympy.symbols(f"c1:{r + 1}") if r else ()


def segre(chern: Iterable, order: int) -> list:
    """s_0..s_order with s(V)·c(V) = 1."""
    c = list(chern)
    s = [sympy.Integer(1)]
    for j in range(1, order + 1):
        s.append(sympy.expand(-sum(c[i - 1] * s[j - i] for i in range(1, min(j, len(c)) + 1))))
    return s


@dataclass(frozen=True)
class ProjBundleModel:
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise InputError("projective bundle rank must be at least 1")

    @cached_property
    def c(self) -> tuple:
        return chern_symbols(self.r)

    @cached_property
    def relation(self):
        """h^r + Σ c_i h^{r-i}."""
        return sympy.Poly(h ** self.r + sum(ci * h ** (self.r - i) for i, ci in enumerate(self.c, 1)), h)

    def reduce(self, x):
        return sympy.Poly(sympy.expand(x), h).rem(self.relation).as_expr()

    def chern_twisted(self, k: int):
        """c_k(V ⊗ O(1)) = Σ_i C(r-i, k-i) c_i h^{k-i}."""
        cs = (sympy.Integer(1),) + self.c
        return sympy.expand(sum(comb(self.r - i, k - i) * cs[i] * h ** (k - i) for i in range(0, k + 1)))

    def euler_T_pi(self):
        """e(T_π) = c_{r-1}(V⊗O(1)) from 0 → O → V⊗O(1) → T_π → 0."""
        return self.chern_twisted(self.r - 1)


def proj_pushforward(M: ProjBundleModel, x):
    """Coefficient of h^{r-1} in the normal form."""
    red = sympy.Poly(M.reduce(x), h)
    return sympy.expand(red.coeff_monomial(h ** (M.r - 1)))


def substitute_roots(M: ProjBundleModel, expr, roots):
    """Evaluate a base class at integer Chern roots (c_i = e_i(roots))."""
    a = sympy.symbols(f"a1:{M.r + 1}")
    poly = sympy.Poly(sympy.prod([1 + ai for ai in a]), *a)
    e = [sympy.Integer(0)] * (M.r + 1)
    for mon, coeff in poly.terms():
        e[sum(mon)] += coeff * sympy.prod([ai ** m for ai, m in zip(a, mon)])
    vals = dict(zip(a, roots))
    return sympy.expand(expr).subs({M.c[i - 1]: e[i].subs(vals) for i in range(1, M.r + 1)})


# ---------------------------------------------------------------------------
# the BG_m cap calculus

@dataclass(frozen=True)
class PSeriesVector:
    """Σ_j p^j ⊗ coeff_j with p^j = [P^j]."""

    coeffs: tuple  # ((j, sympy expr), ...), sorted by j

    @classmethod
    def of(cls, d: dict) -> "PSeriesVector":
        for j in d:
            if j < 0:
                raise InputError("p-exponents must be nonnegative")
        return cls(tuple(sorted((j, sympy.expand(c)) for j, c in d.items() if sympy.expand(c) != 0)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def project(self, j: int = 0):
        return self.as_dict().get(j, sympy.Integer(0))


def ezT_vector(J: int) -> PSeriesVector:
    """Σ_{j ≤ J} p^j z^j."""
    return PSeriesVector.of({j: z ** j for j in range(J + 1)})


def cap_tau(P: PSeriesVector, f) -> PSeriesVector:
    """P ∩ f(τ) with p^i ∩ τ^n = p^{i-n} (zero when n > i)."""
    poly = sympy.Poly(sympy.expand(f), tau)
    out: dict = {}
    for (n,), fn in poly.terms():
        for i, c in P.coeffs:
            if n <= i:
                out[i - n] = out.get(i - n, 0) + c * fn
    return PSeriesVector.of(out)


def ezT_convolve(f, J: int) -> bool:
    """Σ p^j z^j ∩ f(τ) = Σ p^j z^j f(z) on every p^m with m + deg f ≤ J."""
    lhs = cap_tau(ezT_vector(J), f).as_dict()
    d = sympy.Poly(sympy.expand(f), tau).degree() if sympy.expand(f) != 0 else 0
    fz = sympy.expand(sympy.sympify(f).subs(tau, z))
    for m in range(0, J - d + 1):
        if sympy.expand(lhs.get(m, 0) - z ** m * fz) != 0:
            return False
    return True


def ezT_project(f) -> sympy.Expr:
    """p^0-component of (Σ p^j z^j) ∩ f(τ), i.e. f(z) for polynomial f."""
    d = sympy.Poly(sympy.expand(f), tau).degree() if sympy.expand(f) != 0 else 0
    return cap_tau(ezT_vector(max(d, 0)), f).project(0)


# ---------------------------------------------------------------------------
# bracket pushdown

@dataclass(frozen=True)
class PushdownReport:
    r: int
    a: int
    fiber_euler: sympy.Expr
    step2: bool
    residue: Fraction
    coefficient: Fraction

    @property
    def ok(self) -> bool:
        return (self.fiber_euler == self.r and self.step2 and self.residue == self.r
                and self.coefficient == (-1) ** (self.a * self.r) * self.r)


def bracket_pushdown(r: int, a: int = 0, order: Optional[int] = None) -> PushdownReport:
    """π_*([v, P] ∩ c_{χ-1}(T_π)) for χ = r, computed two ways.

    Geometry: p_*(e(T_π)) in the projective-bundle model. Series: with
    nilpotent roots x_i of the framing bundle, c_{χ-1}(roots x_i + τ) equals
    d/dτ Π(τ + x_i); capping with e^{zT} and projecting to p^0 turns it into
    P'(z), and [z^{-1}] P'(z)/P(z) is the coefficient of v.
    """
    if r < 1:
        raise InputError("rank must be positive")
    if a % 2:
        raise InputError("the degree a must be even")
    M = ProjBundleModel(r)
    fiber = proj_pushforward(M, M.euler_T_pi())
    xs = sympy.symbols(f"x1:{r + 1}")
    P = sympy.prod([tau + x for x in xs])
    e_rm1 = sum(sympy.prod(c) for c in _subsets([tau + x for x in xs], r - 1))
    step2 = sympy.expand(e_rm1 - sympy.diff(P, tau)) == 0
    numer = ezT_project(sympy.diff(P, tau))  # polynomial in z and x
    order = order or (r + 3)
    ring = CoeffRing((), tuple(str(x) for x in xs), nil_order=order)
    denom = euler_class(EqKClass((KTerm(WeightVector(1, ()), tuple(str(x) for x in xs), 1),)),
                        ring, "global", order)
    num_series = _poly_in_z(ring, numer, order)
    res = (num_series * denom.inverse()).residue()
    res_q = _as_rational(ring, res)
    return PushdownReport(r, a, fiber, step2, res_q, (-1) ** (a * r) * res_q)


def bracket_pushdown_check(r: int, a: int = 0) -> bool:
    return bracket_pushdown(r, a).ok


def _subsets(items, k):
    from itertools import combinations
    return combinations(items, k)


def _poly_in_z(ring: CoeffRing, expr, order: int) -> LaurentSeries:
    poly = sympy.Poly(sympy.expand(expr), z)
    out = LaurentSeries.constant(ring, 0, "global", order)
    zs = LaurentSeries.z(ring, "global", order)
    for (n,), c in poly.terms():
        out = out + (zs ** n).scale(ring.convert(c))
    return out


def _as_rational(ring: CoeffRing, c) -> Fraction:
    if not c:
        return Fraction(0)
    if any(any(m) for m in c.keys()):
        raise ValueError(f"coefficient {ring.to_expr(c)} is not a constant")
    q = c.coeff(1)
    return Fraction(int(q.numerator), int(q.denominator))


# ---------------------------------------------------------------------------
# fixed loci

@dataclass(frozen=True)
class ThetaLine:
    """A line of Θ with root x + s·τ and λ-weight lam (multiples of l1)."""

    root: str
    s: int = 0
    lam: int = 0


@dataclass(frozen=True)
class LocusReport:
    locus1: str
    locus2: str
    locus3: str
    bracket_coeff: sympy.Expr
    total: sympy.Expr

    def lines(self) -> list[str]:
        return [f"locus1: {self.locus1}", f"locus2: {self.locus2}", f"locus3: {self.locus3}",
                f"sum: {self.total}"]


def _ring_from(symbols: Iterable[str], lams: Iterable[str] = (), order: int = 8) -> CoeffRing:
    return CoeffRing(tuple(lams), tuple(sorted(set(symbols))), nil_order=order)


def locus_residue(token: str, normal_root: str, sign: int = 1, order: int = 8):
    """[z^{-1}]{sign·token/(z + root)} with the root nilpotent (global expansion)."""
    syms = {s.name for s in sympy.sympify(normal_root).free_symbols} | {token}
    ring = _ring_from(syms, order=order)
    denom = LaurentSeries.linear(ring, 1, normal_root, "global", order)
    res = denom.inverse().scale(ring.convert(sign) * ring.convert(token)).residue()
    return sympy.expand(ring.to_expr(res))


def theta_class(theta: Iterable[ThetaLine]) -> EqKClass:
    """Θ after the e^{zT} substitution τ → z: root x + s·τ becomes x + (1+s)z."""
    terms = []
    for t in theta:
        w = WeightVector(1 + t.s, (t.lam,) if t.lam else ())
        if w.is_zero():
            raise InputError(f"Θ line with root {t.root} has weight zero after τ → z (s = {t.s})")
        terms.append(KTerm(w, (t.root,), 1))
    return EqKClass(tuple(terms))


def locus3_coefficient(theta: Iterable[ThetaLine], eps: int = 1, order: int = 8):
    """ε·[z^{-1}] 1/e(Θ|_{τ=z}); the bracket is this times A1 ⊠ A2."""
    theta = tuple(theta)
    K = theta_class(theta)
    syms = set()
    for t in theta:
        syms |= {s.name for s in sympy.sympify(t.root).free_symbols}
    lams = ("l1",) if any(t.lam for t in theta) else ()
    ring = _ring_from(syms, lams, order)
    res = euler_class(K, ring, "global", order).inverse().residue()
    return sympy.simplify(eps * ring.to_expr(res))


def fixed_locus_residues(A: str = "A", B: str = "b", A2: str = "Ap", B2: str = "bp",
                         theta: Iterable[ThetaLine] = (ThetaLine("x"),), eps: int = 1,
                         A1_3: str = "A1", A2_3: str = "A2", order: int = 8) -> LocusReport:
    r1 = locus_residue(A, B, 1, order)
    r2 = locus_residue(A2, B2, -1, order)
    coeff = locus3_coefficient(theta, eps, order)
    r3 = f"{coeff} [{A1_3},{A2_3}]" if coeff != 0 else "0"
    total = sympy.expand(r1 + r2 + coeff * sympy.Symbol(f"[{A1_3},{A2_3}]"))
    return LocusReport(str(r1), str(r2), r3, coeff, total)


def self_dual_toy(order: int = 8) -> LocusReport:
    """A' = A, B' = B and Θ = L_{λ,x} ⊕ L_{-λ,-x}: the three loci cancel."""
    theta = (ThetaLine("x", 0, 1), ThetaLine("-x", 0, -1))
    return fixed_locus_residues("A", "b", "A", "b", theta, 1, order=order)
