"""Representations of completed quivers, their deformation complexes, Euler forms,
stability phases and the torus-fixed points of the framed ℂ⁴ quiver."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .linalg import identity, is_zero, matmul, rank, zeros
from .numbers import InputError, ResourceError
from .quiver import CY4Quiver, Path

INF = float("inf")


# ---------------------------------------------------------------------------
# Euler forms

def euler_form(Q: CY4Quiver, d: Mapping[str, int], e: Mapping[str, int]) -> int:
    """χ(d,e) = Σ_v d_v e_v + Σ_f (-1)^{1+|f|} d_{t(f)} e_{h(f)} over completed edges."""
    for v in list(d) + list(e):
        if v not in Q.full.vertices:
            raise InputError(f"dimension vector mentions unknown vertex {v!r}")
    total = sum(d.get(v, 0) * e.get(v, 0) for v in Q.full.vertices)
    for f in Q.full.edges:
        sign = 1 if (1 + f.degree) % 2 == 0 else -1
        total += sign * d.get(f.tail, 0) * e.get(f.head, 0)
    return total


def chi_k(pair1, pair2, chi: Callable, chi_frame: Callable) -> int:
    """χ_k((d,α),(e,β)) = χ(α,β) − dχ(β(k)) − eχ(α(k)) + 2de."""
    (d, a), (e, b) = pair1, pair2
    return chi(a, b) - d * chi_frame(b) - e * chi_frame(a) + 2 * d * e


# ---------------------------------------------------------------------------
# representations and the deformation complex

@dataclass
class Representation:
    dims: dict
    matrices: dict

    def mat(self, Q: CY4Quiver, name: str) -> list:
        f = Q.full.edge(name)
        rows, cols = self.dims.get(f.head, 0), self.dims.get(f.tail, 0)
        m = self.matrices.get(name)
        if m is None:
            return zeros(rows, cols)
        return m

    def validate(self, Q: CY4Quiver) -> None:
        for v in self.dims:
            if v not in Q.full.vertices:
                raise InputError(f"dims.{v}: unknown vertex")
        for name, m in self.matrices.items():
            f = Q.full.edge(name)
            if f.degree != 0:
                raise InputError(f"matrices.{name}: edge has degree {f.degree}")
            rows, cols = self.dims.get(f.head, 0), self.dims.get(f.tail, 0)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise InputError(f"matrices.{name}: expected shape {rows}x{cols}")


def path_matrix(Q: CY4Quiver, M: Representation, edges: tuple, start: str) -> list:
    """Matrix of a degree-0 path (application order) acting from vertex start."""
    out = identity(M.dims.get(start, 0))
    for e in edges:
        out = matmul(M.mat(Q, e), out)
    return out


def relation_defects(Q: CY4Quiver, M: Representation) -> dict:
    """Nonzero values of d(f) for degree -1 generators; empty iff M is a dg-representation."""
    bad = {}
    for f in Q.full.edges:
        if f.degree != -1:
            continue
        acc = zeros(M.dims.get(f.head, 0), M.dims.get(f.tail, 0))
        for p, c in Q.d(f.name).terms.items():
            pm = path_matrix(Q, M, p.edges, f.tail)
            for i, row in enumerate(pm):
                for j, x in enumerate(row):
                    acc[i][j] += c * x
        if not is_zero(acc):
            bad[f.name] = acc
    return bad


@dataclass
class ExtComplex:
    blocks: list  # blocks[i] = list of (label, rows, cols)
    deltas: list  # deltas[i] : C^i -> C^{i+1}, as dense matrices (rows = dim C^{i+1})

    def dims(self) -> list:
        return [sum(r * c for _, r, c in b) for b in self.blocks]

    def ranks(self) -> list:
        return [rank(d) for d in self.deltas]

    def ext_dims(self) -> list:
        dims, rk = self.dims(), self.ranks()
        return [dims[i] - (rk[i] if i < 4 else 0) - (rk[i - 1] if i > 0 else 0) for i in range(5)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.dims()))

    def square_zero(self) -> bool:
        for a, b in zip(self.deltas, self.deltas[1:]):
            if a and b and not is_zero(matmul(b, a)):
                return False
        return True


def _offsets(blocks):
    off, pos = {}, 0
    for label, r, c in blocks:
        off[label] = pos
        pos += r * c
    return off, pos


def ext_complex(Q: CY4Quiver, M: Representation) -> ExtComplex:
    """C⁰ = ⊕ End, Cⁱ = ⊕_{|f|=1-i} Hom(t(f), h(f)); δ from d(f) linearized at M."""
    M.validate(Q)
    dim = lambda v: M.dims.get(v, 0)
    blocks = [[(v, dim(v), dim(v)) for v in Q.full.vertices]]
    for i in range(1, 5):
        blocks.append([(f.name, dim(f.head), dim(f.tail)) for f in Q.full.edges if f.degree == 1 - i])
    offs = [_offsets(b) for b in blocks]
    deltas = []
    # δ⁰ = ad(m)
    src_off, src_n = offs[0]
    tgt_off, tgt_n = offs[1]
    D = zeros(tgt_n, src_n)
    for f in Q.full.edges:
        if f.degree != 0:
            continue
        m = M.mat(Q, f.name)
        h, t = f.head, f.tail
        rows, cols = dim(h), dim(t)
        base = tgt_off[f.name]
        for i in range(rows):
            for j in range(cols):
                r = base + i * cols + j
                # (ξ_h m)_{ij} = Σ_k ξ_h[i,k] m[k,j]
                for k in range(rows):
                    if m[k][j]:
                        D[r][src_off[h] + i * rows + k] += m[k][j]
                # -(m ξ_t)_{ij} = -Σ_k m[i,k] ξ_t[k,j]
                for k in range(cols):
                    if m[i][k]:
                        D[r][src_off[t] + k * cols + j] -= m[i][k]
    deltas.append(D)
    for i in range(1, 4):
        src_off, src_n = offs[i]
        tgt_off, tgt_n = offs[i + 1]
        D = zeros(tgt_n, src_n)
        for f in Q.full.edges:
            if f.degree != -i:
                continue
            for p, c in Q.d(f.name).terms.items():
                _linearize(Q, M, f, p, c, D, tgt_off[f.name], src_off, 1 - i)
        deltas.append(D)
    return ExtComplex(blocks, deltas)


def _linearize(Q, M, f, p: Path, c, D, row_base, src_off, gdeg):
    """Add the contribution of c·p in d(f) to δ: M_g ↦ m^q M_g m^r for p = q∘g∘r."""
    full = Q.full
    edges = p.edges
    for pos, g in enumerate(edges):
        if full.deg(g) != gdeg:
            continue
        rest = edges[:pos] + edges[pos + 1:]
        if any(full.deg(e) != 0 for e in rest):
            continue
        ge = full.edge(g)
        right = path_matrix(Q, M, edges[:pos], f.tail)  # d_{t(g)} x d_{t(f)}
        left = path_matrix(Q, M, edges[pos + 1:], ge.head)  # d_{h(f)} x d_{h(g)}
        gr, gc = M.dims.get(ge.head, 0), M.dims.get(ge.tail, 0)
        fr, fc = M.dims.get(f.head, 0), M.dims.get(f.tail, 0)
        for a in range(gr):
            for b in range(gc):
                col = src_off[g] + a * gc + b
                for i in range(fr):
                    la = left[i][a]
                    if not la:
                        continue
                    for j in range(fc):
                        rb = right[b][j]
                        if rb:
                            D[row_base + i * fc + j][col] += c * la * rb


def random_representation(Q: CY4Quiver, dims: Mapping[str, int], rng: random.Random,
                          density: float = 0.5, values=(-2, -1, 1, 2)) -> Representation:
    """Random sparse matrices, then zero edges until every relation d(f)=0 holds."""
    mats = {}
    for f in Q.full.edges:
        if f.degree == 0:
            r, c = dims.get(f.head, 0), dims.get(f.tail, 0)
            mats[f.name] = [[Fraction(rng.choice(values)) if rng.random() < density else Fraction(0)
                             for _ in range(c)] for _ in range(r)]
    M = Representation(dict(dims), mats)
    while True:
        bad = relation_defects(Q, M)
        if not bad:
            return M
        name = sorted(bad)[0]
        involved = sorted({e for p in Q.d(name).terms for e in p.edges
                           if not is_zero(M.mat(Q, e))})
        victim = rng.choice(involved)
        f = Q.full.edge(victim)
        M.matrices[victim] = zeros(dims.get(f.head, 0), dims.get(f.tail, 0))


# ---------------------------------------------------------------------------
# stability

@dataclass
class StabilityData:
    lam: Callable  # class -> Fraction
    mu: tuple  # rationals, one per framing vertex
    rk: Callable  # class -> positive int

    def phase(self, dvec, alpha, alpha_is_zero: bool):
        return phase(self, dvec, alpha, alpha_is_zero)


def check_mu_ordering(chain: list, mu0) -> bool:
    """1 > μ₁ > … > μ_{r−1} > 0 > μ₀ > −1 as strict inequalities."""
    seq = [Fraction(1)] + [Fraction(x) for x in chain] + [Fraction(0)]
    ok = all(a > b for a, b in zip(seq, seq[1:]))
    return ok and Fraction(0) > Fraction(mu0) > Fraction(-1)


def phase(s: StabilityData, dvec, alpha, alpha_is_zero: bool):
    if alpha_is_zero:
        return INF
    r = s.rk(alpha)
    if r <= 0:
        raise InputError("rk must be positive on nonzero classes")
    num = Fraction(s.lam(alpha)) + sum(Fraction(x) * Fraction(m) for x, m in zip(dvec, s.mu))
    return num / r


def c4_phase(t, d_inf: int, d0: int):
    """μ_t family on the framed ℂ⁴ quiver: μ̄_t(d_∞, d₀) = d_∞·t, rank d_∞ + d₀."""
    stab = StabilityData(lam=lambda a: 0, mu=(Fraction(t),), rk=lambda a: d_inf + d0)
    return phase(stab, (d_inf,), d0, d0 == 0)


def is_cyclic(xs: list, v: list) -> bool:
    """True iff the span of all words in X₁..X₄ applied to v is the whole space."""
    n = len(v)
    if n == 0:
        return True
    span: list = []
    frontier = [[Fraction(x) for x in v]]
    while frontier:
        new = []
        for w in frontier:
            if rank(span + [w]) > len(span):
                span.append(w)
                new.append(w)
        if len(span) == n:
            return True
        frontier = [[sum(X[i][k] * w[k] for k in range(n)) for i in range(n)] for w in new for X in xs]
    return len(span) == n


# ---------------------------------------------------------------------------
# monomial ideals of finite colength in four variables

def max_n() -> int:
    raw = os.environ.get("CY4_MAX_N", "8")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"CY4_MAX_N: not an integer ({raw!r})") from None


def _addable(ideal: frozenset) -> list:
    out = set()
    for b in ideal | {None}:
        cands = [(0, 0, 0, 0)] if b is None else [tuple(b[j] + (j == i) for j in range(4)) for i in range(4)]
        for c in cands:
            if c in ideal:
                continue
            if all(c[i] == 0 or tuple(c[j] - (j == i) for j in range(4)) in ideal for i in range(4)):
                out.add(c)
    return sorted(out)


def _removable(ideal: frozenset) -> list:
    return [b for b in ideal
            if all(tuple(b[j] + (j == i) for j in range(4)) not in ideal for i in range(4))]


def _order_key(b):
    return (sum(b), b)


def staircases(n: int) -> list:
    """All staircases (order ideals of ℕ⁴) with n boxes.

    Depth-first with canonical parents: the parent of I drops its largest
    removable box, so each staircase is produced exactly once.
    """
    if n > max_n():
        raise ResourceError(f"n = {n} exceeds the fixed-point bound CY4_MAX_N = {max_n()}")
    out = []

    def grow(ideal: frozenset):
        if len(ideal) == n:
            out.append(ideal)
            return
        for b in _addable(ideal):
            child = ideal | {b}
            if max(_removable(child), key=_order_key) == b:
                grow(child)

    if n == 0:
        return [frozenset()]
    grow(frozenset())
    return sorted(out, key=lambda s: sorted(map(_order_key, s)))


def quotient_basis(ideal) -> list:
    return sorted(ideal, key=_order_key)


def fixed_point_representation(ideal, inf: str = "inf", vertex: str = "0", frame_edge: str = "t1_0",
                               loops=("x1", "x2", "x3", "x4")) -> Representation:
    """Multiplication by x₁..x₄ on ℂ[x]/I with v = class of 1, for the JS-framed ℂ⁴ quiver."""
    basis = quotient_basis(ideal)
    idx = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    mats = {}
    for k, name in enumerate(loops):
        m = zeros(n, n)
        for b, j in idx.items():
            c = tuple(b[i] + (i == k) for i in range(4))
            if c in idx:
                m[idx[c]][j] = Fraction(1)
        mats[name] = m
    v = zeros(n, 1)
    if n:
        v[0][0] = Fraction(1)
    mats[frame_edge] = v
    return Representation({inf: 1, vertex: n}, mats)


@dataclass
class FixedPoint:
    ideal: frozenset
    rep: Representation = field(repr=False)


def monomial_fixed_points(n: int) -> list:
    if n < 0:
        raise InputError("n must be nonnegative")
    return [FixedPoint(s, fixed_point_representation(s)) for s in staircases(n)]
