"""Graded determinant lines with explicit bases.

Every line here has a canonical generator: ``v1∧…∧vr`` for ``det V`` (basis
order as given), the functional sending the generator to 1 for a dual line, and
tensor products of generators for tensor lines. An isomorphism between two
such lines is therefore one scalar in Q(i), and composites are products.
The scalars of ε, d_V and det(f) are computed from the bases (permutation
signs, determinants); nothing below hard-codes a sign formula.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import sympy

from .numbers import GaussQ, I, InputError


class CompositionError(InputError):
    pass


# ---------------------------------------------------------------------------
# spaces and lines

def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("^") else label + "^"


@dataclass(frozen=True)
class Space:
    name: str
    basis: tuple

    @classmethod
    def standard(cls, name: str, r: int) -> "Space":
        return cls(name, tuple(f"{name}{i}" for i in range(1, r + 1)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def dual(self) -> "Space":
        name = self.name[:-1] if self.name.endswith("*") else self.name + "*"
        return Space(name, tuple(_dual_label(b) for b in self.basis))

    def __add__(self, other: "Space") -> "Space":
        return Space(f"({self.name}+{other.name})", self.basis + other.basis)


@dataclass(frozen=True)
class Det:
    space: Space


@dataclass(frozen=True)
class Unit:
    rank: int


@dataclass(frozen=True)
class Dual:
    line: "Line"


@dataclass(frozen=True)
class Tensor:
    left: "Line"
    right: "Line"


Line = Union[Det, Unit, Dual, Tensor]


def degree(L: Line) -> int:
    if isinstance(L, Det):
        return L.space.rank
    if isinstance(L, Unit):
        return L.rank
    if isinstance(L, Dual):
        return degree(L.line)
    return degree(L.left) + degree(L.right)


def show(L: Line) -> str:
    if isinstance(L, Det):
        return f"det({L.space.name})"
    if isinstance(L, Unit):
        return f"C_{L.rank}"
    if isinstance(L, Dual):
        return f"({show(L.line)})^*"
    return f"{show(L.left)} {show(L.right)}"


@dataclass(frozen=True)
class LineIso:
    source: Line
    target: Line
    scalar: GaussQ
    label: str = ""

    def __post_init__(self):
        if self.scalar == 0:
            raise ValueError("isomorphism scalar must be nonzero")
        if degree(self.source) != degree(self.target):
            raise CompositionError(f"{self.label}: degree mismatch")

    def then(self, g: "LineIso") -> "LineIso":
        """g∘self."""
        if g.source != self.target:
            raise CompositionError(f"cannot compose {g.label} after {self.label}: "
                                   f"{show(self.target)} vs {show(g.source)}")
        return LineIso(self.source, g.target, self.scalar * g.scalar, f"{g.label}∘{self.label}")

    def inverse(self) -> "LineIso":
        return LineIso(self.target, self.source, self.scalar.inverse(), f"({self.label})^-1")

    def scaled(self, c) -> "LineIso":
        return LineIso(self.source, self.target, self.scalar * GaussQ.of(c), self.label)


def evaluate(chain: Sequence[LineIso]) -> GaussQ:
    """Scalar of the composite; chain[0] is applied first."""
    if not chain:
        return GaussQ(Fraction(1))
    acc = chain[0]
    for g in chain[1:]:
        acc = acc.then(g)
    return acc.scalar


def identity(L: Line) -> LineIso:
    return LineIso(L, L, GaussQ(Fraction(1)), "id")


def _sign(n: int) -> GaussQ:
    return GaussQ(Fraction(-1 if n % 2 else 1))


def perm_sign(source: Sequence, target: Sequence) -> int:
    """Sign of the permutation rearranging source into target."""
    pos = {x: i for i, x in enumerate(target)}
    if len(pos) != len(source) or set(source) != set(pos):
        raise CompositionError("basis mismatch")
    seq = [pos[x] for x in source]
    s = 1
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


# ---------------------------------------------------------------------------
# generating isomorphisms

def sigma(L1: Line, L2: Line) -> LineIso:
    """u⊗v ↦ (-1)^{|L1||L2|} v⊗u."""
    return LineIso(Tensor(L1, L2), Tensor(L2, L1), _sign(degree(L1) * degree(L2)), "σ")


def pairing(L: Line) -> LineIso:
    """p_L: u⊗α ↦ α(u); on generators this is 1."""
    return LineIso(Tensor(L, Dual(L)), Unit(2 * degree(L)), GaussQ(Fraction(1)), "p")


def diamond(L: Line) -> LineIso:
    """◊_L: (L*)* → L, the evaluation functional goes to the generator."""
    return LineIso(Dual(Dual(L)), L, GaussQ(Fraction(1)), "◊")


def delta(L1: Line, L2: Line) -> LineIso:
    """δ: (L1 L2)* → L2* L1*, inverse sends β⊗α to u⊗v ↦ α(u)β(v)."""
    return LineIso(Dual(Tensor(L1, L2)), Tensor(Dual(L2), Dual(L1)), GaussQ(Fraction(1)), "δ")


def dual_iso(f: LineIso) -> LineIso:
    """f*: the transpose, fixed by p_{L2}∘(f⊗(f*)^{-1})∘p_{L1}^{-1} = id."""
    return LineIso(Dual(f.target), Dual(f.source), f.scalar, f"({f.label})^*")


def tensor(f: LineIso, g: LineIso) -> LineIso:
    return LineIso(Tensor(f.source, g.source), Tensor(f.target, g.target), f.scalar * g.scalar,
                   f"{f.label}⊗{g.label}")


def unit_mult(a: int, b: int) -> LineIso:
    return LineIso(Tensor(Unit(a), Unit(b)), Unit(a + b), GaussQ(Fraction(1)), "mult")


def det_of(space: Space, target: Space, matrix) -> LineIso:
    """det(f) for f given by its matrix (columns = images of source basis vectors)."""
    m = sympy.Matrix(matrix)
    if m.shape != (target.rank, space.rank):
        raise CompositionError("matrix shape does not match the spaces")
    return LineIso(Det(space), Det(target), GaussQ(Fraction(str(m.det()))), "det")


def d_map(V: Space) -> LineIso:
    """d_V: det(V*) → det(V)*, with d_V(α₁∧…∧α_r)(v_r∧…∧v₁) = det[α_j(v_i)]."""
    Vd = V.dual()
    gram = sympy.Matrix(V.rank, V.rank, lambda i, j: 1 if _dual_label(Vd.basis[j]) == V.basis[i] else 0)
    # the canonical generator v₁∧…∧v_r is the reversed wedge up to this sign
    rev = perm_sign(tuple(reversed(V.basis)), V.basis)
    return LineIso(Det(Vd), Dual(Det(V)), GaussQ(Fraction(rev * int(gram.det()))), "d")


def eps(W: Space, U: Space, V: Space) -> LineIso:
    """ε_{U,V}: det W → det U det V for W split with basis a shuffle of U and V."""
    s = perm_sign(W.basis, U.basis + V.basis)
    return LineIso(Det(W), Tensor(Det(U), Det(V)), GaussQ(Fraction(s)), "ε")


def unit_self_dual(r: int) -> LineIso:
    """C_r* → C_r through d^{-1} and det(can) for the standard space."""
    V = Space.standard("e", r)
    can = det_of(V.dual(), V, sympy.eye(r))
    chain = d_map(V).inverse().then(can)
    return LineIso(Dual(Unit(r)), Unit(r), chain.scalar, "can")


# ---------------------------------------------------------------------------
# certified identities

def verify_pentagon(rk_u: int, rk_v: int) -> tuple[bool, GaussQ, GaussQ]:
    """Both ways around det(V*)det(U*) → det(U⊕V)^*."""
    U, V = Space.standard("u", rk_u), Space.standard("v", rk_v)
    W = U + V
    left = evaluate([
        tensor(d_map(V), d_map(U)),
        delta(Det(U), Det(V)).inverse(),
        dual_iso(eps(W, U, V)),
    ])
    right = evaluate([eps(W.dual(), V.dual(), U.dual()).inverse(), d_map(W)])
    return left == right, left, right


def verify_eps_swap(rk_u: int, rk_v: int) -> bool:
    """ε_{V,U} = σ_{U,V}∘ε_{U,V} on det(U⊕V)."""
    U, V = Space.standard("u", rk_u), Space.standard("v", rk_v)
    W = U + V
    lhs = eps(W, V, U).scalar
    rhs = evaluate([eps(W, U, V), sigma(Det(U), Det(V))])
    return lhs == rhs


def double_dual_discrepancy(L: Line) -> GaussQ:
    """Ratio of p_{L*}∘σ to p_L∘(◊⊗id) on (L*)*⊗L*."""
    a = evaluate([tensor(diamond(L), identity(Dual(L))), pairing(L)])
    b = evaluate([sigma(Dual(Dual(L)), Dual(L)), pairing(Dual(L))])
    return b / a


def inverse_roundtrip(f: LineIso) -> GaussQ:
    return evaluate([f, f.inverse()])


# ---------------------------------------------------------------------------
# orientations

@dataclass(frozen=True)
class OrientationObj:
    """o: C_m → det E for a quadratic space E (gram matrix in E's basis)."""

    space: Space
    gram: tuple  # rows of integers
    iso: LineIso

    @property
    def scalar(self) -> GaussQ:
        return self.iso.scalar


def _gram_matrix(o: OrientationObj):
    return sympy.Matrix(o.gram)


def musical(o: OrientationObj) -> LineIso:
    """det(i_q): det E → det E*, i_q(e_j) = Σ_i q(e_j, e_i) e_i^."""
    E = o.space
    return det_of(E, E.dual(), _gram_matrix(o).T)


def eor_sides(o: OrientationObj) -> tuple[GaussQ, GaussQ]:
    """Both sides of d_E∘det(i_q) = (o*)^{-1}∘o^{-1} as maps det E → (det E)*."""
    E = o.space
    m = E.rank
    lhs = evaluate([musical(o), d_map(E)])
    rhs = evaluate([o.iso.inverse(), unit_self_dual(m).inverse(), dual_iso(o.iso).inverse()])
    return lhs, rhs


def is_orientation(o: OrientationObj) -> bool:
    lhs, rhs = eor_sides(o)
    return lhs == rhs


def dual_orientation_sides(o: OrientationObj) -> tuple[GaussQ, GaussQ]:
    """(o*)^{-1} versus det(i_q)∘o, both read as C_m* → (det E)* via d_E and C_m* ≅ C_m."""
    E = o.space
    m = E.rank
    lhs = evaluate([dual_iso(o.iso).inverse()])
    rhs = evaluate([unit_self_dual(m), o.iso, musical(o), d_map(E)])
    return lhs, rhs


def hyperbolic(V: Space) -> tuple[Space, tuple]:
    """E = V ⊕ V* with q(v_i, v_i^) = 1."""
    E = V + V.dual()
    n = V.rank
    gram = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        gram[i][n + i] = gram[n + i][i] = 1
    return E, tuple(tuple(r) for r in gram)


def induced_orientation(total_rank: int, dual: bool = False, name: str = "b") -> OrientationObj:
    """o_V on E = V ⊕ V* (rank 2n), or o_{V*} when dual=True.

    C → det V (det V)^* → det V det(V*) → det E with the factor (-i)^n.
    """
    if total_rank % 2:
        raise InputError(f"orientation needs even rank, got {total_rank}")
    n = total_rank // 2
    V = Space.standard(name, n)
    E, gram = hyperbolic(V)
    iso_space = V.dual() if dual else V
    Vd = iso_space.dual()
    chain = LineIso(Unit(2 * n), Tensor(Det(iso_space), Dual(Det(iso_space))), GaussQ(Fraction(1)), "p^-1")
    chain = chain.scaled((GaussQ(Fraction(0), Fraction(-1))) ** n)
    chain = chain.then(tensor(identity(Det(iso_space)), d_map(iso_space).inverse()))
    chain = chain.then(eps(E, iso_space, Vd).inverse())
    return OrientationObj(E, gram, chain)


def compare_dual(rk_v: int) -> GaussQ:
    """o_{V*}/o_V on V ⊕ V*."""
    return induced_orientation(2 * rk_v, dual=True).scalar / induced_orientation(2 * rk_v).scalar


def orientation_product(o1: OrientationObj, o2: OrientationObj) -> OrientationObj:
    """o₁⊗o₂ on E₁ ⊕ E₂ through C ≅ C⊗C and ε^{-1}."""
    E1, E2 = o1.space, o2.space
    if set(E1.basis) & set(E2.basis):
        raise InputError("orientation_product needs disjoint bases")
    E = E1 + E2
    m1, m2 = E1.rank, E2.rank
    iso = unit_mult(m1, m2).inverse().then(tensor(o1.iso, o2.iso)).then(eps(E, E1, E2).inverse())
    gram = [[0] * (m1 + m2) for _ in range(m1 + m2)]
    for i in range(m1):
        for j in range(m1):
            gram[i][j] = o1.gram[i][j]
    for i in range(m2):
        for j in range(m2):
            gram[m1 + i][m1 + j] = o2.gram[i][j]
    return OrientationObj(E, tuple(tuple(r) for r in gram), iso)


def negate(o: OrientationObj) -> OrientationObj:
    return OrientationObj(o.space, o.gram, o.iso.scaled(-1))


def trivial_orientation() -> OrientationObj:
    return OrientationObj(Space("0", ()), (), LineIso(Unit(0), Det(Space("0", ())), GaussQ(Fraction(1)), "1"))


def ot_comparison(rk_t_ge: int, rk_t_le: int, rk_e_ge: int) -> GaussQ:
    """o_{N≥}/o_{N≥_OT} on the hyperbolic model of N^vir.

    N^vir ≅ (T≥ ⊕ T≥*) ⊕ (T≤ ⊕ T≤*) ⊕ (E≥ ⊕ E≥*). The OT orientation takes
    T≥, T≤, E≥ as positive isotropics; o_{N≥} takes T≥, (T≤)*, (E≥)*.
    """
    def block(r, name, dual):
        return induced_orientation(2 * r, dual=dual, name=name)

    ot = orientation_product(orientation_product(block(rk_t_ge, "a", False), block(rk_t_le, "b", False)),
                             block(rk_e_ge, "c", False))
    ours = orientation_product(orientation_product(block(rk_t_ge, "a", False), block(rk_t_le, "b", True)),
                               block(rk_e_ge, "c", True))
    assert ot.space == ours.space
    return ours.scalar / ot.scalar


__all__ = [
    "Space", "Det", "Unit", "Dual", "Tensor", "LineIso", "OrientationObj", "I",
    "sigma", "pairing", "diamond", "delta", "dual_iso", "tensor", "d_map", "eps", "det_of",
    "evaluate", "verify_pentagon", "verify_eps_swap", "double_dual_discrepancy",
    "induced_orientation", "compare_dual", "orientation_product", "ot_comparison",
    "is_orientation", "eor_sides", "dual_orientation_sides", "unit_self_dual",
]
