"""Verification suites behind ``cy4 verify``."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import sympy

from . import oracles
from .examples import c4_spec, example_spec, point_spec
from .numbers import GaussQ, InputError
from .quiver import (AlgebraElement, MasterEquationError, cy4_complete, delete_term, graft,
                     master_bracket, verify_dga)
from .rep import (ext_complex, euler_form, monomial_fixed_points, random_representation, staircases)
from .series import (CoeffRing, EqKClass, expand_power, explicit_expansion, global_residue_check,
                     random_roots, sqrt_euler_check)
from .signs import (Det, Space, compare_dual, double_dual_discrepancy, ot_comparison,
                    verify_eps_swap, verify_pentagon)
from .toy import (ProjBundleModel, bracket_pushdown_check, fixed_locus_residues, h, proj_pushforward,
                  segre, self_dual_toy, substitute_roots, ThetaLine)
from .wallcross import (P, ClassLattice, EpsilonSystem, FlagTerm, X, dtpt_series, exp_adjoint, flag_wc_rhs,
                        hilb_series, random_euler_form, random_triple, roundtrip_check, symsign_check,
                        wc_invert)

SUITES = ("quiver", "rep", "signs", "series", "wc", "toy")


@dataclass
class Check:
    id: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        tail = f"  {self.witness}" if self.witness else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.id}{tail}"


@dataclass
class RunReport:
    suite: str
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    orders: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        if self.orders:
            out.append("orders: " + ", ".join(f"{k}={v}" for k, v in sorted(self.orders.items())))
        return out


# ---------------------------------------------------------------------------

def _quivers():
    return {"example": cy4_complete(example_spec()), "c4": cy4_complete(c4_spec())}


def worked_differentials() -> list[Check]:
    ex = cy4_complete(example_spec())
    checks = []
    want = {
        "rho1": "-1 * e4;e1",
        "rho1*": "1 * e2;e3",
        "e1*": "-1 * e2;rho2*\n1 * rho1*;e4",
    }
    for g, text in want.items():
        got = ex.d(g).emit()
        checks.append(Check(f"quiver.example.d({g})", got == text, got.replace("\n", " + ")))
    c4 = cy4_complete(c4_spec())
    for i, j in combinations(range(1, 5), 2):
        xi, xj = f"x{i}", f"x{j}"
        comm = c4.doubled.commutator(c4.doubled.element((1, xi)), c4.doubled.element((1, xj)))
        name = f"c{i}{j}"
        checks.append(Check(f"quiver.c4.d({name})", c4.d(name) == comm, c4.d(name).emit().replace("\n", " + ")))
    return checks


def master_checks() -> list[Check]:
    checks = []
    for name, Q in _quivers().items():
        variants = [(name, Q), (f"{name}+JS", graft(Q, "js"))]
        variants += [(f"{name}+Flag({r})", graft(Q, "flag", r)) for r in (3, 4, 5)]
        variants += [(f"{name}+MS(4,2)", graft(Q, "ms", 4, 2))]
        for label, G in variants:
            res = master_bracket(G.doubled, G.pairs, G.potential)
            rep = verify_dga(G)
            checks.append(Check(f"quiver.master.{label}", not res and rep.ok,
                                "" if rep.ok else f"d^2({rep.generator}) != 0"))
        spec = Q.spec
        for i in range(len(spec.superpotential)):
            try:
                broken = cy4_complete(delete_term(spec, i), check=True)
                rep = verify_dga(broken)
                ok, wit = not rep.ok, f"d^2({rep.generator}) != 0"
            except MasterEquationError as exc:
                ok, wit = True, f"{{H,H}} has {len(exc.residue.terms)} terms"
            checks.append(Check(f"quiver.delete.{name}[{i}]", ok, wit))
    return checks


def run_quiver(seed: int = 0) -> list[Check]:
    return worked_differentials() + master_checks()


def euler_checks(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for name, Q in _quivers().items():
        verts = Q.full.vertices
        ok_sym, ok_even, zero = True, True, True
        for _ in range(25):
            d = {v: rng.randint(0, 5) for v in verts}
            e = {v: rng.randint(0, 5) for v in verts}
            a, b = euler_form(Q, d, e), euler_form(Q, e, d)
            ok_sym &= a == b
            ok_even &= euler_form(Q, d, d) % 2 == 0
            zero &= a == 0
        checks.append(Check(f"rep.euler.{name}.symmetric", ok_sym))
        checks.append(Check(f"rep.euler.{name}.even", ok_even))
        if name == "c4":
            checks.append(Check("rep.euler.c4.zero", zero))
    pt = cy4_complete(point_spec())
    ok = all(euler_form(pt, {"0": d}, {"0": e}) == 2 * d * e for d in range(6) for e in range(6))
    checks.append(Check("rep.euler.point.2de", ok))
    return checks


def ext_checks(seed: int = 0, max_n: int = 4) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    targets = [("example", cy4_complete(example_spec())), ("c4+flag3", graft(cy4_complete(c4_spec()), "flag", 3)),
               ("example+ms", graft(cy4_complete(example_spec()), "ms", 4, 2))]
    for name, Q in targets:
        ok = True
        for _ in range(4):
            dims = {v: rng.randint(0, 3) for v in Q.full.vertices}
            M = random_representation(Q, dims, rng)
            C = ext_complex(Q, M)
            ok &= C.square_zero() and C.euler_characteristic() == euler_form(Q, dims, dims)
        checks.append(Check(f"rep.ext.{name}.random", ok))
    js = graft(cy4_complete(c4_spec()), "js")
    one = monomial_fixed_points(1)[0]
    ext1 = ext_complex(js, one.rep).ext_dims()[1]
    checks.append(Check("rep.ext.hilb1.ext1", ext1 == 4, f"dim Ext^1 = {ext1}"))
    serre = True
    for n in range(1, max_n + 1):
        for fp in monomial_fixed_points(n):
            d = ext_complex(js, fp.rep).ext_dims()
            serre &= d == d[::-1]
    checks.append(Check(f"rep.ext.serre.n<={max_n}", serre))
    return checks


def fixed_point_checks(max_n: int = 6) -> list[Check]:
    expected = [1, 4, 10, 26, 59, 140]
    checks = []
    for n in range(1, max_n + 1):
        primary = set(staircases(n))
        oracle = {oracles.heights_to_boxes(hgt) for hgt in oracles.solid_partitions(n)}
        ok = primary == oracle and (n > len(expected) or len(primary) == expected[n - 1])
        checks.append(Check(f"rep.fixed_points.n={n}", ok, f"{len(primary)} vs oracle {len(oracle)}"))
    return checks


def run_rep(seed: int = 0) -> list[Check]:
    return euler_checks(seed) + ext_checks(seed) + fixed_point_checks()


# ---------------------------------------------------------------------------

def run_signs(max_rank: int = 4, seed: int = 0) -> list[Check]:
    checks = []
    pent = all(verify_pentagon(a, b)[0] for a in range(max_rank + 1) for b in range(max_rank + 1))
    checks.append(Check(f"signs.pentagon.rk<={max_rank}", pent))
    swap = all(verify_eps_swap(a, b) for a in range(max_rank + 1) for b in range(max_rank + 1))
    checks.append(Check(f"signs.eps_swap.rk<={max_rank}", swap))
    dd = all(double_dual_discrepancy(Det(Space.standard("v", r))) == (-1) ** r for r in range(2 * max_rank + 1))
    checks.append(Check("signs.double_dual", dd))
    cd = all(compare_dual(r) == (-1) ** r for r in range(max_rank + 1))
    checks.append(Check("signs.o_dual_ratio", cd))
    k = min(max_rank, 3)
    ot = all(ot_comparison(a, b, c) == (-1) ** (b + c)
             for a in range(k + 1) for b in range(k + 1) for c in range(k + 1))
    checks.append(Check(f"signs.ot_compare.rk<={k}", ot))
    return checks


def suite_signs_only(name: str, max_rank: int) -> list[Check]:
    checks = run_signs(max_rank)
    pick = {"pentagon": ("signs.pentagon", "signs.eps_swap"), "double-dual": ("signs.double_dual",),
            "ot-compare": ("signs.ot_compare", "signs.o_dual_ratio")}
    if name == "all":
        return checks
    if name not in pick:
        raise InputError(f"unknown signs suite {name!r}")
    return [c for c in checks if c.id.startswith(pick[name])]


# ---------------------------------------------------------------------------

def run_series(seed: int = 0, order: int = 10) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    R = CoeffRing(("l1",))
    for regime in ("local", "global"):
        ok = True
        for k in range(1, 5):
            a = expand_power(R, "l1", k, regime, order)
            b = explicit_expansion(R, "l1", k, regime, order)
            ok &= a.agrees(b, order)
            tay = oracles.taylor_coefficients(k, regime, order)
            for e, c in tay.items():
                ok &= sympy.simplify(R.to_expr(a.z_coeff(e)) - c) == 0
        checks.append(Check(f"series.explicit_expand.{regime}.order={order}", ok))
    ok = True
    for _ in range(20):
        t_ge, t_le, e_ge = (random_roots(rng, rng.randint(0, 3)) for _ in range(3))
        ok &= sqrt_euler_check(t_ge, t_le, e_ge, 8)
    checks.append(Check("series.sqrt_euler.order=8", ok))
    R2 = CoeffRing(("l1", "l2"))
    ok = True
    for _ in range(10):
        lam = rng.choice(["l1", "l2", "l1+l2", "2*l1-l2"])
        k = rng.randint(1, 4)
        ok &= not expand_power(R2, lam, k, "local", order).residue()
    checks.append(Check("series.local_residue_vanishes", ok))
    single = global_residue_check(EqKClass.line(lams=(1,)))
    pair = global_residue_check(EqKClass.line(lams=(1,)) + EqKClass.line(lams=(-1,)))
    checks.append(Check("series.global_residue.single", single is False))
    checks.append(Check("series.global_residue.pm", pair is True))
    return checks


# ---------------------------------------------------------------------------

def run_toy(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    ok = True
    for r in range(1, 5):
        M = ProjBundleModel(r)
        s = segre(M.c, 4)
        for j in range(3):
            ok &= sympy.expand(proj_pushforward(M, h ** (r - 1 + j)) - s[j]) == 0
        for _ in range(3):
            roots = rng.sample(range(-6, 7), r)
            for k in range(r + 3):
                base = substitute_roots(M, proj_pushforward(M, h ** k), roots)
                ok &= Fraction(str(base)) == oracles.lagrange_pushforward(h ** k, roots)
    checks.append(Check("toy.pushforward_vs_splitting", ok))
    ok = all(proj_pushforward(ProjBundleModel(r), ProjBundleModel(r).euler_T_pi()) == r for r in range(2, 6))
    checks.append(Check("toy.fiber_euler.r=2..5", ok))
    ok = all(bracket_pushdown_check(r, a) for r in range(1, 5) for a in (0, 2))
    checks.append(Check("toy.bracket_pushdown.r=1..4", ok))
    rep = fixed_locus_residues()
    checks.append(Check("toy.locus1", rep.locus1 == "A", rep.locus1))
    checks.append(Check("toy.locus2", rep.locus2 == "-Ap", rep.locus2))
    half = fixed_locus_residues(theta=(ThetaLine("x", 1),))
    checks.append(Check("toy.locus3", rep.bracket_coeff == 1 and half.bracket_coeff == sympy.Rational(1, 2),
                        f"{rep.locus3}; s=1: {half.locus3}"))
    sd = self_dual_toy()
    checks.append(Check("toy.self_dual_sum", sd.total == 0, str(sd.total)))
    return checks


# ---------------------------------------------------------------------------

def run_wc(seed: int = 0, order: int = 4) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    lattices = [ClassLattice((1,), (1,)), ClassLattice((1,), (3,)), ClassLattice((1, 1), (1, 2)),
                ClassLattice((1, 2), (2, 1)), ClassLattice((1, 1, 1), (1, 2, 3))]
    ok = all(roundtrip_check(L, 4)[0] for L in lattices)
    checks.append(Check("wc.js_roundtrip.rk<=4", ok))
    G, PT, DT = dtpt_series(order)
    checks.append(Check(f"wc.dtpt.invert.q^{order}", wc_invert(G, DT, order) == PT))
    want2 = (PT[2] + G[1].bracket(PT[1]) + G[2].bracket(PT[0])
             + G[1].bracket(G[1].bracket(PT[0])).scale(Fraction(1, 2)))
    checks.append(Check("wc.dtpt.q^2", DT[2] == want2))
    Gh, H = hilb_series(order)
    checks.append(Check("wc.hilb.q^1", H[1] == Gh[1].bracket(P)))
    checks.append(Check(f"wc.hilb.invert.q^{order}", wc_invert(Gh, H, order) == {0: H[0]}))
    a, b = X((1, 0)), X((0, 1))
    ok = (flag_wc_rhs([]).is_zero()
          and flag_wc_rhs([FlagTerm(2, 1, 1, a, b)]) == a.bracket(b).scale(Fraction(1, 2))
          and flag_wc_rhs([FlagTerm(3, 1, 2, a, b)]) == a.bracket(b).scale(Fraction(1, 3)))
    checks.append(Check("wc.flag_rhs.binomial", ok))
    ok = True
    for _ in range(1000):
        chi = random_euler_form(rng, 3)
        E = EpsilonSystem.from_euler_form(chi)
        x, y, w = random_triple(rng, 3)
        ok &= E.cocycle_check(x, y, w) and symsign_check(E, chi, x, y)
        ok &= E.epsilon(x, (0, 0, 0)) == 1 and E.epsilon((0, 0, 0), x) == 1
    checks.append(Check("wc.epsilon.cocycle_symsign.1000", ok))
    return checks


RUNNERS: dict[str, Callable] = {
    "quiver": lambda seed, order: run_quiver(seed),
    "rep": lambda seed, order: run_rep(seed),
    "signs": lambda seed, order: run_signs(4, seed),
    "series": lambda seed, order: run_series(seed, order if order is not None else 10),
    "wc": lambda seed, order: run_wc(seed, order if order is not None else 4),
    "toy": lambda seed, order: run_toy(seed),
}


def run_suite(name: str, seed: int = 0, order: int | None = None) -> RunReport:
    if name != "all" and name not in RUNNERS:
        raise InputError(f"unknown suite {name!r} (choose all, {', '.join(SUITES)})")
    names = SUITES if name == "all" else (name,)
    start = time.perf_counter()
    report = RunReport(name)
    for n in names:
        report.checks.extend(RUNNERS[n](seed, order))
    if "series" in names:
        report.orders["series"] = order if order is not None else 10
    if "wc" in names:
        report.orders["wc"] = order if order is not None else 4
    report.elapsed = time.perf_counter() - start
    return report
