"""Command-line front end: ``cy4 <group> <command> ...``.

Exit codes: 0 pass, 1 a mathematical check failed, 2 input or usage error,
3 a resource bound was exceeded. Payload goes to stdout and is byte-stable;
elapsed time goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import sympy

from . import io as cio
from .numbers import InputError, ResourceError, parse_rational
from .quiver import MasterEquationError, cy4_complete, graft, verify_dga

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class CheckFailed(Exception):
    pass


def _out(lines) -> None:
    if isinstance(lines, str):
        lines = [lines]
    for line in lines:
        sys.stdout.write(line + "\n")


def _write(text: str, path: str | None) -> None:
    if path:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise InputError(f"{path}: cannot write ({exc.strerror})") from None
    else:
        sys.stdout.write(text)


def _int_list(text: str, where: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InputError(f"{where}: expected comma-separated integers, got {text!r}") from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None


FIXTURES = ("example", "c4", "point")


def _quiver_source(path: str):
    """A file path, or one of the bundled fixture names."""
    if path in FIXTURES and not Path(path).exists():
        return cio.fixture_path(f"{path}.json")
    return path


def _complete(path: str, check: bool = True):
    return cy4_complete(cio.parse_quiver(_quiver_source(path)), check=check)


# ---------------------------------------------------------------------------
# quiver

def cmd_quiver_check_master(args) -> int:
    spec = cio.parse_quiver(_quiver_source(args.file))
    try:
        Q = cy4_complete(spec)
    except MasterEquationError as exc:
        _out(["master equation: FAIL", "witness {H,H}:"] + ["  " + l for l in exc.residue.emit().splitlines()])
        return EXIT_FAIL
    _out("master equation: ok")
    rep = verify_dga(Q)
    if not rep.ok:
        _out([f"d^2 = 0: FAIL at {rep.generator}"] + ["  " + l for l in rep.value.emit().splitlines()])
        return EXIT_FAIL
    _out(f"d^2 = 0: ok ({len(Q.generators)} generators)")
    return EXIT_OK


def cmd_quiver_complete(args) -> int:
    Q = _complete(args.file)
    _write(cio.dumps(cio.completed_to_dict(Q)), args.output)
    return EXIT_OK


def cmd_quiver_diff(args) -> int:
    Q = _complete(args.file)
    if args.generator not in Q.generators:
        raise InputError(f"--generator: unknown generator {args.generator!r}")
    text = Q.d(args.generator).emit()
    _out(text if text else "0")
    return EXIT_OK


def cmd_quiver_graft(args) -> int:
    Q = _complete(args.file)
    try:
        G = graft(Q, args.frame, args.r, args.l)
    except MasterEquationError as exc:
        sys.stderr.write(f"grafted quiver: {exc}\n")
        return EXIT_FAIL
    rep = verify_dga(G)
    if not rep.ok:
        sys.stderr.write(f"grafted quiver: d^2 != 0 at {rep.generator}\n")
        return EXIT_FAIL
    _write(cio.dumps(cio.completed_to_dict(G)), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# representations

def cmd_rep_ext(args) -> int:
    from .rep import Representation, ext_complex, euler_form, relation_defects

    Q = _complete(args.quiver)
    dims, mats = cio.parse_representation(args.rep, Q.full)
    M = Representation(dims, mats)
    M.validate(Q)
    bad = relation_defects(Q, M)
    if bad:
        raise InputError(f"representation violates the relations d({sorted(bad)[0]}) = 0")
    C = ext_complex(Q, M)
    ok = C.square_zero()
    chi = euler_form(Q, dims, dims)
    _out([
        "dim C^i: " + " ".join(map(str, C.dims())),
        "dim Ext^i: " + " ".join(map(str, C.ext_dims())),
        f"delta^2 = 0: {'ok' if ok else 'FAIL'}",
        f"euler characteristic: {C.euler_characteristic()} (chi(d,d) = {chi})",
    ])
    return EXIT_OK if ok and C.euler_characteristic() == chi else EXIT_FAIL


def cmd_rep_fixed_points(args) -> int:
    from .rep import monomial_fixed_points, quotient_basis

    fps = monomial_fixed_points(args.n)
    if args.emit == "counts":
        _out(f"{args.n} {len(fps)}")
        return EXIT_OK
    payload = []
    for fp in fps:
        d = cio.representation_to_dict(fp.rep.dims, fp.rep.matrices)
        d["basis"] = [list(b) for b in quotient_basis(fp.ideal)]
        payload.append(d)
    _write(cio.dumps(payload), None)
    return EXIT_OK


def cmd_euler(args) -> int:
    from .rep import euler_form

    Q = _complete(args.quiver)
    verts = Q.full.vertices
    d, e = _int_list(args.d, "--d"), _int_list(args.e, "--e")
    for name, vec in (("--d", d), ("--e", e)):
        if len(vec) != len(verts):
            raise InputError(f"{name}: expected {len(verts)} entries (vertices {', '.join(verts)})")
    _out(str(euler_form(Q, dict(zip(verts, d)), dict(zip(verts, e)))))
    return EXIT_OK


# ---------------------------------------------------------------------------
# signs

def cmd_signs_verify(args) -> int:
    from .suites import suite_signs_only

    if args.max_rank < 0 or args.max_rank > 6:
        raise ResourceError(f"--max-rank {args.max_rank} outside 0..6")
    checks = suite_signs_only(args.suite, args.max_rank)
    _out([c.line() for c in checks])
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


# ---------------------------------------------------------------------------
# series

def _klass(data, where: str):
    from .series import EqKClass, KTerm, WeightVector

    if data is None:
        return EqKClass()
    if not isinstance(data, list):
        raise InputError(f"{where}: expected a list of terms or roots")
    terms = []
    for i, t in enumerate(data):
        w = f"{where}[{i}]"
        if isinstance(t, (int, str)):
            terms.append(KTerm(WeightVector(0, ()), (str(t),), 1))
            continue
        if not isinstance(t, dict):
            raise InputError(f"{w}: expected a root or an object")
        roots = t.get("roots", ["0"] * int(t.get("rank", 1)))
        lams = tuple(int(x) for x in t.get("lams", []))
        sign = int(t.get("sign", 1))
        if sign not in (1, -1):
            raise InputError(f"{w}.sign: must be 1 or -1")
        terms.append(KTerm(WeightVector(int(t.get("nz", 0)), lams), tuple(str(r) for r in roots), sign))
    return EqKClass(tuple(terms))


def cmd_series_expand(args) -> int:
    from .series import CoeffRing, emit_series, parse_expr, series_from_expr

    nils = tuple(x for x in (args.nil or "").split(",") if x)
    expr, lams = parse_expr(args.expr, nils)
    ring = CoeffRing(lams, nils, nil_order=args.order)
    s = series_from_expr(expr, ring, args.regime, args.order)
    lines = emit_series(s, args.order)
    _out(lines if lines else ["0"])
    return EXIT_OK


def cmd_series_sqrt_euler(args) -> int:
    from .series import emit_series, sqrt_euler_sides

    data = _load_json(args.spec)
    t_ge, t_le, e_ge = (_klass(data.get(k), k) for k in ("T_ge", "T_le", "E_ge"))
    lhs, rhs = sqrt_euler_sides(t_ge, t_le, e_ge, args.order, data.get("regime", "global"))
    ok = lhs.agrees(rhs, args.order)
    _out([f"sqrt-euler identity to order {args.order}: {'ok' if ok else 'FAIL'}", "lhs:"]
         + ["  " + l for l in emit_series(lhs, args.order)] + ["rhs:"]
         + ["  " + l for l in emit_series(rhs, args.order)])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series_global_residue(args) -> int:
    from .series import global_residue

    data = _load_json(args.theta)
    theta = _klass(data.get("theta", data) if isinstance(data, dict) else data, "theta")
    res, ring = global_residue(theta, args.order)
    _out([f"residue: {sympy.simplify(ring.to_expr(res))}", f"vanishes: {'true' if not res else 'false'}"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# wall-crossing

def _lattice_and_classes(path: str):
    from .wallcross import ClassLattice

    data = _load_json(path)
    try:
        L = ClassLattice(tuple(int(x) for x in data["rk"]), tuple(int(x) for x in data["chi"]))
    except (KeyError, TypeError, ValueError):
        raise InputError(f"{path}: needs integer lists 'rk' and 'chi'") from None
    classes = data.get("classes")
    if classes is None:
        classes = L.classes_up_to_rank(int(data.get("max_rank", 4)))
    classes = [L.check(c) for c in classes]
    phases = {}
    for i, item in enumerate(data.get("phases", [])):
        if not isinstance(item, list) or len(item) != 2:
            raise InputError(f"phases[{i}]: expected [class, \"p/q\"]")
        phases[L.check(item[0])] = parse_rational(item[1], f"phases[{i}]")
    phase = (lambda a: phases.get(a)) if phases else None
    return L, classes, phase


def cmd_wc_js(args) -> int:
    from .wallcross import X, js_rhs

    L, classes, phase = _lattice_and_classes(args.classes)
    alpha = L.check(_int_list(args.alpha, "--alpha"))
    lines = js_rhs(alpha, {c: X(c) for c in classes}, phase).emit()
    _out(lines if lines else ["0"])
    return EXIT_OK


def cmd_wc_invert(args) -> int:
    from .wallcross import X, invert_js

    L, classes, phase = _lattice_and_classes(args.classes)
    alpha = L.check(_int_list(args.alpha, "--alpha"))
    if alpha not in classes:
        classes.append(alpha)
    M = invert_js({c: X(c) for c in classes if all(x <= y for x, y in zip(c, alpha))}, L, phase,
                  args.normalization)
    _out(M[alpha].emit() or ["0"])
    return EXIT_OK


def cmd_wc_dtpt(args) -> int:
    from .wallcross import dtpt_series, qseries_emit, wc_invert

    G, PT, DT = dtpt_series(args.order)
    _out(qseries_emit(DT))
    return EXIT_OK if wc_invert(G, DT, args.order) == PT else EXIT_FAIL


def cmd_wc_hilb(args) -> int:
    from .wallcross import hilb_series, qseries_emit, wc_invert

    G, H = hilb_series(args.order)
    _out(qseries_emit(H))
    return EXIT_OK if wc_invert(G, H, args.order) == {0: H[0]} else EXIT_FAIL


# ---------------------------------------------------------------------------
# toy homology

def cmd_toy_pushforward(args) -> int:
    from .toy import ProjBundleModel, proj_pushforward

    M = ProjBundleModel(args.r)
    try:
        expr = sympy.sympify(args.expr.replace("^", "**"))
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise InputError(f"--expr: cannot parse {args.expr!r}: {exc}") from None
    allowed = {"h"} | {str(c) for c in M.c}
    extra = {s.name for s in expr.free_symbols} - allowed
    if extra:
        raise InputError(f"--expr: unknown symbols {sorted(extra)} (use h, c1..c{args.r})")
    _out(str(proj_pushforward(M, expr)).replace("**", "^"))
    return EXIT_OK


def cmd_toy_bracket_check(args) -> int:
    from .toy import bracket_pushdown

    rep = bracket_pushdown(args.r, args.a)
    _out([f"p_*(e(T_pi)) = {rep.fiber_euler}", f"step (2) identity: {'ok' if rep.step2 else 'FAIL'}",
          f"residue = {rep.residue}", f"result = {rep.coefficient} v", f"check: {'ok' if rep.ok else 'FAIL'}"])
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_toy_flag_residues(args) -> int:
    from .toy import ThetaLine, fixed_locus_residues

    data = _load_json(args.spec) if args.spec else {}
    l1 = data.get("locus1", {})
    l2 = data.get("locus2", {})
    l3 = data.get("locus3", {})
    theta = tuple(ThetaLine(str(t.get("root", "x")), int(t.get("s", 0)), int(t.get("lam", 0)))
                  for t in l3.get("theta", [{"root": "x"}]))
    eps = int(l3.get("eps", 1))
    if eps not in (1, -1):
        raise InputError("locus3.eps must be 1 or -1")
    names = l3.get("classes", ["A1", "A2"])
    rep = fixed_locus_residues(str(l1.get("class", "A")), str(l1.get("normal", "b")),
                               str(l2.get("class", "Ap")), str(l2.get("normal", "bp")),
                               theta, eps, str(names[0]), str(names[1]), args.order)
    _out(rep.lines())
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    from .suites import run_suite

    report = run_suite(args.suite, seed=args.seed, order=args.order_opt)
    _out([f"suite: {report.suite}"] + report.lines()
         + [f"result: {'PASS' if report.ok else 'FAIL'} ({sum(c.ok for c in report.checks)}/{len(report.checks)})"])
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cy4", description="CY4 quivers, sign calculus, series and wall-crossing checks.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    q = sub.add_parser("quiver", help="graded quivers and CY4 completion")
    qs = q.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = qs.add_parser("check-master")
    c.add_argument("file")
    c.set_defaults(func=cmd_quiver_check_master)
    c = qs.add_parser("complete")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_quiver_complete)
    c = qs.add_parser("diff")
    c.add_argument("file")
    c.add_argument("--generator", required=True)
    c.set_defaults(func=cmd_quiver_diff)
    c = qs.add_parser("graft")
    c.add_argument("file")
    c.add_argument("--frame", required=True, choices=["js", "flag", "ms"])
    c.add_argument("--r", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_quiver_graft)

    r = sub.add_parser("rep", help="representations, Ext complexes, fixed points")
    rs = r.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = rs.add_parser("ext")
    c.add_argument("--quiver", required=True)
    c.add_argument("--rep", required=True)
    c.set_defaults(func=cmd_rep_ext)
    c = rs.add_parser("fixed-points")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--emit", choices=["reps", "counts"], default="counts")
    c.set_defaults(func=cmd_rep_fixed_points)

    c = sub.add_parser("euler", help="Euler form of a completed quiver")
    c.add_argument("--quiver", required=True)
    c.add_argument("--d", required=True)
    c.add_argument("--e", required=True)
    c.set_defaults(func=cmd_euler)

    s = sub.add_parser("signs", help="determinant-line sign identities")
    ss = s.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ss.add_parser("verify")
    c.add_argument("--suite", choices=["pentagon", "double-dual", "ot-compare", "all"], default="all")
    c.add_argument("--max-rank", type=int, default=4)
    c.set_defaults(func=cmd_signs_verify)

    se = sub.add_parser("series", help="equivariant Laurent series")
    ses = se.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ses.add_parser("expand")
    c.add_argument("--expr", required=True)
    c.add_argument("--regime", choices=["local", "global"], default="local")
    c.add_argument("--order", type=int, default=12)
    c.add_argument("--nil", help="comma-separated nilpotent symbols")
    c.set_defaults(func=cmd_series_expand)
    c = ses.add_parser("sqrt-euler")
    c.add_argument("--spec", required=True)
    c.add_argument("--order", type=int, default=8)
    c.set_defaults(func=cmd_series_sqrt_euler)
    c = ses.add_parser("global-residue")
    c.add_argument("--theta", required=True)
    c.add_argument("--order", type=int, default=12)
    c.set_defaults(func=cmd_series_global_residue)

    w = sub.add_parser("wc", help="wall-crossing in free Lie algebras")
    ws = w.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ws.add_parser("js")
    c.add_argument("--alpha", required=True)
    c.add_argument("--classes", required=True)
    c.set_defaults(func=cmd_wc_js)
    c = ws.add_parser("invert")
    c.add_argument("--alpha", required=True)
    c.add_argument("--classes", required=True)
    c.add_argument("--normalization", choices=["derived", "printed"], default="derived")
    c.set_defaults(func=cmd_wc_invert)
    for name, fn in (("dtpt", cmd_wc_dtpt), ("hilb", cmd_wc_hilb)):
        c = ws.add_parser(name)
        c.add_argument("--order", type=int, default=4)
        c.set_defaults(func=fn)

    t = sub.add_parser("toy", help="projective bundles and residues")
    ts = t.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ts.add_parser("pushforward")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--expr", required=True)
    c.set_defaults(func=cmd_toy_pushforward)
    c = ts.add_parser("bracket-check")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--a", type=int, default=0)
    c.set_defaults(func=cmd_toy_bracket_check)
    c = ts.add_parser("flag-residues")
    c.add_argument("--spec")
    c.add_argument("--order", type=int, default=8)
    c.set_defaults(func=cmd_toy_flag_residues)

    c = sub.add_parser("verify", help="run verification suites")
    c.add_argument("--suite", default="all")
    c.add_argument("--order", dest="order_opt", type=int)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("order", "order_opt"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            sys.stderr.write("cy4: error: --order must be positive\n")
            return EXIT_INPUT
    start = time.perf_counter()
    try:
        code = args.func(args)
    except ResourceError as exc:
        sys.stderr.write(f"cy4: resource bound exceeded: {exc}\n")
        code = EXIT_RESOURCE
    except InputError as exc:
        sys.stderr.write(f"cy4: error: {exc}\n")
        code = EXIT_INPUT
    sys.stderr.write(f"elapsed: {time.perf_counter() - start:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
