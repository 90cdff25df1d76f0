"""JSON file formats for quivers and representations, and canonical emitters."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path as FilePath

from .numbers import InputError, fmt_q, parse_rational
from .quiver import ALLOWED_DEGREES, CY4Quiver, Edge, QuiverSpec


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    path = FilePath(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def parse_quiver(source) -> QuiverSpec:
    data = _load(source)
    if not isinstance(data, dict):
        raise InputError("quiver file: top level must be an object")
    if "base" in data and "vertices" not in data:
        data = data["base"]
    verts = data.get("vertices", [])
    if not isinstance(verts, list):
        raise InputError("vertices: expected a list")
    verts = tuple(str(v) for v in verts)
    edges = []
    for i, raw in enumerate(data.get("edges", [])):
        where = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise InputError(f"{where}: expected an object")
        for key in ("name", "tail", "head", "degree"):
            if key not in raw:
                raise InputError(f"{where}.{key}: missing")
        deg = raw["degree"]
        if isinstance(deg, str):
            deg = parse_rational(deg, f"{where}.degree")
            if deg.denominator != 1:
                raise InputError(f"{where}.degree: not an integer")
            deg = int(deg)
        if isinstance(deg, bool) or not isinstance(deg, int) or deg not in ALLOWED_DEGREES:
            raise InputError(f"{where}.degree: {raw['degree']!r} not in {{0,-1,-2,-3}}")
        tail, head = str(raw["tail"]), str(raw["head"])
        for key, v in (("tail", tail), ("head", head)):
            if v not in verts:
                raise InputError(f"{where}.{key}: unknown vertex {v!r}")
        edges.append(Edge(str(raw["name"]), tail, head, deg))
    pairing = data.get("pairing", {}) or {}
    if not isinstance(pairing, dict):
        raise InputError("pairing: expected an object")
    terms = []
    for i, raw in enumerate(data.get("superpotential", [])):
        where = f"superpotential[{i}]"
        if not isinstance(raw, dict) or "path" not in raw:
            raise InputError(f"{where}: expected {{coeff, path}}")
        coeff = parse_rational(raw.get("coeff", "1"), f"{where}.coeff")
        path = raw["path"]
        if not isinstance(path, list) or not path:
            raise InputError(f"{where}.path: expected a nonempty list of edge names")
        terms.append((coeff, tuple(str(e) for e in path)))
    return QuiverSpec(verts, tuple(edges), {str(k): v for k, v in pairing.items()}, tuple(terms))


def quiver_to_dict(spec: QuiverSpec) -> dict:
    return {
        "vertices": list(spec.vertices),
        "edges": [{"name": e.name, "tail": e.tail, "head": e.head, "degree": e.degree} for e in spec.edges],
        "pairing": dict(sorted(spec.pairing.items())),
        "superpotential": [{"coeff": fmt_q(c), "path": list(p)} for c, p in spec.superpotential],
    }


def element_to_list(a) -> list:
    return [{"coeff": fmt_q(c), "path": list(p.edges) if p.edges else [f"l_{p.vertex}"]} for p, c in a.items()]


def completed_to_dict(Q: CY4Quiver) -> dict:
    return {
        "base": quiver_to_dict(Q.spec),
        "vertices": list(Q.full.vertices),
        "edges": [{"name": e.name, "tail": e.tail, "head": e.head, "degree": e.degree} for e in Q.full.edges],
        "dual": {k: ("-" if s < 0 else "") + v for k, (s, v) in sorted(Q.dual.items())},
        "potential": [{"coeff": fmt_q(c), "path": list(w)} for w, c in Q.potential.items()],
        "differential": {g: element_to_list(Q.d(g)) for g in Q.generators},
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def fixture_path(name: str) -> FilePath:
    return FilePath(str(resources.files("cy4") / "data" / name))


def parse_representation(source, quiver=None) -> tuple[dict, dict]:
    """Returns (dims, matrices) with Fraction entries; shapes checked against quiver."""
    data = _load(source)
    if not isinstance(data, dict) or "dims" not in data:
        raise InputError("representation file: expected an object with 'dims'")
    dims = {}
    for v, n in data["dims"].items():
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InputError(f"dims.{v}: expected a nonnegative integer")
        dims[str(v)] = n
    mats = {}
    for name, rows in (data.get("matrices") or {}).items():
        where = f"matrices.{name}"
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise InputError(f"{where}: expected a list of rows")
        mats[name] = [[parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    if quiver is not None:
        for v in quiver.vertices:
            dims.setdefault(v, 0)
        for v in dims:
            if v not in quiver.vertices:
                raise InputError(f"dims.{v}: unknown vertex")
        for name in mats:
            if name not in quiver:
                raise InputError(f"matrices.{name}: unknown edge")
            if quiver.deg(name) != 0:
                raise InputError(f"matrices.{name}: only degree 0 edges carry matrices")
    return dims, mats


def representation_to_dict(dims: dict, mats: dict) -> dict:
    return {
        "dims": dict(sorted(dims.items())),
        "matrices": {k: [[fmt_q(x) for x in row] for row in m] for k, m in sorted(mats.items())},
    }


def frac_matrix(rows) -> list:
    return [[Fraction(x) for x in r] for r in rows]
