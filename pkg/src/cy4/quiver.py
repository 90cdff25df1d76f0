"""Graded quivers, path algebras, cyclic superpotentials and CY4 completions.

Conventions
-----------
A path is stored as the tuple of its edges in *application order*, so the
composite ``p∘q`` (``q`` applied first) is the tuple ``q.edges + p.edges``.
Lazy paths ``l_v`` carry no edges and remember their vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .numbers import InputError, fmt_q

ALLOWED_DEGREES = (0, -1, -2, -3)


class StructuralError(InputError):
    """Inconsistent quiver data (bad pairing, unpaired edge, failed master equation)."""


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str
    degree: int


@dataclass(frozen=True, order=True)
class Path:
    edges: tuple = ()
    vertex: str | None = None

    @classmethod
    def lazy(cls, v: str) -> "Path":
        return cls((), v)

    @property
    def is_lazy(self) -> bool:
        return not self.edges

    def key(self):
        return (len(self.edges), self.edges, self.vertex or "")

    def __str__(self):
        return f"l_{self.vertex}" if self.is_lazy else ";".join(self.edges)


def _norm(terms: Mapping) -> dict:
    return {k: Fraction(c) for k, c in terms.items() if c != 0}


class AlgebraElement:
    """Finite rational combination of paths; immutable once built."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Path, Fraction] | None = None):
        self._terms = _norm(terms or {})

    @classmethod
    def from_path(cls, p: Path, c=1) -> "AlgebraElement":
        return cls({p: Fraction(c)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].key())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement({p: c * v for p, v in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def emit(self) -> str:
        if not self._terms:
            return "0"
        return "\n".join(f"{fmt_q(c)} * {p}" for p, c in self.items())

    def __repr__(self):
        return "AlgebraElement(" + " + ".join(f"{fmt_q(c)}*[{p}]" for p, c in self.items()) + ")"


ZERO = AlgebraElement()


class CyclicElement:
    """Combination of cyclic words, each stored in canonical rotation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self._terms = _norm(terms or {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, CyclicElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def emit(self) -> str:
        if not self._terms:
            return "0"
        return "\n".join(f"{fmt_q(c)} * {';'.join(w)}" for w, c in self.items())

    def __repr__(self):
        return f"CyclicElement({self.emit()!r})"


class GradedQuiver:
    """Vertices plus graded edges; no pairing data (that lives on the completion)."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        self.edges = tuple(edges)
        self._by_name: dict[str, Edge] = {}
        vs = set(self.vertices)
        for i, e in enumerate(self.edges):
            if e.name in self._by_name:
                raise InputError(f"edges[{i}].name: duplicate edge name {e.name!r}")
            if e.tail not in vs or e.head not in vs:
                raise InputError(f"edges[{i}]: unknown vertex in {e.tail!r}->{e.head!r}")
            if e.degree not in ALLOWED_DEGREES:
                raise InputError(f"edges[{i}].degree: {e.degree} not in {{0,-1,-2,-3}}")
            self._by_name[e.name] = e

    def __contains__(self, name) -> bool:
        return name in self._by_name

    def edge(self, name: str) -> Edge:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown edge {name!r}") from None

    def deg(self, name: str) -> int:
        return self.edge(name).degree

    def path_degree(self, p) -> int:
        edges = p.edges if isinstance(p, Path) else p
        return sum(self._by_name[e].degree for e in edges)

    def path(self, *edges: str) -> Path:
        """Path from edges listed in application order; checks composability."""
        for a, b in zip(edges, edges[1:]):
            if self.edge(a).head != self.edge(b).tail:
                raise InputError(f"edges {a!r} then {b!r} do not compose")
        for e in edges:
            self.edge(e)
        return Path(tuple(edges))

    def source(self, p: Path) -> str:
        return p.vertex if p.is_lazy else self._by_name[p.edges[0]].tail

    def target(self, p: Path) -> str:
        return p.vertex if p.is_lazy else self._by_name[p.edges[-1]].head

    def compose(self, p: Path, q: Path) -> AlgebraElement:
        """p∘q: q first. Zero unless the head of q is the tail of p."""
        for e in p.edges + q.edges:
            self.edge(e)
        if self.target(q) != self.source(p):
            return ZERO
        if p.is_lazy:
            return AlgebraElement.from_path(q)
        if q.is_lazy:
            return AlgebraElement.from_path(p)
        return AlgebraElement.from_path(Path(q.edges + p.edges))

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        out: dict[Path, Fraction] = {}
        for p, c in a._terms.items():
            for q, d in b._terms.items():
                for r, s in self.compose(p, q)._terms.items():
                    out[r] = out.get(r, 0) + c * d * s
        return AlgebraElement(out)

    def commutator(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """Graded commutator on homogeneous pieces: ab - (-1)^{|a||b|} ba."""
        out = ZERO
        for p, c in a._terms.items():
            for q, d in b._terms.items():
                s = (-1) ** ((self.path_degree(p) * self.path_degree(q)) % 2)
                out = out + (self.compose(p, q) - self.compose(q, p).scale(s)).scale(c * d)
        return out

    def element(self, *terms) -> AlgebraElement:
        """element((coeff, edge, edge, ...), ...) with edges in application order."""
        out = ZERO
        for coeff, *edges in terms:
            out = out + AlgebraElement.from_path(self.path(*edges), coeff)
        return out

    def is_cycle(self, word: tuple) -> bool:
        if not word:
            return False
        for a, b in zip(word, word[1:] + word[:1]):
            if self.edge(a).head != self.edge(b).tail:
                return False
        return True

    # cyclic words -------------------------------------------------------

    def canonical(self, word: tuple) -> tuple[int, tuple]:
        """Least rotation of a cyclic word and its Koszul sign.

        Moving the first k applied edges to the end turns p∘q into q∘p and costs
        (-1)^{|p||q|}. Returns sign 0 when a symmetry of the word carries sign -1.
        """
        word = tuple(word)
        n = len(word)
        degs = [self.deg(e) for e in word]
        total = sum(degs)
        best, signs = None, set()
        head = 0
        for k in range(n):
            rot = word[k:] + word[:k]
            s = -1 if (head * (total - head)) % 2 else 1
            if best is None or rot < best:
                best, signs = rot, {s}
            elif rot == best:
                signs.add(s)
            head += degs[k]
        if len(signs) > 1:
            return 0, best
        return signs.pop(), best

    def cyclic(self, terms: Iterable[tuple]) -> CyclicElement:
        """cyclic([(coeff, word), ...]) with words in application order."""
        out: dict[tuple, Fraction] = {}
        for coeff, word in terms:
            word = tuple(word)
            if not self.is_cycle(word):
                raise InputError(f"word {';'.join(word)} is not a closed cycle")
            s, w = self.canonical(word)
            if s:
                out[w] = out.get(w, 0) + s * Fraction(coeff)
        return CyclicElement(out)

    def project_cyclic(self, a: AlgebraElement) -> CyclicElement:
        """Image in the quotient by graded commutators; open paths die."""
        out: dict[tuple, Fraction] = {}
        for p, c in a._terms.items():
            if p.is_lazy:
                key = ("l_" + p.vertex,)
                out[key] = out.get(key, 0) + c
                continue
            if not self.is_cycle(p.edges):
                continue
            s, w = self.canonical(p.edges)
            if s:
                out[w] = out.get(w, 0) + s * c
        return CyclicElement(out)

    def cyclic_degree(self, H: CyclicElement) -> set[int]:
        return {self.path_degree(w) for w in H._terms}


def circular_derivative(Q: GradedQuiver, H: CyclicElement, f: str) -> AlgebraElement:
    """∂°_f: each occurrence r∘f∘q of f yields (-1)^{|r|(|f|+|q|)} q∘r."""
    df = Q.deg(f)
    out: dict[Path, Fraction] = {}
    for word, c in H._terms.items():
        for i, e in enumerate(word):
            if e != f:
                continue
            q, r = word[:i], word[i + 1:]
            s = -1 if (Q.path_degree(r) * (df + Q.path_degree(q))) % 2 else 1
            new = r + q
            p = Path(new) if new else Path.lazy(Q.edge(f).head)
            out[p] = out.get(p, 0) + s * c
    return AlgebraElement(out)


# ---------------------------------------------------------------------------
# CY4 completion

@dataclass(frozen=True)
class DualPair:
    """One dual pair e, e* = sign * partner, recorded once."""

    edge: str
    sign: int
    partner: str
    fresh: bool


@dataclass
class QuiverSpec:
    """Input data: the graded quiver Q, pairing requests and the superpotential."""

    vertices: tuple
    edges: tuple  # of Edge
    pairing: dict = field(default_factory=dict)  # name -> "name'" or "-name'"
    superpotential: tuple = ()  # of (Fraction, tuple of edge names)


def _signed(text: str) -> tuple[int, str]:
    text = text.strip()
    if text.startswith("-"):
        return -1, text[1:]
    if text.startswith("+"):
        return 1, text[1:]
    return 1, text


def double(spec: QuiverSpec) -> tuple[GradedQuiver, dict, list]:
    """Doubled quiver Q̄ with the dual map and the list of pairs (each once)."""
    base = GradedQuiver(spec.vertices, spec.edges)
    names = [e.name for e in base.edges]
    dual: dict[str, tuple[int, str]] = {}
    fresh_edges: list[Edge] = []
    pairs: list[DualPair] = []
    for key, val in spec.pairing.items():
        if key not in base:
            raise StructuralError(f"pairing.{key}: not an edge of the quiver")
        if not isinstance(val, str):
            raise StructuralError(f"pairing.{key}: expected an edge name")
        s, other = _signed(val)
        e = base.edge(key)
        if other in base:
            o = base.edge(other)
            if e.degree + o.degree != -2 or o.tail != e.head or o.head != e.tail:
                raise StructuralError(f"pairing.{key}: {other!r} is not degree/vertex compatible")
            if other == key and (s != 1 or e.degree != -1):
                raise StructuralError(f"pairing.{key}: only degree -1 loops may be self-paired, with sign +")
            for a, b in ((key, other), (other, key)):
                if a in dual and dual[a] != (s, b):
                    raise StructuralError(f"pairing.{a}: not an involution")
                dual[a] = (s, b)
        else:
            if s != 1:
                raise StructuralError(f"pairing.{key}: a fresh dual cannot carry a sign")
            if key in dual:
                raise StructuralError(f"pairing.{key}: paired twice")
            dual[key] = (1, other)
            dual[other] = (1, key)
            fresh_edges.append(Edge(other, e.head, e.tail, -2 - e.degree))
    for name in names:
        if name in dual:
            continue
        e = base.edge(name)
        if e.degree == -1 and e.tail == e.head:
            dual[name] = (1, name)
        else:
            star = name + "*"
            dual[name] = (1, star)
            dual[star] = (1, name)
            fresh_edges.append(Edge(star, e.head, e.tail, -2 - e.degree))
    for e in fresh_edges:
        if e.degree not in ALLOWED_DEGREES:
            raise StructuralError(f"edge {dual[e.name][1]!r} has no admissible dual degree")
    doubled = GradedQuiver(base.vertices, base.edges + tuple(fresh_edges))
    fresh_names = {e.name for e in fresh_edges}
    seen = set()
    for name in names:
        if name in seen:
            continue
        s, other = dual[name]
        seen.update({name, other})
        pairs.append(DualPair(name, s, other, other in fresh_names))
    return doubled, dual, pairs


class MasterEquationError(StructuralError):
    def __init__(self, residue: CyclicElement):
        super().__init__("master equation fails; residue:\n" + residue.emit())
        self.residue = residue


def master_bracket(doubled: GradedQuiver, pairs: list, H: CyclicElement, strict: bool = False):
    """{H,H} = Σ over dual pairs of (∂H/∂e)(∂H/∂e*), projected to cyclic words.

    With strict=True the un-projected path-algebra element is returned instead.
    """
    total = ZERO
    for pr in pairs:
        a = circular_derivative(doubled, H, pr.edge)
        b = circular_derivative(doubled, H, pr.partner).scale(pr.sign)
        total = total + doubled.mul(a, b)
    return total if strict else doubled.project_cyclic(total)


@dataclass
class CY4Quiver:
    spec: QuiverSpec
    doubled: GradedQuiver
    full: GradedQuiver
    dual: dict
    pairs: list
    potential: CyclicElement
    differential: dict  # generator -> AlgebraElement

    @property
    def generators(self) -> tuple:
        return tuple(e.name for e in self.full.edges)

    def d(self, g: str) -> AlgebraElement:
        if g not in self.differential:
            raise InputError(f"unknown generator {g!r}")
        return self.differential[g]

    def d_extend(self, a: AlgebraElement) -> AlgebraElement:
        return d_extend(self, a)


def loop_name(v: str) -> str:
    return f"o_{v}"


def cy4_complete(spec: QuiverSpec, check: bool = True) -> CY4Quiver:
    doubled, dual, pairs = double(spec)
    H = doubled.cyclic(spec.superpotential)
    degs = doubled.cyclic_degree(H)
    if degs - {-1}:
        raise StructuralError(f"superpotential is not homogeneous of degree -1 (degrees {sorted(degs)})")
    if check:
        res = master_bracket(doubled, pairs, H)
        if res:
            raise MasterEquationError(res)
    loops = []
    for v in doubled.vertices:
        name = loop_name(v)
        if name in doubled:
            raise StructuralError(f"edge name {name!r} is reserved for the degree -3 loop")
        loops.append(Edge(name, v, v, -3))
    full = GradedQuiver(doubled.vertices, doubled.edges + tuple(loops))
    base_names = {e.name for e in spec.edges}
    diff: dict[str, AlgebraElement] = {}
    for name, (s, other) in dual.items():
        if name in base_names:
            diff[name] = circular_derivative(doubled, H, other).scale(s)
        else:
            e = doubled.edge(other)
            sign = -1 if (e.degree + 1) % 2 else 1
            diff[name] = circular_derivative(doubled, H, other).scale(sign)
    for v in doubled.vertices:
        lv = AlgebraElement.from_path(Path.lazy(v))
        acc = ZERO
        for pr in pairs:
            a = AlgebraElement.from_path(Path((pr.edge,)))
            if pr.partner == pr.edge:
                acc = acc + doubled.mul(a, a)
            else:
                b = AlgebraElement.from_path(Path((pr.partner,)), pr.sign)
                acc = acc + doubled.commutator(a, b)
        diff[loop_name(v)] = full.mul(full.mul(lv, acc), lv)
    return CY4Quiver(spec, doubled, full, dual, pairs, H, diff)


def d_extend(Q: CY4Quiver, a: AlgebraElement) -> AlgebraElement:
    """Graded Leibniz: d(p∘q) = d(p)∘q + (-1)^{|p|} p∘d(q)."""
    full = Q.full
    out: dict[Path, Fraction] = {}
    for p, c in a._terms.items():
        edges = p.edges
        after = 0
        for i in range(len(edges) - 1, -1, -1):
            s = -1 if after % 2 else 1
            pre, post = edges[:i], edges[i + 1:]
            for r, dc in Q.d(edges[i])._terms.items():
                new = pre + r.edges + post
                key = Path(new) if new else Path.lazy(full.source(p))
                out[key] = out.get(key, 0) + s * c * dc
            after += full.deg(edges[i])
    return AlgebraElement(out)


@dataclass
class DGAReport:
    ok: bool
    generator: str | None = None
    value: AlgebraElement | None = None


def verify_dga(Q: CY4Quiver) -> DGAReport:
    for g in Q.generators:
        dg = Q.d(g)
        if dg and {Q.full.path_degree(p) for p in dg.terms} != {Q.full.deg(g) + 1}:
            return DGAReport(False, g, dg)
        dd = d_extend(Q, dg)
        if dd:
            return DGAReport(False, g, dd)
    return DGAReport(True)


# ---------------------------------------------------------------------------
# grafting the framing quivers

def _frame_names(r: int, targets: tuple, ms_l: int | None):
    if r == 2 and ms_l is None:
        chain = ["inf"]
    else:
        chain = [f"v{i}" for i in range(1, r)]
    cross = chain[-1]
    edges = [Edge(f"t{i}", chain[i - 1], chain[i], 0) for i in range(1, r - 1)]
    edges += [Edge(f"t{r - 1}_{v}", cross, v, 0) for v in targets]
    verts = list(chain)
    potential = []
    if ms_l is not None:
        verts.append("v0")
        edges += [
            Edge("tm1", "v1", "v0", 0),
            Edge("t0", f"v{ms_l}", "v0", 0),
            Edge("rho0", f"v{ms_l - 1}", "v0", -1),
        ]
        potential.append((Fraction(1), (f"t{ms_l - 1}", "t0", "rho0*")))
    return verts, edges, potential


def graft(Q: CY4Quiver, frame: str, r: int | None = None, l: int | None = None) -> CY4Quiver:
    """Attach the JS, Flag(r) or MS(r, l) framing chain and re-complete."""
    frame = frame.lower()
    if frame == "js":
        r, l = 2, None
    elif frame == "flag":
        if r is None or r < 2:
            raise InputError("Flag(r) needs r >= 2")
        l = None
    elif frame == "ms":
        if r is None or l is None or r < 3 or not (2 <= l < r):
            raise InputError("MS(r, l) needs r >= 3 and 2 <= l < r")
    else:
        raise InputError(f"unknown frame {frame!r}")
    spec = Q.spec
    verts, edges, pot = _frame_names(r, tuple(spec.vertices), l)
    clash = set(verts) & set(spec.vertices)
    taken = {e.name for e in Q.full.edges}
    clash |= {e.name for e in edges} & taken
    clash |= {e.name + "*" for e in edges} & taken
    if clash:
        raise InputError(f"framing names clash with the quiver: {sorted(clash)}")
    new = QuiverSpec(
        vertices=tuple(verts) + tuple(spec.vertices),
        edges=tuple(edges) + tuple(spec.edges),
        pairing=dict(spec.pairing),
        superpotential=tuple(pot) + tuple(spec.superpotential),
    )
    return cy4_complete(new)


def delete_term(spec: QuiverSpec, index: int) -> QuiverSpec:
    terms = list(spec.superpotential)
    del terms[index]
    return QuiverSpec(spec.vertices, spec.edges, dict(spec.pairing), tuple(terms))
