"""The two worked quivers used throughout: the four-cycle example and ℂ⁴."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .quiver import Edge, QuiverSpec


def perm_sign(seq) -> int:
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def example_spec() -> QuiverSpec:
    """Square e1..e4 on vertices 1..4 with degree -1 diagonals rho1: 4->2, rho2: 1->3."""
    edges = (
        Edge("e1", "1", "2", 0),
        Edge("e2", "2", "3", 0),
        Edge("e3", "3", "4", 0),
        Edge("e4", "4", "1", 0),
        Edge("rho1", "4", "2", -1),
        Edge("rho2", "1", "3", -1),
    )
    one = Fraction(1)
    H = (
        (one, ("e1", "e2", "rho2*")),
        (one, ("e2", "e3", "rho1")),
        (one, ("e3", "e4", "rho2")),
        (-one, ("e4", "e1", "rho1*")),
    )
    return QuiverSpec(("1", "2", "3", "4"), edges, {}, H)


def c4_spec() -> QuiverSpec:
    """One vertex, loops x1..x4 and c_ij with H = Σ sign(i,j,k,l) c_ij∘[x_k, x_l]."""
    xs = tuple(Edge(f"x{i}", "0", "0", 0) for i in range(1, 5))
    cs = tuple(Edge(f"c{i}{j}", "0", "0", -1) for i, j in combinations(range(1, 5), 2))
    pairing = {}
    terms = []
    for i, j in combinations(range(1, 5), 2):
        k, l = (m for m in range(1, 5) if m not in (i, j))
        s = perm_sign((i, j, k, l))
        if i == 1:
            pairing[f"c{i}{j}"] = ("" if s > 0 else "-") + f"c{k}{l}"
        terms.append((Fraction(s), (f"x{l}", f"x{k}", f"c{i}{j}")))
        terms.append((Fraction(-s), (f"x{k}", f"x{l}", f"c{i}{j}")))
    return QuiverSpec(("0",), xs + cs, pairing, tuple(terms))


def point_spec() -> QuiverSpec:
    return QuiverSpec(("0",), (), {}, ())
