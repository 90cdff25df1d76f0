"""The ten acceptance criteria, each run at its stated time bound.

Every criterion prints one PASS/FAIL line; the lines are also collected for
the pytest terminal summary. Run directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional

import pytest

from cy4 import suites


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[], list]
    limit: Optional[float]  # seconds; None when only exactness is required
    prefixes: tuple = ()


def _select(checks, prefixes):
    return [c for c in checks if c.id.startswith(prefixes)] if prefixes else checks


CRITERIA = [
    Criterion(1, "worked differentials (Example quiver, C^4)", suites.worked_differentials, 1.0),
    Criterion(2, "master equation and d^2 = 0, grafts, term deletion", suites.master_checks, 5.0),
    Criterion(3, "Euler forms symmetric, even, zero on C^4, 2de on a point", suites.euler_checks, None),
    Criterion(4, "Ext complexes: delta^2 = 0, chi, Ext^1 = 4, Serre symmetry", suites.ext_checks, 30.0),
    Criterion(5, "fixed-point counts 1, 4, 10, 26, 59, 140 vs oracle", suites.fixed_point_checks, 60.0),
    Criterion(6, "sign suite: pentagon, double dual, o_V* / o_V, OT comparison", suites.run_signs, 5.0),
    Criterion(7, "series: explicit expansion, sqrt-e, residues", suites.run_series, 10.0),
    Criterion(8, "projective-bundle pushforward and bracket pushdown", suites.run_toy, 10.0,
              ("toy.pushforward", "toy.fiber_euler", "toy.bracket_pushdown")),
    Criterion(9, "wall-crossing: JS round trip, DT/PT, Hilb, flag, epsilon", suites.run_wc, 20.0),
    Criterion(10, "fixed-locus residues and self-dual cancellation", suites.run_toy, 5.0,
              ("toy.locus", "toy.self_dual")),
]


def evaluate(c: Criterion) -> tuple[bool, str]:
    start = time.perf_counter()
    checks = _select(c.run(), c.prefixes)
    elapsed = time.perf_counter() - start
    failed = [ch for ch in checks if not ch.ok]
    in_time = c.limit is None or elapsed < c.limit
    ok = bool(checks) and not failed and in_time
    bound = f"< {c.limit:g}s" if c.limit is not None else "exact"
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f}s ({bound})"
    if failed:
        detail += "; failed: " + ", ".join(ch.id + (f" [{ch.witness}]" if ch.witness else "") for ch in failed)
    if not in_time:
        detail += "; time bound exceeded"
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {c.number:>2}: {c.title}: {detail}"


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion{c.number}")
def test_criterion(criterion):
    from conftest import ACCEPTANCE

    ok, line = evaluate(criterion)
    ACCEPTANCE[criterion.number] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
