"""Brute-force oracles and validity checks for trees and laminar families.

Everything here answers cut questions by enumerating all subsets, never by
max-flow, so it is independent of :mod:`cuttree.mincut`. The one exception is
:func:`verify_gh_tree` on graphs above the enumeration cap, which falls back to
max-flow and says so in the report.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import EnumerationCapError, InputError, PropertyViolation
from .exhaustive import CutTable, check_cap
from .graph import Cut, WeightedGraph, crosses, is_laminar_pair
from .mincut import GraphEngine
from .submodular import OracleEngine, SetFunctionOracle, graph_cut_oracle


@dataclass(frozen=True)
class Finding:
    kind: str
    subject: tuple
    message: str

    def line(self) -> str:
        return f"{self.kind} {' '.join(map(str, self.subject))}: {self.message}"


@dataclass
class Report:
    check: str
    checked: int = 0
    findings: list[Finding] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, kind: str, subject: tuple, message: str) -> None:
        self.findings.append(Finding(kind, subject, message))

    def lines(self) -> list[str]:
        return [f.line() for f in self.findings]


@lru_cache(maxsize=64)
def _graph_oracle(g: WeightedGraph) -> SetFunctionOracle:
    return graph_cut_oracle(g)


def brute_engine(obj, allow_large: bool = False) -> OracleEngine:
    """Engine answering every query by exhaustive enumeration."""
    if isinstance(obj, OracleEngine):
        return obj
    if isinstance(obj, WeightedGraph):
        obj = _graph_oracle(obj)
    if not isinstance(obj, SetFunctionOracle):
        raise TypeError(f"expected a graph or an oracle, got {type(obj).__name__}")
    return OracleEngine(obj, allow_large)


def _table(obj, allow_large: bool) -> CutTable:
    return brute_engine(obj, allow_large).table


def brute_force_optimal_cuts(obj, u: int, v: int,
                             allow_large: bool = False) -> tuple[Fraction, list[Cut]]:
    """Exact ``lambda(u, v)`` and every optimal u-v cut, by enumeration."""
    check_cap(obj.n, allow_large)
    return _table(obj, allow_large).minimizers(u, v)


def all_pairs_lambda(obj, allow_large: bool = False) -> list[list[Fraction | None]]:
    t = _table(obj, allow_large)
    n = t.n
    lam: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u != v:
                lam[u][v] = t.pair_min(u, v)[0]
    return lam


def _lambda_source(obj, allow_large: bool):
    try:
        check_cap(obj.n, allow_large)
        return brute_engine(obj, allow_large), "exhaustive"
    except EnumerationCapError:
        if isinstance(obj, WeightedGraph):
            return GraphEngine(obj), "max-flow"
        raise


def verify_gh_tree(obj, tree, mode: str = "edges-only", allow_large: bool = False,
                   threads: int = 1) -> Report:
    """Check a Gomory-Hu tree.

    ``edges-only``: for each tree edge ab, the stored lambda and the value of
    its fundamental cut both equal ``lambda(a, b)``; this already implies the
    tree property for all pairs. ``all-pairs`` additionally compares the tree
    path minimum with ``lambda(u, v)`` for every pair. ``threads > 1`` fans
    the all-pairs lambda queries out to a thread pool; findings keep pair order.
    """
    if mode not in ("edges-only", "all-pairs"):
        raise InputError(f"mode must be 'edges-only' or 'all-pairs', got {mode!r}")
    if tree.n != obj.n:
        raise InputError(f"tree spans {tree.n} vertices, input has {obj.n}")
    engine, source = _lambda_source(obj, allow_large)
    report = Report(f"gh-tree/{mode}")
    if source != "exhaustive":
        report.notes.append(f"lambda values from {source}")
    for a, b, w in tree.tree_edges:
        report.checked += 1
        lam = engine.lam(a, b)
        fc = tree.fundamental_cut(a, b)
        val = engine.value(fc)
        if w != lam:
            report.add("edge-lambda", (a, b), f"stored lambda {w} != lambda({a},{b}) = {lam}")
        if val != lam:
            report.add("edge-cut", (a, b),
                       f"fundamental cut {fc} has value {val} != lambda({a},{b}) = {lam}")
    if mode == "all-pairs":
        pm = tree.path_min_matrix()
        pairs = [(u, v) for u in range(tree.n) for v in range(u + 1, tree.n)]
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                lams = list(pool.map(lambda p: engine.lam(*p), pairs))
        else:
            lams = [engine.lam(u, v) for u, v in pairs]
        for (u, v), lam in zip(pairs, lams):
            report.checked += 1
            if pm[u][v] != lam:
                report.add("pair", (u, v), f"tree path minimum {pm[u][v]} != lambda = {lam}")
    return report


def verify_laminar(family) -> Report:
    """Every two members are disjoint or nested."""
    cuts = [m.cut if hasattr(m, "cut") else m for m in family]
    report = Report("laminar")
    for i, x in enumerate(cuts):
        for y in cuts[i + 1:]:
            report.checked += 1
            if not is_laminar_pair(x, y):
                kind = "crossing" if crosses(x, y) else "overlap"
                report.add(kind, (x, y), f"{x} and {y} are neither disjoint nor nested")
    return report


def verify_separation(obj, family, pairs: Iterable[tuple[int, int]] | None = None,
                      allow_large: bool = False) -> Report:
    """Each pair is separated by a member whose value equals ``lambda``.

    ``obj`` may be a graph or oracle (exhaustive lambda) or an engine.
    """
    engine = obj if hasattr(obj, "smallest") else brute_engine(obj, allow_large)
    n = engine.n
    todo = [(u, v) for u in range(n) for v in range(u + 1, n)] if pairs is None else list(pairs)
    cuts = [m.cut if hasattr(m, "cut") else m for m in family]
    report = Report("separation")
    for u, v in todo:
        report.checked += 1
        lam = engine.lam(u, v)
        if not any(c.separates(u, v) and engine.value(c) == lam for c in cuts):
            report.add("unseparated", (u, v), f"no member separates {u},{v} at lambda = {lam}")
    return report


def lambda_spectrum(obj, allow_large: bool = False) -> list[Fraction]:
    """Sorted distinct values of ``lambda`` over all pairs (at most n-1 of them)."""
    n = obj.n
    if n < 2:
        return []
    lam = all_pairs_lambda(obj, allow_large)
    values = sorted({lam[u][v] for u in range(n) for v in range(n) if u != v})
    if len(values) > n - 1:
        raise PropertyViolation(f"{len(values)} distinct lambda values on {n} vertices")
    return values
