"""Exact max-flow / min-cut on undirected rational-weighted graphs.

Each undirected edge is a pair of opposite arcs sharing one capacity. Weights
are brought to a common denominator so Edmonds-Karp runs on Python integers;
the flow value is divided back at the end, so the result is exact.

After a maximum flow, the vertices reachable from ``u`` in the residual network
form the smallest optimal u-v cut, and the vertices that can still reach ``v``
form the smallest optimal v-u cut. Both come out of one flow computation.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .graph import Cut, WeightedGraph, cut_value


@dataclass(frozen=True)
class FlowResult:
    value: Fraction
    source_side: Cut  # reachable from u in the residual network
    sink_side: Cut  # vertices that can reach v in the residual network


@dataclass(frozen=True)
class CutPairResult:
    lam: Fraction
    smallest: Cut
    largest: Cut


def _check_pair(g: WeightedGraph, u: int, v: int) -> None:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InputError(f"vertex out of range: ({u}, {v}) for n={g.n}")
    if u == v:
        raise InputError(f"source and sink coincide ({u})")


def _integer_capacities(g: WeightedGraph) -> tuple[list[dict[int, int]], int]:
    denom = 1
    for _, _, w in g.edges:
        denom = math.lcm(denom, w.denominator)
    cap: list[dict[int, int]] = [{} for _ in range(g.n)]
    for a, b, w in g.edges:
        c = w.numerator * (denom // w.denominator)
        cap[a][b] = c
        cap[b][a] = c
    return cap, denom


def _bfs(adj: list[list[int]], residual: list[dict[int, int]], start: int,
         reverse: bool = False) -> list[int]:
    """Vertices reachable from ``start`` (or reaching it, when ``reverse``)."""
    seen = [False] * len(adj)
    seen[start] = True
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            r = residual[y][x] if reverse else residual[x][y]
            if r > 0 and not seen[y]:
                seen[y] = True
                order.append(y)
                queue.append(y)
    return order


def max_flow(g: WeightedGraph, u: int, v: int) -> FlowResult:
    """Edmonds-Karp from ``u`` to ``v``; neighbours are scanned by index."""
    _check_pair(g, u, v)
    residual, denom = _integer_capacities(g)
    adj = [sorted(nbrs) for nbrs in residual]
    total = 0
    while True:
        parent = {u: u}
        queue = deque([u])
        while queue and v not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and residual[x][y] > 0:
                    parent[y] = x
                    queue.append(y)
        if v not in parent:
            break
        path = []
        y = v
        while y != u:
            path.append((parent[y], y))
            y = parent[y]
        delta = min(residual[a][b] for a, b in path)
        for a, b in path:
            residual[a][b] -= delta
            residual[b][a] += delta
        total += delta
    src = Cut.of(g.n, _bfs(adj, residual, u))
    snk = Cut.of(g.n, _bfs(adj, residual, v, reverse=True))
    return FlowResult(Fraction(total, denom), src, snk)


def lam(g: WeightedGraph, u: int, v: int) -> Fraction:
    """Minimum u-v cut value."""
    return max_flow(g, u, v).value


def smallest_optimal_cut(g: WeightedGraph, u: int, v: int) -> Cut:
    return max_flow(g, u, v).source_side


def largest_optimal_cut(g: WeightedGraph, u: int, v: int) -> Cut:
    return max_flow(g, u, v).sink_side.complement()


def min_cut(g: WeightedGraph, u: int, v: int) -> CutPairResult:
    f = max_flow(g, u, v)
    return CutPairResult(f.value, f.source_side, f.sink_side.complement())


class GraphEngine:
    """Memoised cut queries on a fixed graph.

    Implements the engine interface used by the constructions: ``n``,
    ``value(X)``, ``lam(u, v)`` and ``smallest(u, v)``. One flow per unordered
    pair answers both orientations.
    """

    def __init__(self, g: WeightedGraph):
        self.graph = g
        self.n = g.n
        self._flows: dict[tuple[int, int], FlowResult] = {}
        self._values: dict[int, Fraction] = {}

    def _flow(self, u: int, v: int) -> tuple[FlowResult, bool]:
        key = (min(u, v), max(u, v))
        if key not in self._flows:
            self._flows[key] = max_flow(self.graph, *key)
        return self._flows[key], key[0] == u

    def value(self, x: Cut) -> Fraction:
        if x.mask not in self._values:
            self._values[x.mask] = cut_value(self.graph, x)
        return self._values[x.mask]

    def lam(self, u: int, v: int) -> Fraction:
        _check_pair(self.graph, u, v)
        return self._flow(u, v)[0].value

    def smallest(self, u: int, v: int) -> Cut:
        _check_pair(self.graph, u, v)
        f, forward = self._flow(u, v)
        return f.source_side if forward else f.sink_side

    def largest(self, u: int, v: int) -> Cut:
        return self.smallest(v, u).complement()
