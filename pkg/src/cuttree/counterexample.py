"""Finite truncations of the hub-and-path graph with no infinite Gomory-Hu tree.

Path vertices ``v_0 .. v_N`` carry path edges ``e_n = v_n v_{n+1}`` of weight
``c(e_0) = 2, c(e_n) = c(e_{n-1}) + n + 1``; a hub ``v_inf`` is joined to every
path vertex by a unit edge. In the infinite graph the prefix ``V_n = {v_0..v_n}``
is the only optimal ``v_n - v_m`` cut for every ``n < m``, and these cuts form a
strictly increasing chain. A truncation is an ordinary finite graph, so it has
a Gomory-Hu tree; what survives is a chain of unique optimal prefixes whose
length grows with ``N``. :func:`analyze_chain` measures that by enumeration.

Vertex ``v_n`` has index ``n``; the hub has index ``N + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import InputError
from .exhaustive import Value
from .graph import Cut, WeightedGraph
from .verifier import brute_engine

MAX_ANALYZE_N = 16


def edge_weight(n: int) -> Fraction:
    """Weight of ``e_n``; equals ``(n*n + 3*n + 4) / 2``."""
    if n < 0:
        raise InputError(f"edge index must be nonnegative, got {n}")
    return Fraction(n * n + 3 * n + 4, 2)


def hub(N: int) -> int:
    return N + 1


def prefix(N: int, n: int) -> Cut:
    """``V_n = {v_0, ..., v_n}`` inside the truncation."""
    return Cut.of(N + 2, range(n + 1))


def generate_truncation(N: int) -> WeightedGraph:
    if N < 1:
        raise InputError(f"truncation needs N >= 1, got {N}")
    path = [(n, n + 1, edge_weight(n)) for n in range(N)]
    star = [(n, hub(N), Fraction(1)) for n in range(N + 1)]
    labels = [f"v{n}" for n in range(N + 1)] + ["vinf"]
    return WeightedGraph.from_edges(N + 2, path + star, labels)


# other graph families can register here under a name
FAMILIES: dict[str, Callable[[int], WeightedGraph]] = {"hub-path": generate_truncation}


@dataclass(frozen=True)
class PairRow:
    n: int
    m: int
    lam: Value
    minimizers: tuple[Cut, ...]

    def unique_prefix(self, N: int) -> bool:
        return self.minimizers == (prefix(N, self.n),)


@dataclass
class ChainReport:
    N: int
    graph: WeightedGraph
    rows: list[PairRow] = field(default_factory=list)

    def unique_pairs(self) -> list[tuple[int, int]]:
        return [(r.n, r.m) for r in self.rows if r.unique_prefix(self.N)]

    def chain(self) -> list[Cut]:
        """Longest ``V_0 < V_1 < ...`` where each ``V_j`` is the unique optimal
        ``v_j - v_m`` cut for at least one ``m > j``."""
        realized = {r.n for r in self.rows if r.unique_prefix(self.N)}
        out = []
        j = 0
        while j in realized:
            out.append(prefix(self.N, j))
            j += 1
        return out

    def interior_bound(self) -> int:
        """Largest ``M`` such that every pair ``n < m <= M`` has ``V_n`` as unique optimum."""
        bad_m = [r.m for r in self.rows if not r.unique_prefix(self.N)]
        return (min(bad_m) - 1) if bad_m else self.N

    def lines(self) -> list[str]:
        g = self.graph
        out = ["pairs: n m lambda unique_prefix minimizers"]
        for r in self.rows:
            mins = " ".join("{" + ",".join(g.label(v) for v in c) + "}" for c in r.minimizers)
            out.append(f"{r.n} {r.m} {r.lam} {'yes' if r.unique_prefix(self.N) else 'no'} {mins}")
        chain = self.chain()
        out.append(f"chain of unique optimal prefixes: length {len(chain)} "
                   + " < ".join("V" + str(j) for j in range(len(chain))))
        out.append(f"all pairs n < m <= {self.interior_bound()} have V_n as their only optimal cut")
        out.append("this truncation is finite and has a Gomory-Hu tree; only the chain length "
                   "grows with N")
        return out


def analyze_chain(N: int) -> ChainReport:
    """Enumerate every optimal ``v_n - v_m`` cut of the truncation, ``n < m <= N``."""
    if not 1 <= N <= MAX_ANALYZE_N:
        raise InputError(f"analyze_chain supports 1 <= N <= {MAX_ANALYZE_N}, got {N}")
    g = generate_truncation(N)
    engine = brute_engine(g, allow_large=True)
    report = ChainReport(N, g)
    for n in range(N + 1):
        for m in range(n + 1, N + 1):
            val, masks = engine.table.pair_min(n, m)
            report.rows.append(PairRow(n, m, val, tuple(Cut(g.n, int(x)) for x in masks)))
    return report
