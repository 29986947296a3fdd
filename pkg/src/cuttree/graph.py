"""Exact-arithmetic weighted graphs, vertex-subset cuts and cut values.

Vertices are the dense indices ``0..n-1``. A :class:`Cut` is a vertex subset
stored as an integer bitmask together with the ground-set size, so set algebra
is a handful of integer operations. Weights are :class:`fractions.Fraction`
throughout; nothing in here touches floating point.
"""
from __future__ import annotations

import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InputError

Rational = Fraction
Edge = tuple[int, int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"2.75"`` or ``"7/3"`` into an exact Fraction."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction, decimal: int | None = None) -> str:
    """Integers bare, otherwise ``p/q``; ``decimal=k`` rounds to k places."""
    x = Fraction(x)
    if decimal is None:
        return str(x)
    scaled = abs(x) * 10**decimal
    q = int(scaled + Fraction(1, 2))  # round half up on the magnitude
    sign = "-" if x < 0 and q else ""
    if decimal <= 0:
        return f"{sign}{q}"
    digits = str(q).rjust(decimal + 1, "0")
    return f"{sign}{digits[:-decimal]}.{digits[-decimal:]}"


@dataclass(frozen=True, order=True)
class Cut:
    """A subset of ``{0, ..., n-1}``."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0 or self.mask < 0 or self.mask >> self.n:
            raise InputError(f"mask {self.mask:#x} does not fit a ground set of size {self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "Cut":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise InputError(f"vertex {v} out of range for n={n}")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "Cut":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Cut":
        return cls(n, (1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def _check(self, other: "Cut") -> None:
        if not isinstance(other, Cut):
            raise TypeError(f"expected Cut, got {type(other).__name__}")
        if other.n != self.n:
            raise InputError(f"cut length mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "Cut") -> "Cut":
        self._check(other)
        return Cut(self.n, self.mask | other.mask)

    def __and__(self, other: "Cut") -> "Cut":
        self._check(other)
        return Cut(self.n, self.mask & other.mask)

    def __sub__(self, other: "Cut") -> "Cut":
        self._check(other)
        return Cut(self.n, self.mask & ~other.mask)

    def complement(self) -> "Cut":
        return Cut(self.n, ~self.mask & ((1 << self.n) - 1))

    def issubset(self, other: "Cut") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "Cut") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def separates(self, u: int, v: int) -> bool:
        return (u in self) != (v in self)

    def is_cut_for(self, u: int, v: int) -> bool:
        """True when this is a u-v cut: u inside, v outside."""
        return u in self and v not in self

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members())) + "}"

    def __repr__(self) -> str:
        return f"Cut(n={self.n}, {self})"


def union(x: Cut, y: Cut) -> Cut:
    return x | y


def intersection(x: Cut, y: Cut) -> Cut:
    return x & y


def difference(x: Cut, y: Cut) -> Cut:
    return x - y


def complement(x: Cut) -> Cut:
    return x.complement()


def is_laminar_pair(x: Cut, y: Cut) -> bool:
    """Disjoint or nested."""
    return x.isdisjoint(y) or x.issubset(y) or y.issubset(x)


def crosses(x: Cut, y: Cut) -> bool:
    """All four corners ``x&y, x-y, y-x, V-(x|y)`` are nonempty."""
    x._check(y)
    full = (1 << x.n) - 1
    return bool(
        x.mask & y.mask
        and x.mask & ~y.mask
        and y.mask & ~x.mask
        and full & ~(x.mask | y.mask)
    )


@dataclass(frozen=True)
class WeightedGraph:
    """Finite simple undirected graph with strictly positive rational weights.

    Build through :meth:`from_edges`, which merges parallel edges, drops loops
    and zero-weight edges and canonicalises the edge order. The raw constructor
    validates but does not normalise.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("negative vertex count")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u},{v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"parallel edge {key}")
            seen.add(key)
            if not isinstance(w, Fraction) or w <= 0:
                raise InputError(f"edge {key} needs a positive Fraction weight, got {w!r}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InputError("label table length differs from n")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, object]],
        labels: Iterable[str] | None = None,
    ) -> "WeightedGraph":
        merged: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for u, v, w in edges:
            w = w if isinstance(w, Fraction) else parse_rational(str(w))
            if w < 0:
                raise InputError(f"negative weight {w} on edge ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v or w == 0:
                continue
            merged[(min(u, v), max(u, v))] += w
        canon = tuple((u, v, w) for (u, v), w in sorted(merged.items()))
        return cls(n, canon, tuple(labels) if labels is not None else None)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def adjacency(self) -> list[dict[int, Fraction]]:
        adj: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        adj = self.adjacency()
        comp = [-1] * self.n
        out = []
        for start in range(self.n):
            if comp[start] >= 0:
                continue
            comp[start] = len(out)
            queue, members = deque([start]), [start]
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if comp[y] < 0:
                        comp[y] = comp[start]
                        members.append(y)
                        queue.append(y)
            out.append(tuple(sorted(members)))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> "WeightedGraph":
        """Subgraph on ``vertices`` relabelled to 0..k-1 in the given order."""
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[v], w) for u, v, w in self.edges if u in index and v in index]
        labels = [self.label(v) for v in vs]
        return WeightedGraph.from_edges(len(vs), edges, labels)

    def cut(self, members: Iterable[int]) -> Cut:
        return Cut.of(self.n, members)


def out_edges(g: WeightedGraph, x: Cut) -> list[Edge]:
    """Edges with exactly one endpoint in ``x``."""
    if x.n != g.n:
        raise InputError(f"cut has length {x.n}, graph has {g.n} vertices")
    return [e for e in g.edges if (e[0] in x) != (e[1] in x)]


def cut_value(g: WeightedGraph, x: Cut) -> Fraction:
    return sum((w for _, _, w in out_edges(g, x)), Fraction(0))


_COMMENT = re.compile(r"^\s*(#|$)")


def parse_graph(text: str, allow_disconnected: bool = False) -> WeightedGraph:
    """Read the ``n m`` / ``u v w`` text format.

    Lines starting with ``#`` and blank lines are ignored. Parallel edges are
    summed; loops and zero weights are dropped. Disconnected input raises
    unless ``allow_disconnected``.
    """
    lines = [ln.strip() for ln in text.splitlines() if not _COMMENT.match(ln)]
    if not lines:
        raise InputError("empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise InputError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise InputError(f"header must be two integers, got {lines[0]!r}") from exc
    if n < 1 or m < 0:
        raise InputError(f"bad header values n={n} m={m}")
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise InputError(f"edge line must be 'u v w', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad vertex index in {ln!r}") from exc
        edges.append((u, v, parse_rational(parts[2])))
    g = WeightedGraph.from_edges(n, edges)
    if not allow_disconnected and not g.is_connected():
        raise InputError(f"graph is disconnected ({len(g.components())} components); "
                         "use --per-component to build per component")
    return g


def read_graph(path: str, allow_disconnected: bool = False) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read(), allow_disconnected)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def format_graph(g: WeightedGraph) -> str:
    out = []
    if g.labels:
        out += [f"# vertex {i} = {name}" for i, name in enumerate(g.labels)]
    out.append(f"{g.n} {len(g.edges)}")
    out += [f"{u} {v} {format_rational(w)}" for u, v, w in g.edges]
    return "\n".join(out) + "\n"
