"""Gomory-Hu trees and laminar families of optimal cuts.

Two tree builders live here. :func:`build_tree_paper` grows the tree top-down:
at a node ``(s, X)`` the inclusion-maximal members of
``{smallest optimal u-s cut : u in X - s}`` partition ``X - s``, each part gets
a representative that is minimal for the order ``u <_X v  iff  X_{u,v} not<= X``,
and the recursion continues inside each part. It only needs the engine
interface, so it runs unchanged on abstract symmetric submodular oracles.
:func:`build_tree_classical` is the textbook contraction algorithm and serves
as an independent cross-check on graphs.

An *engine* is any object with ``n``, ``value(X)``, ``lam(u, v)`` and
``smallest(u, v)``; see :class:`~cuttree.mincut.GraphEngine` and
:class:`~cuttree.submodular.OracleEngine`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Protocol

from .errors import ConsistencyError, InputError, PreconditionError
from .graph import Cut, WeightedGraph, crosses, format_rational, is_laminar_pair, parse_rational
from .mincut import GraphEngine, max_flow
from .submodular import OracleEngine, SetFunctionOracle


class Engine(Protocol):
    n: int

    def value(self, x: Cut): ...

    def lam(self, u: int, v: int): ...

    def smallest(self, u: int, v: int) -> Cut: ...


def engine_for(obj, allow_large: bool = False) -> Engine:
    """Wrap a graph or an oracle; engines pass through unchanged."""
    if isinstance(obj, WeightedGraph):
        return GraphEngine(obj)
    if isinstance(obj, SetFunctionOracle):
        return OracleEngine(obj, allow_large)
    if all(hasattr(obj, a) for a in ("n", "value", "lam", "smallest")):
        return obj
    raise TypeError(f"cannot build a cut engine from {type(obj).__name__}")


# -- data types --------------------------------------------------------------

@dataclass(frozen=True)
class GomoryHuTree:
    """Spanning tree with a lambda per edge, rooted for fundamental-cut lookup.

    ``tree_edges`` are ``(parent, child, lambda)``; the fundamental cut of an
    edge is the vertex set of the child's subtree (the side without the root).
    """

    n: int
    tree_edges: tuple[tuple[int, int, Fraction], ...]
    root: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError("tree needs at least one vertex")
        if not 0 <= self.root < self.n:
            raise InputError(f"root {self.root} out of range")
        if len(self.tree_edges) != self.n - 1:
            raise InputError(f"a spanning tree on {self.n} vertices has {self.n - 1} edges, "
                             f"got {len(self.tree_edges)}")
        seen = {self.root}
        adj = self.adjacency()
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != self.n:
            raise InputError("tree edges do not span the vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, Fraction]],
                   root: int = 0) -> "GomoryHuTree":
        """Orient an undirected edge list away from ``root``."""
        edges = list(edges)
        for a, b, _ in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InputError(f"bad tree edge ({a}, {b})")
        if len(edges) != n - 1:
            raise InputError(f"a spanning tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        adj: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in range(n)}
        for a, b, w in edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        out, seen, queue = [], {root}, deque([root])
        while queue:
            x = queue.popleft()
            for y, w in sorted(adj[x], key=lambda t: t[0]):
                if y not in seen:
                    seen.add(y)
                    out.append((x, y, w))
                    queue.append(y)
        if len(seen) != n:
            raise InputError("tree edges do not span the vertex set")
        return cls(n, tuple(out), root)

    def adjacency(self) -> dict[int, dict[int, Fraction]]:
        adj: dict[int, dict[int, Fraction]] = {v: {} for v in range(self.n)}
        for a, b, w in self.tree_edges:
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def parents(self) -> dict[int, int]:
        return {b: a for a, b, _ in self.tree_edges}

    def fundamental_cut(self, a: int, b: int) -> Cut:
        """Component of ``T - ab`` not containing the root."""
        par = self.parents()
        child = b if par.get(b) == a else a if par.get(a) == b else None
        if child is None:
            raise InputError(f"({a}, {b}) is not a tree edge")
        adj = self.adjacency()
        members, stack = {child}, [child]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in members and y != par[child]:
                    members.add(y)
                    stack.append(y)
        return Cut.of(self.n, members)

    def leaves(self) -> list[int]:
        adj = self.adjacency()
        return [v for v in range(self.n) if len(adj[v]) == 1]

    def path_min(self, u: int, v: int) -> Fraction:
        """Smallest lambda on the tree path between ``u`` and ``v``."""
        if u == v:
            raise InputError("path_min needs distinct endpoints")
        adj = self.adjacency()
        best = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y, w in adj[x].items():
                if y not in best:
                    best[y] = w if best[x] is None else min(best[x], w)
                    queue.append(y)
        return best[v]

    def path_min_matrix(self) -> list[list[Fraction | None]]:
        adj = self.adjacency()
        rows = []
        for u in range(self.n):
            best: dict[int, Fraction | None] = {u: None}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                for y, w in adj[x].items():
                    if y not in best:
                        best[y] = w if best[x] is None else min(best[x], w)
                        queue.append(y)
            rows.append([best[v] for v in range(self.n)])
        return rows


@dataclass(frozen=True)
class LaminarCut:
    cut: Cut
    witness: tuple[int, int]
    value: Fraction


@dataclass
class LaminarFamily:
    n: int
    cuts: list[LaminarCut] = field(default_factory=list)

    def __iter__(self):
        return iter(self.cuts)

    def __len__(self):
        return len(self.cuts)

    def separates_optimally(self, engine: Engine, u: int, v: int) -> LaminarCut | None:
        target = engine.lam(u, v)
        for member in self.cuts:
            if member.cut.separates(u, v) and engine.value(member.cut) == target:
                return member
        return None


# -- uncrossing and the order <_X ---------------------------------------------

def _is_optimal(engine: Engine, x: Cut, u: int, v: int) -> bool:
    return x.is_cut_for(u, v) and engine.value(x) == engine.lam(u, v)


def uncross(engine: Engine, x: Cut, x_witness: tuple[int, int], y: Cut,
            y_witness: tuple[int, int]) -> Cut:
    """Turn the optimal u-v cut ``y`` into one that does not cross ``x``.

    ``x`` is an optimal s-t cut. The four cases depend on where u and v sit
    relative to ``x``; the result is checked for optimality and non-crossing.

    When ``x`` itself separates u from v, the submodular exchange with the s-t
    cut ``x`` gives ``y & x`` for ``t not in y`` and ``y | x`` for ``t in y``
    (mirrored through the complement when ``x`` is a v-u cut).
    """
    s, t = x_witness
    u, v = y_witness
    if x.n != y.n:
        raise InputError("cut length mismatch")
    if u in x and v not in x:
        out = y & x if t not in y else y | x
    elif v in x and u not in x:
        out = y - x if s not in y else y | x.complement()
    elif u in x and v in x:
        out = y & x if t not in y else y | x.complement()
    else:
        out = y - x if s not in y else y | x
    if not _is_optimal(engine, out, u, v):
        raise ConsistencyError(
            f"uncross produced {out} with value {engine.value(out)}, not an optimal "
            f"{u}-{v} cut (lambda {engine.lam(u, v)}); X={x} for ({s},{t}), Y={y}")
    if crosses(out, x):
        raise ConsistencyError(f"uncross result {out} still crosses {x}")
    return out


def prec(engine: Engine, x: Cut, u: int, v: int) -> bool:
    """``u <_X v``: the smallest optimal u-v cut is not contained in ``x``."""
    if u == v:
        raise InputError("prec needs distinct vertices")
    if u not in x or v not in x:
        raise InputError(f"prec needs both {u} and {v} inside {x}")
    return not engine.smallest(u, v).issubset(x)


def minimal_vertices(engine: Engine, x: Cut) -> list[int]:
    """All ``<_X``-minimal members of ``x`` in index order."""
    members = x.members()
    return [s for s in members
            if all(engine.smallest(u, s).issubset(x) for u in members if u != s)]


def minimal_vertex(engine: Engine, x: Cut, t: int | None = None, root: int = 0) -> int:
    """Lowest-index ``<_X``-minimal element of ``x``.

    For ``x = V`` the order is trivial and ``root`` is returned. When ``t`` is
    given, ``x`` must be an optimal cut against ``t`` and the chosen vertex is
    checked to realise it: ``lam(s', t) == value(x)``.
    """
    if len(x) == 0:
        raise InputError("minimal_vertex on an empty set")
    if x == Cut.full(x.n):
        return root
    cands = minimal_vertices(engine, x)
    if not cands:
        raise ConsistencyError(f"{x} has no <_X-minimal element")
    s = cands[0]
    if t is not None:
        if t in x:
            raise PreconditionError(f"t={t} lies inside {x}")
        if engine.lam(s, t) != engine.value(x):
            raise ConsistencyError(
                f"minimal vertex {s} of {x}: lam({s},{t})={engine.lam(s, t)} "
                f"differs from the cut value {engine.value(x)}")
    return s


def _maximal(cuts: Iterable[Cut]) -> list[Cut]:
    distinct = sorted(set(cuts), key=lambda c: (-len(c), c.mask))
    out: list[Cut] = []
    for c in distinct:
        if not any(c.issubset(m) for m in out):
            out.append(c)
    return sorted(out, key=lambda c: c.members()[0])


def sink_family(engine: Engine, s: int, x: Cut | None = None) -> list[Cut]:
    """``{X_{u,s} : u in x - s}``; ``x`` defaults to the whole ground set."""
    x = Cut.full(engine.n) if x is None else x
    return [engine.smallest(u, s) for u in x.members() if u != s]


def partition_family(engine: Engine, s: int, x: Cut) -> list[Cut]:
    """Maximal members of ``{X_{u,s} : u in x - s}``; they partition ``x - s``."""
    if s not in x:
        raise InputError(f"{s} is not in {x}")
    rest = x - Cut.of(x.n, [s])
    family = sink_family(engine, s, x)
    for u, c in zip((m for m in x.members() if m != s), family):
        if not c.issubset(rest):
            raise PreconditionError(
                f"X_{{{u},{s}}} = {c} is not inside {x} minus {s}; {s} is not <_X-minimal")
    parts = _maximal(family)
    covered = 0
    for p in parts:
        if p.mask & covered:
            raise ConsistencyError(f"maximal cuts overlap at node ({s}, {x}): {parts}")
        covered |= p.mask
    if covered != rest.mask:
        raise ConsistencyError(f"maximal cuts {parts} do not cover {rest}")
    return parts


# -- tree builders -----------------------------------------------------------

def build_tree_paper(obj, root: int = 0, allow_large: bool = False) -> GomoryHuTree:
    """Recursive partition construction on a graph, oracle or engine."""
    engine = engine_for(obj, allow_large)
    n = engine.n
    if not 0 <= root < n:
        raise InputError(f"root {root} out of range")
    edges = []
    stack = [(root, Cut.full(n))]
    while stack:
        s, x = stack.pop()
        for part in reversed(partition_family(engine, s, x)):
            child = minimal_vertex(engine, part, t=s)
            lam = engine.value(part)
            if lam != engine.lam(s, child):
                raise ConsistencyError(f"tree edge ({s},{child}) for part {part}: "
                                       f"value {lam} != lam {engine.lam(s, child)}")
            edges.append((s, child, lam))
            stack.append((child, part))
    edges.sort(key=lambda e: (e[0], e[1]))
    return GomoryHuTree.from_edges(n, edges, root)


def build_tree_classical(g: WeightedGraph, root: int = 0) -> GomoryHuTree:
    """Gomory and Hu's contraction algorithm.

    Supernodes of a working tree are split one at a time: contract every
    subtree hanging off the supernode, take a minimum cut between two of its
    vertices, and reattach the contracted neighbours to the side they fell on.
    """
    n = g.n
    if n == 1:
        return GomoryHuTree(1, (), 0)
    # supernode id -> members; tree adjacency between supernode ids
    nodes: dict[int, frozenset[int]] = {0: frozenset(range(n))}
    tree: dict[int, dict[int, Fraction]] = {0: {}}
    next_id = 1
    while True:
        big = next((k for k in sorted(nodes) if len(nodes[k]) > 1), None)
        if big is None:
            break
        members = sorted(nodes[big])
        s, t = members[0], members[1]
        # contracted vertex for each neighbour subtree of `big`
        index = {v: i for i, v in enumerate(members)}
        subtree_of: dict[int, int] = {}
        for nb in tree[big]:
            cid = len(members) + len(subtree_of)
            subtree_of[nb] = cid
            stack, seen = [nb], {big, nb}
            while stack:
                k = stack.pop()
                for v in nodes[k]:
                    index[v] = cid
                for k2 in tree[k]:
                    if k2 not in seen:
                        seen.add(k2)
                        stack.append(k2)
        size = len(members) + len(subtree_of)
        contracted = WeightedGraph.from_edges(
            size, [(index[a], index[b], w) for a, b, w in g.edges if index[a] != index[b]])
        flow = max_flow(contracted, index[s], index[t])
        side = flow.source_side
        a_id, b_id = big, next_id
        next_id += 1
        nodes[a_id] = frozenset(v for v in members if index[v] in side)
        nodes[b_id] = frozenset(v for v in members if index[v] not in side)
        old = tree.pop(big)
        tree[a_id], tree[b_id] = {}, {}
        for nb, w in old.items():
            del tree[nb][big]
            target = a_id if subtree_of[nb] in side else b_id
            tree[target][nb] = w
            tree[nb][target] = w
        tree[a_id][b_id] = flow.value
        tree[b_id][a_id] = flow.value
    vertex = {k: next(iter(m)) for k, m in nodes.items()}
    edges = [(vertex[a], vertex[b], w) for a in tree for b, w in tree[a].items() if a < b]
    return GomoryHuTree.from_edges(n, edges, root)


# -- laminar family ----------------------------------------------------------

def _insert_cut(engine: Engine, family: list[LaminarCut], u: int, v: int) -> LaminarCut:
    """One laminarity-preserving optimal cut separating ``u`` and ``v``."""
    in_u_not_v = [m for m in family if m.cut.is_cut_for(u, v)]
    in_v_not_u = [m for m in family if m.cut.is_cut_for(v, u)]
    in_both = [m for m in family if u in m.cut and v in m.cut]

    x_uv = engine.smallest(u, v)
    if any(x_uv.issubset(m.cut) for m in in_u_not_v):
        pass
    elif any(engine.smallest(v, u).issubset(m.cut) for m in in_v_not_u):
        u, v = v, u
        in_u_not_v, in_v_not_u = in_v_not_u, in_u_not_v
        x_uv = engine.smallest(u, v)
    elif in_both:
        # members containing both u and v form a chain; orient by its bottom
        bottom = min(in_both, key=lambda m: len(m.cut)).cut
        if not x_uv.issubset(bottom):
            if not engine.smallest(v, u).issubset(bottom):
                raise ConsistencyError(
                    f"neither X_{{{u},{v}}} nor X_{{{v},{u}}} lies inside {bottom}")
            u, v = v, u
            in_u_not_v, in_v_not_u = in_v_not_u, in_u_not_v
            x_uv = engine.smallest(u, v)

    # repair crossings with members holding u but not v: X_uv | Y is optimal
    x0 = x_uv
    for m in in_u_not_v:
        if not is_laminar_pair(x_uv, m.cut):
            repaired = uncross(engine, m.cut, m.witness, x_uv, (u, v))
            if repaired != x_uv | m.cut:
                raise ConsistencyError(
                    f"expected {x_uv} | {m.cut} when uncrossing against {m.witness}, got {repaired}")
            x0 = x0 | repaired
    if not _is_optimal(engine, x0, u, v):
        raise ConsistencyError(f"X_0 = {x0} is not an optimal {u}-{v} cut")

    # absorb members avoiding both u and v that still cross X_0
    x_star = x0
    for m in family:
        z = m.cut
        if u in z or v in z or is_laminar_pair(x0, z):
            continue
        if m.witness[0] not in x_uv:
            raise ConsistencyError(f"witness source {m.witness[0]} of {z} lies outside {x_uv}")
        absorbed = uncross(engine, z, m.witness, x_uv, (u, v))
        if absorbed != x_uv | z:
            raise ConsistencyError(f"expected {x_uv} | {z}, got {absorbed}")
        x_star = x_star | z
    if not _is_optimal(engine, x_star, u, v):
        raise ConsistencyError(f"X* = {x_star} is not an optimal {u}-{v} cut")
    for m in family:
        if not is_laminar_pair(x_star, m.cut):
            raise ConsistencyError(f"X* = {x_star} crosses member {m.cut} (witness {m.witness})")
    return LaminarCut(x_star, (u, v), engine.value(x_star))


def build_laminar_family(obj, pairs: Iterable[tuple[int, int]] | None = None,
                         allow_large: bool = False) -> LaminarFamily:
    """Insert optimal separating cuts pair by pair, keeping the family laminar.

    Pairs are processed in lexicographic order; a pair already separated
    optimally by some member is skipped. Members are never removed.
    """
    engine = engine_for(obj, allow_large)
    n = engine.n
    if pairs is None:
        todo = [(u, v) for u in range(n) for v in range(u + 1, n)]
    else:
        todo = sorted({(min(u, v), max(u, v)) for u, v in pairs})
        for u, v in todo:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InputError(f"bad pair ({u}, {v})")
    family = LaminarFamily(n)
    for u, v in todo:
        if family.separates_optimally(engine, u, v) is None:
            family.cuts.append(_insert_cut(engine, family.cuts, u, v))
    return family


def join_component_trees(n: int, parts: list[tuple[tuple[int, ...], GomoryHuTree]],
                         root: int = 0) -> GomoryHuTree:
    """Glue per-component trees into one tree on ``0..n-1`` with zero-lambda links."""
    edges = []
    anchors = []
    for verts, tree in parts:
        edges += [(verts[a], verts[b], w) for a, b, w in tree.tree_edges]
        anchors.append(verts[0])
    edges += [(anchors[0], a, Fraction(0)) for a in anchors[1:]]
    return GomoryHuTree.from_edges(n, edges, root)


# -- text formats ------------------------------------------------------------

def format_tree(tree: GomoryHuTree, decimal: int | None = None) -> str:
    return "".join(f"{a} {b} {format_rational(w, decimal)}\n" for a, b, w in tree.tree_edges)


def parse_tree(text: str, n: int, root: int = 0) -> GomoryHuTree:
    """Read ``u v lambda`` lines; ``#`` comments and blank lines are skipped."""
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"tree line must be 'u v lambda', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad vertex in {line!r}") from exc
        edges.append((a, b, parse_rational(parts[2])))
    return GomoryHuTree.from_edges(n, edges, root)


def format_family(family: LaminarFamily, decimal: int | None = None) -> str:
    return "".join(f"{format_rational(m.value, decimal)} {m.witness[0]} {m.witness[1]} {m.cut}\n"
                   for m in family.cuts)
