from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cuttree.generators import corpus, random_connected_graph
from cuttree.graph import Cut, WeightedGraph

CORPUS_SEED = 20240601


def naive_cut_value(g: WeightedGraph, members: set[int]) -> Fraction:
    """Plain definition: sum of weights of edges with exactly one end inside."""
    return sum((w for a, b, w in g.edges if (a in members) != (b in members)), Fraction(0))


def naive_optimal_cuts(g: WeightedGraph, u: int, v: int) -> tuple[Fraction, list[frozenset]]:
    """Enumerate every u-v cut with itertools; independent of the package tables."""
    others = [x for x in range(g.n) if x not in (u, v)]
    best, found = None, []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            members = frozenset((u, *extra))
            val = naive_cut_value(g, members)
            if best is None or val < best:
                best, found = val, [members]
            elif val == best:
                found.append(members)
    return best, found


def as_set(c: Cut) -> frozenset:
    return frozenset(c.members())


def graph(n, edges):
    return WeightedGraph.from_edges(n, edges)


@pytest.fixture
def single_edge():
    return graph(2, [(0, 1, 5)])


@pytest.fixture
def triangle():
    return graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def star3():
    return graph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])


@pytest.fixture
def path23():
    # u=0, x=1, v=2
    return graph(3, [(0, 1, 2), (1, 2, 3)])


@pytest.fixture(scope="session")
def acceptance_corpus():
    return corpus(200, CORPUS_SEED, 2, 10, 1, 20)


@pytest.fixture(scope="session")
def tie_corpus():
    """Small graphs with weights 1..2 so optimal cuts are rarely unique."""
    rng = random.Random(99)
    return [random_connected_graph(rng, rng.randint(3, 8), 1, 2) for _ in range(120)]


@st.composite
def connected_graphs(draw, min_n=2, max_n=7, max_w=6):
    n = draw(st.integers(min_n, max_n))
    edges = []
    for i in range(1, n):
        parent = draw(st.integers(0, i - 1))
        edges.append((i, parent, draw(st.integers(1, max_w))))
    for a in range(n):
        for b in range(a + 1, n):
            if draw(st.booleans()):
                edges.append((a, b, draw(st.integers(1, max_w))))
    return WeightedGraph.from_edges(n, edges)


# acceptance criteria record one line each; printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
