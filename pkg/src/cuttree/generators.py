"""Seeded random connected graphs for test corpora."""
from __future__ import annotations

import random
from fractions import Fraction

from .graph import WeightedGraph


def random_connected_graph(rng: random.Random, n: int, wmin: int = 1, wmax: int = 20,
                           density: float | None = None) -> WeightedGraph:
    """Random spanning tree plus each remaining pair with probability ``density``."""
    if density is None:
        density = rng.uniform(0.15, 0.75)
    edges = []
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        edges.append((order[i], order[rng.randrange(i)], Fraction(rng.randint(wmin, wmax))))
    present = {(min(a, b), max(a, b)) for a, b, _ in edges}
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in present and rng.random() < density:
                edges.append((a, b, Fraction(rng.randint(wmin, wmax))))
    return WeightedGraph.from_edges(n, edges)


def corpus(count: int = 200, seed: int = 20240601, n_min: int = 2, n_max: int = 10,
           wmin: int = 1, wmax: int = 20) -> list[WeightedGraph]:
    rng = random.Random(seed)
    return [random_connected_graph(rng, rng.randint(n_min, n_max), wmin, wmax)
            for _ in range(count)]
