"""Exhaustive tables of set-function values over all ``2**n`` subsets.

Values are kept exact: every finite value is scaled by a common denominator to
a Python/NumPy integer, and infinity is tracked in a separate boolean mask.
Row ``mask`` of the table holds the value of the subset whose bitmask is
``mask``.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import total_ordering
from typing import Callable

import numpy as np

from .errors import EnumerationCapError, InputError, PropertyViolation
from .graph import Cut, WeightedGraph

DEFAULT_CAP = 12
HARD_CAP = 20
CAP_ENV = "CUTTREE_MAX_ENUM"


@total_ordering
class Infinity:
    """The value ``+inf`` of an extended nonnegative set function."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("cuttree.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

Value = Fraction | Infinity


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{CAP_ENV} must be an integer, got {raw!r}") from exc


def check_cap(n: int, allow_large: bool = False) -> None:
    """Refuse ``2**n`` enumeration above the cap.

    Up to the cap (default 12, or ``$CUTTREE_MAX_ENUM``) always allowed; up to
    20 (or the env cap if larger) only with ``allow_large``.
    """
    cap = enumeration_cap()
    if n <= cap:
        return
    if allow_large and n <= max(HARD_CAP, cap):
        return
    hint = "pass allow_large=True" if n <= max(HARD_CAP, cap) else f"raise {CAP_ENV}"
    raise EnumerationCapError(f"exhaustive enumeration over n={n} exceeds cap {cap}; {hint}")


def _bits(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[None, :] >> np.arange(n, dtype=np.int64)[:, None]) & 1).astype(bool)


class CutTable:
    """Every subset value of one set function, exactly.

    ``scaled[mask] / denom`` is the value of subset ``mask`` unless
    ``infinite[mask]`` is set.
    """

    def __init__(self, n: int, scaled: np.ndarray, infinite: np.ndarray, denom: int):
        self.n = n
        self.scaled = scaled
        self.infinite = infinite
        self.denom = denom
        self.bits = _bits(n)

    @classmethod
    def from_graph(cls, g: WeightedGraph, allow_large: bool = False) -> "CutTable":
        check_cap(g.n, allow_large)
        denom = 1
        for _, _, w in g.edges:
            denom = math.lcm(denom, w.denominator)
        ints = [(u, v, w.numerator * (denom // w.denominator)) for u, v, w in g.edges]
        total = sum(c for _, _, c in ints)
        bits = _bits(g.n)
        dtype = np.int64 if total < 2**60 else object
        scaled = np.zeros(1 << g.n, dtype=dtype)
        for u, v, c in ints:
            crossing = bits[u] ^ bits[v]
            scaled[crossing] += c
        return cls(g.n, scaled, np.zeros(1 << g.n, dtype=bool), denom)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[Cut], Value],
                      allow_large: bool = False) -> "CutTable":
        check_cap(n, allow_large)
        raw = []
        for mask in range(1 << n):
            val = fn(Cut(n, mask))
            if val is not INF:
                val = Fraction(val)
                if val < 0:
                    raise PropertyViolation(f"negative value {val} at subset {Cut(n, mask)}")
            raw.append(val)
        denom = 1
        for val in raw:
            if val is not INF:
                denom = math.lcm(denom, val.denominator)
        ints = [0 if val is INF else val.numerator * (denom // val.denominator) for val in raw]
        dtype = np.int64 if max(ints, default=0) < 2**60 else object
        scaled = np.array(ints, dtype=dtype)
        infinite = np.array([val is INF for val in raw], dtype=bool)
        return cls(n, scaled, infinite, denom)

    def value(self, x: Cut | int) -> Value:
        mask = x.mask if isinstance(x, Cut) else x
        if self.infinite[mask]:
            return INF
        return Fraction(int(self.scaled[mask]), self.denom)

    def pair_cuts(self, u: int, v: int) -> np.ndarray:
        """Boolean selector of all u-v cuts."""
        if u == v:
            raise InputError(f"u == v == {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex out of range: ({u}, {v}) for n={self.n}")
        return self.bits[u] & ~self.bits[v]

    def pair_min(self, u: int, v: int) -> tuple[Value, np.ndarray]:
        """Minimum over u-v cuts and the bitmasks attaining it (ascending)."""
        sel = self.pair_cuts(u, v)
        fin = sel & ~self.infinite
        if not fin.any():
            return INF, np.flatnonzero(sel)
        best = self.scaled[fin].min()
        return Fraction(int(best), self.denom), np.flatnonzero(fin & (self.scaled == best))

    def minimizers(self, u: int, v: int) -> tuple[Value, list[Cut]]:
        val, masks = self.pair_min(u, v)
        return val, [Cut(self.n, int(m)) for m in masks]
