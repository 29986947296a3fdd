"""Set-function oracles ``b: P(V) -> Q>=0 u {inf}`` and exhaustive lambda_b.

An oracle is a ground-set size plus a pure evaluation function on
:class:`~cuttree.graph.Cut`. The graph cut function is one example; explicit
value tables and the ``|X| * |V - X|`` pair-count function are others.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InputError, PropertyViolation
from .exhaustive import INF, CutTable, Value
from .graph import Cut, WeightedGraph, cut_value, parse_rational, read_graph


class SetFunctionOracle:
    """A deterministic set function on subsets of ``{0, ..., ground_size-1}``."""

    def __init__(self, ground_size: int, evaluate: Callable[[Cut], Value], name: str = "oracle",
                 table_factory: Callable[[bool], CutTable] | None = None):
        if ground_size < 1:
            raise InputError("ground set must be nonempty")
        self.ground_size = ground_size
        self._evaluate = evaluate
        self.name = name
        self._table_factory = table_factory
        self._table: CutTable | None = None

    @property
    def n(self) -> int:
        return self.ground_size

    def evaluate(self, x: Cut) -> Value:
        if x.n != self.ground_size:
            raise InputError(f"cut length {x.n} differs from ground set size {self.ground_size}")
        val = self._evaluate(x)
        return val if val is INF else Fraction(val)

    __call__ = evaluate

    def table(self, allow_large: bool = False) -> CutTable:
        if self._table is None:
            if self._table_factory is not None:
                self._table = self._table_factory(allow_large)
            else:
                self._table = CutTable.from_function(self.ground_size, self.evaluate, allow_large)
        return self._table

    def __repr__(self):
        return f"SetFunctionOracle({self.name!r}, n={self.ground_size})"


def graph_cut_oracle(g: WeightedGraph) -> SetFunctionOracle:
    return SetFunctionOracle(
        g.n, lambda x: cut_value(g, x), name="graph",
        table_factory=lambda allow_large: CutTable.from_graph(g, allow_large),
    )


def pairs_oracle(n: int) -> SetFunctionOracle:
    """``b(X) = |X| * |V - X|``, the cut function of the unit complete graph."""
    return SetFunctionOracle(n, lambda x: Fraction(len(x) * (n - len(x))), name="pairs")


def table_oracle(values: dict[int, Value] | list[Value], name: str = "table") -> SetFunctionOracle:
    """Oracle from an explicit table indexed by subset bitmask (length ``2**n``)."""
    if isinstance(values, dict):
        size = len(values)
        if sorted(values) != list(range(size)):
            raise InputError("table must list every bitmask 0..2^n-1 exactly once")
        values = [values[m] for m in range(size)]
    size = len(values)
    n = size.bit_length() - 1
    if size < 2 or size != 1 << n:
        raise InputError(f"table has {size} entries, expected a power of two >= 2")
    vals = [v if v is INF else Fraction(v) for v in values]
    return SetFunctionOracle(n, lambda x: vals[x.mask], name=name)


def parse_table(text: str) -> SetFunctionOracle:
    """Parse ``bitmask value`` lines; ``inf`` marks an infinite value."""
    entries: dict[int, Value] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'bitmask value', got {line!r}")
        try:
            mask = int(parts[0], 0)
        except ValueError:
            try:
                mask = int(parts[0], 10)
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad bitmask {parts[0]!r}") from exc
        if mask in entries:
            raise InputError(f"line {lineno}: bitmask {mask} listed twice")
        val = INF if parts[1].lower() in ("inf", "+inf", "infinity") else parse_rational(parts[1])
        if val is not INF and val < 0:
            raise InputError(f"line {lineno}: negative value {val}")
        entries[mask] = val
    return table_oracle(entries)


def load_oracle(spec: str, n: int | None = None) -> SetFunctionOracle:
    """Resolve ``graph:<file>``, ``pairs:<n>`` (or ``pairs`` with ``n``) and ``table:<file>``."""
    kind, _, arg = spec.partition(":")
    if kind == "graph":
        return graph_cut_oracle(read_graph(arg))
    if kind == "pairs":
        size = int(arg) if arg else n
        if size is None:
            raise InputError("pairs oracle needs a ground size: pairs:<n>")
        return pairs_oracle(size)
    if kind == "table":
        try:
            with open(arg, encoding="utf-8") as fh:
                return parse_table(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc}") from exc
    raise InputError(f"unknown oracle {spec!r}; use graph:<file>, pairs:<n> or table:<file>")


# -- property checks ---------------------------------------------------------

@dataclass
class PropertyCheck:
    name: str
    status: str  # pass | fail | vacuous | unknown
    witness: tuple = ()
    note: str = ""

    def line(self) -> str:
        parts = [f"{self.name}: {self.status}"]
        if self.witness:
            parts.append("witness " + " ".join(str(w) for w in self.witness))
        if self.note:
            parts.append(f"({self.note})")
        return " ".join(parts)


@dataclass
class PropertyReport:
    oracle: str
    n: int
    mode: str
    checks: list[PropertyCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def __getitem__(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


_VACUOUS_NOTE = "nested sequences of subsets of a finite set are eventually constant"


def _vacuous_checks() -> list[PropertyCheck]:
    return [
        PropertyCheck("3-monotone-continuity", "vacuous", note=_VACUOUS_NOTE),
        PropertyCheck("3'-lower-semicontinuity", "vacuous", note=_VACUOUS_NOTE),
    ]


def _pairwise_violation(t: CutTable, combine) -> tuple[int, int] | None:
    """First (X, Y) with ``b(X)+b(Y) < b(P)+b(Q)`` where ``P, Q = combine(X, Y)``."""
    size = 1 << t.n
    ys = np.arange(size, dtype=np.int64)
    for x in range(size):
        p, q = combine(x, ys)
        lhs_inf = t.infinite[x] | t.infinite[ys]
        rhs_inf = t.infinite[p] | t.infinite[q]
        lhs = t.scaled[x] + t.scaled[ys]
        rhs = t.scaled[p] + t.scaled[q]
        bad = ~lhs_inf & (rhs_inf | (lhs < rhs))
        if bad.any():
            return x, int(np.flatnonzero(bad)[0])
    return None


def _local_submodular_violation(t: CutTable) -> tuple[int, int] | None:
    """Diminishing-returns form: ``b(S+i)+b(S+j) >= b(S)+b(S+i+j)``."""
    idx = np.arange(1 << t.n, dtype=np.int64)
    for i in range(t.n):
        for j in range(i + 1, t.n):
            s = idx[~t.bits[i] & ~t.bits[j]]
            a, b_, c = s | (1 << i), s | (1 << j), s | (1 << i) | (1 << j)
            lhs_inf = t.infinite[a] | t.infinite[b_]
            rhs_inf = t.infinite[s] | t.infinite[c]
            bad = ~lhs_inf & (rhs_inf | (t.scaled[a] + t.scaled[b_] < t.scaled[s] + t.scaled[c]))
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                return int(a[k]), int(b_[k])
    return None


def _exhaustive(b: SetFunctionOracle, allow_large: bool) -> list[PropertyCheck]:
    t = b.table(allow_large)
    n, full = t.n, (1 << t.n) - 1
    idx = np.arange(1 << n, dtype=np.int64)
    checks = []

    zero = ~t.infinite & (t.scaled == 0)
    proper = (idx != 0) & (idx != full)
    bad = np.flatnonzero((zero & proper) | (~zero & ~proper))
    checks.append(PropertyCheck("0-zero-set", "fail" if len(bad) else "pass",
                                (Cut(n, int(bad[0])),) if len(bad) else ()))

    comp = full ^ idx
    same = (t.infinite == t.infinite[comp]) & (t.infinite | (t.scaled == t.scaled[comp]))
    bad = np.flatnonzero(~same)
    sym_ok = not len(bad)
    checks.append(PropertyCheck("1-symmetry", "pass" if sym_ok else "fail",
                                () if sym_ok else (Cut(n, int(bad[0])), Cut(n, int(comp[bad[0]])))))

    if n <= 12:
        v = _pairwise_violation(t, lambda x, ys: (x & ys, x | ys))
        checks.append(PropertyCheck("2-submodularity", "fail" if v else "pass",
                                    (Cut(n, v[0]), Cut(n, v[1])) if v else ()))
        v = _pairwise_violation(t, lambda x, ys: (x & ~ys, ys & ~x))
        checks.append(PropertyCheck("posimodularity", "fail" if v else "pass",
                                    (Cut(n, v[0]), Cut(n, v[1])) if v else ()))
    else:
        v = _local_submodular_violation(t)
        note = "local exchange form"
        if t.infinite.any():
            note += "; exact only for finite-valued functions"
        checks.append(PropertyCheck("2-submodularity", "fail" if v else "pass",
                                    (Cut(n, v[0]), Cut(n, v[1])) if v else (), note))
        if sym_ok:
            # With symmetry, posimodularity at (X, V-Y) is submodularity at (X, Y).
            checks.append(PropertyCheck(
                "posimodularity", "fail" if v else "pass",
                (Cut(n, v[0]), Cut(n, v[1]).complement()) if v else (),
                "via symmetry from submodularity"))
        else:
            checks.append(PropertyCheck("posimodularity", "unknown",
                                        note="not derivable without symmetry above n=12"))

    checks += _vacuous_checks()

    finite = ~t.infinite
    witness = ()
    for u in range(n):
        for w in range(n):
            if u != w and not (t.bits[u] & ~t.bits[w] & finite).any():
                witness = (u, w)
                break
        if witness:
            break
    checks.append(PropertyCheck("4-finite-separability", "fail" if witness else "pass", witness,
                                "lambda_b(u,v) is infinite" if witness else ""))
    return checks


def _sampled(b: SetFunctionOracle, samples: int, seed: int) -> list[PropertyCheck]:
    n, full = b.n, (1 << b.n) - 1
    rng = random.Random(seed)
    val = {}

    def f(mask: int) -> Value:
        if mask not in val:
            val[mask] = b.evaluate(Cut(n, mask))
        return val[mask]

    pairs = [(rng.randrange(full + 1), rng.randrange(full + 1)) for _ in range(samples)]
    singles = sorted({m for p in pairs for m in p} | {0, full})
    checks = []

    bad = next((m for m in singles if (f(m) == 0) != (m in (0, full))), None)
    checks.append(PropertyCheck("0-zero-set", "pass" if bad is None else "fail",
                                () if bad is None else (Cut(n, bad),), "sampled"))
    bad = next((m for m in singles if f(m) != f(full ^ m)), None)
    checks.append(PropertyCheck("1-symmetry", "pass" if bad is None else "fail",
                                () if bad is None else (Cut(n, bad), Cut(n, full ^ bad)), "sampled"))
    bad = next(((x, y) for x, y in pairs if not f(x) + f(y) >= f(x & y) + f(x | y)), None)
    checks.append(PropertyCheck("2-submodularity", "pass" if bad is None else "fail",
                                () if bad is None else (Cut(n, bad[0]), Cut(n, bad[1])), "sampled"))
    bad = next(((x, y) for x, y in pairs if not f(x) + f(y) >= f(x & ~y) + f(y & ~x)), None)
    checks.append(PropertyCheck("posimodularity", "pass" if bad is None else "fail",
                                () if bad is None else (Cut(n, bad[0]), Cut(n, bad[1])), "sampled"))
    checks += _vacuous_checks()

    candidates = singles + [1 << u for u in range(n)] + [full ^ (1 << u) for u in range(n)]
    finite = [m for m in candidates if f(m) is not INF]
    missing = next(((u, w) for u in range(n) for w in range(n)
                    if u != w and not any(m >> u & 1 and not m >> w & 1 for m in finite)), None)
    checks.append(PropertyCheck(
        "4-finite-separability", "pass" if missing is None else "unknown",
        () if missing is None else missing,
        "sampled" if missing is None else "no finite separating cut among samples"))
    return checks


def check_properties(b: SetFunctionOracle, mode: str = "exhaustive", samples: int = 2000,
                     seed: int = 0, allow_large: bool = False) -> PropertyReport:
    """Check the properties that guarantee an abstract Gomory-Hu tree, on a finite ground set.

    Failures are report content, never exceptions. In exhaustive mode every
    pair of subsets is examined for n <= 12; above that (opt-in, n <= 20)
    submodularity is checked in its local exchange form.
    """
    if mode == "exhaustive":
        checks = _exhaustive(b, allow_large)
    elif mode == "sampled":
        checks = _sampled(b, samples, seed)
    else:
        raise InputError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    return PropertyReport(b.name, b.n, mode, checks)


# -- exhaustive lambda_b -----------------------------------------------------

def lambda_b(b: SetFunctionOracle, u: int, v: int, minimizers: bool = False,
             allow_large: bool = False):
    """``min b(X)`` over u-v cuts; with ``minimizers=True`` also every minimiser."""
    val, cuts = b.table(allow_large).minimizers(u, v)
    return (val, cuts) if minimizers else val


def _optimal_masks(b: SetFunctionOracle, u: int, v: int, allow_large: bool):
    t = b.table(allow_large)
    val, masks = t.pair_min(u, v)
    if val is INF:
        raise PropertyViolation(f"oracle {b.name!r} is not finitely separable: "
                                f"lambda_b({u},{v}) is infinite")
    return t, val, masks


def smallest_optimal_cut_b(b: SetFunctionOracle, u: int, v: int,
                           allow_large: bool = False) -> Cut:
    """Intersection of all minimisers, checked to be a minimiser itself."""
    t, val, masks = _optimal_masks(b, u, v, allow_large)
    inter = int(np.bitwise_and.reduce(masks))
    if t.value(inter) != val:
        raise PropertyViolation(
            f"oracle {b.name!r} is not submodular: intersection {Cut(b.n, inter)} of the "
            f"optimal {u}-{v} cuts has value {t.value(inter)} > {val}")
    return Cut(b.n, inter)


def largest_optimal_cut_b(b: SetFunctionOracle, u: int, v: int,
                          allow_large: bool = False) -> Cut:
    t, val, masks = _optimal_masks(b, u, v, allow_large)
    uni = int(np.bitwise_or.reduce(masks))
    if t.value(uni) != val:
        raise PropertyViolation(
            f"oracle {b.name!r} is not submodular: union {Cut(b.n, uni)} of the "
            f"optimal {u}-{v} cuts has value {t.value(uni)} > {val}")
    return Cut(b.n, uni)


class OracleEngine:
    """Engine interface (``n``, ``value``, ``lam``, ``smallest``) over an oracle."""

    def __init__(self, b: SetFunctionOracle, allow_large: bool = False):
        self.oracle = b
        self.n = b.n
        self.allow_large = allow_large
        self.table = b.table(allow_large)
        self._smallest: dict[tuple[int, int], Cut] = {}

    def value(self, x: Cut) -> Value:
        return self.table.value(x)

    def lam(self, u: int, v: int) -> Value:
        return self.table.pair_min(u, v)[0]

    def smallest(self, u: int, v: int) -> Cut:
        key = (u, v)
        if key not in self._smallest:
            self._smallest[key] = smallest_optimal_cut_b(self.oracle, u, v, self.allow_large)
        return self._smallest[key]

    def largest(self, u: int, v: int) -> Cut:
        return largest_optimal_cut_b(self.oracle, u, v, self.allow_large)
