"""Objective functions behind a single query-counted evaluation interface.

Every algorithm in this package reaches the objective only through
:class:`ValueOracle.evaluate`, which increments the query counter by exactly
one per call. Nothing here caches objective values; that would corrupt the
query accounting the benchmark exists to measure.

The evaluation path is read-only over graph data (incidence structures are
precomputed at construction), so oracles may be shared across threads as
long as each concurrent run owns its own instance: the query counter is the
single mutable cell and is not synchronized. The harness gives every run a
fresh oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .rng import SplitMix64

# Above this vertex count coverage falls back from int bitmasks to frozenset
# unions; both paths compute the same integers.
_BITSET_LIMIT = 1 << 15


@dataclass
class RevenueParams:
    """Randomized revenue-model parameters, drawn once per oracle.

    A single splitmix64 stream seeded with `seed` supplies, in order: one
    uniform (0,1) weight per graph edge (edge order of Graph.edges), then one
    uniform (0,1) exponent per vertex (vertex order 0..n-1).
    """

    edge_weights: np.ndarray
    alphas: np.ndarray

    @staticmethod
    def draw(graph: Graph, seed: int) -> "RevenueParams":
        gen = SplitMix64(seed)
        weights = np.array([gen.next_float() for _ in graph.edges], dtype=np.float64)
        alphas = np.array([gen.next_float() for _ in range(graph.vertex_count)], dtype=np.float64)
        return RevenueParams(weights, alphas)


class ValueOracle:
    """A set-function oracle with an exact, monotone query counter."""

    def __init__(self, kind: str, n: int, fn: Callable[[tuple[int, ...]], float], *, monotone: bool):
        self.kind = kind
        self.n = n
        self.monotone = monotone
        self.query_count = 0
        self._fn = fn

    def evaluate(self, items: Iterable[int]) -> float:
        """Objective value of the queried set; costs exactly one query."""
        s = tuple(items)
        for e in s:
            if not (0 <= e < self.n):
                raise ValidationError(f"element {e} outside ground set 0..{self.n - 1}")
        self.query_count += 1
        return self._fn(s)

    def fresh(self) -> "ValueOracle":
        """A new oracle over the same objective with a zeroed counter."""
        clone = ValueOracle(self.kind, self.n, self._fn, monotone=self.monotone)
        return clone

    def ground(self) -> range:
        return range(self.n)


# ---------------------------------------------------------------------------
# objective implementations


def coverage_value(graph: Graph, items: Iterable[int]) -> float:
    """Number of vertices incident with an edge incident with the set.

    A member with no incident edge contributes nothing, not even itself.
    """
    masks = _coverage_masks(graph)
    if graph.vertex_count <= _BITSET_LIMIT:
        acc = 0
        for v in set(items):
            acc |= masks[v]
        return float(acc.bit_count())
    acc_set: set[int] = set()
    for v in set(items):
        acc_set |= masks[v]
    return float(len(acc_set))


def _coverage_masks(graph: Graph):
    # Precomputed incidence structure cached on the (immutable) graph.
    cached = getattr(graph, "_coverage_masks", None)
    if cached is not None:
        return cached
    if graph.vertex_count <= _BITSET_LIMIT:
        masks: list = []
        for v in range(graph.vertex_count):
            if graph.adjacency[v]:
                m = 1 << v
                for u, _ in graph.adjacency[v]:
                    m |= 1 << u
            else:
                m = 0
            masks.append(m)
    else:
        masks = []
        for v in range(graph.vertex_count):
            if graph.adjacency[v]:
                masks.append(frozenset([v] + [u for u, _ in graph.adjacency[v]]))
            else:
                masks.append(frozenset())
    graph._coverage_masks = masks  # type: ignore[attr-defined]
    return masks


def maxcut_value(graph: Graph, items: Iterable[int]) -> float:
    """Total weight of edges with exactly one endpoint in the set."""
    inside = set(items)
    total = 0.0
    for u in inside:
        for v, w in graph.adjacency[u]:
            if v not in inside:
                total += w
    return total


class _RevenueData:
    """CSR-style arrays for fast revenue evaluation with generated weights."""

    def __init__(self, graph: Graph, params: RevenueParams):
        n = graph.vertex_count
        counts = np.zeros(n, dtype=np.int64)
        for u, v, _ in graph.edges:
            counts[u] += 1
            counts[v] += 1
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.indptr[1:])
        self.indices = np.zeros(self.indptr[-1], dtype=np.int64)
        self.weights = np.zeros(self.indptr[-1], dtype=np.float64)
        cursor = self.indptr[:-1].copy()
        for (u, v, _), w in zip(graph.edges, params.edge_weights):
            self.indices[cursor[u]] = v
            self.weights[cursor[u]] = w
            cursor[u] += 1
            self.indices[cursor[v]] = u
            self.weights[cursor[v]] = w
            cursor[v] += 1
        self.alphas = params.alphas
        self.n = n

    def value(self, items: tuple[int, ...], *, exclude_members: bool) -> float:
        # inner[u] = sum of generated weights from u into the queried set
        inner = np.zeros(self.n, dtype=np.float64)
        for v in set(items):
            lo, hi = self.indptr[v], self.indptr[v + 1]
            np.add.at(inner, self.indices[lo:hi], self.weights[lo:hi])
        if exclude_members:
            for v in set(items):
                inner[v] = 0.0
        nz = inner > 0.0
        if not nz.any():
            return 0.0
        return float(np.sum(inner[nz] ** self.alphas[nz]))


def revenue_value(graph: Graph, params: RevenueParams, items: Iterable[int], variant: str) -> float:
    """Concave-revenue objective; variant is "monotone" or "nonmonotone".

    Each vertex u earns (sum of generated weights from u into S) ** alpha_u.
    The monotone variant sums over every vertex; the non-monotone variant
    sums only over vertices outside S. Convenience path that rebuilds the
    adjacency arrays per call; use revenue_oracle for repeated evaluation.
    """
    data = _RevenueData(graph, params)
    return data.value(tuple(items), exclude_members=(variant == "nonmonotone"))


# ---------------------------------------------------------------------------
# oracle constructors


def coverage_oracle(graph: Graph) -> ValueOracle:
    _coverage_masks(graph)
    return ValueOracle("coverage", graph.vertex_count, lambda s: coverage_value(graph, s), monotone=True)


def maxcut_oracle(graph: Graph) -> ValueOracle:
    return ValueOracle("maxcut", graph.vertex_count, lambda s: maxcut_value(graph, s), monotone=False)


def revenue_oracle(graph: Graph, seed: int, *, monotone: bool, params: RevenueParams | None = None) -> ValueOracle:
    params = params if params is not None else RevenueParams.draw(graph, seed)
    data = _RevenueData(graph, params)
    exclude = not monotone
    kind = "revenue_monotone" if monotone else "revenue_nonmonotone"
    return ValueOracle(kind, graph.vertex_count, lambda s: data.value(s, exclude_members=exclude), monotone=monotone)


def modular_oracle(weights) -> ValueOracle:
    """Additive objective from per-element weights; handy as a test bed."""
    ws = [float(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValidationError("modular weights must be nonnegative")
    return ValueOracle("modular", len(ws), lambda s: math.fsum(ws[e] for e in set(s)), monotone=True)


def adversarial_pair(n: int, c: int, seed: int) -> tuple[ValueOracle, ValueOracle, int]:
    """The capped-cardinality function paired with its planted twin.

    f(A) = min(|A|, c). The twin g agrees with f except on sets containing a
    hidden element a (drawn uniformly from the seed), where g returns c.
    Returns (f_oracle, g_oracle, a); both functions are monotone and
    submodular by construction.
    """
    if c < 2:
        raise ValidationError("adversarial pair requires c >= 2")
    if n < c:
        raise ValidationError("adversarial pair requires n >= c")
    a = SplitMix64(seed).below(n)

    def f_fn(s: tuple[int, ...]) -> float:
        return float(min(len(set(s)), c))

    def g_fn(s: tuple[int, ...]) -> float:
        ss = set(s)
        if a in ss:
            return float(c)
        return float(min(len(ss), c))

    f = ValueOracle("adversarial_f", n, f_fn, monotone=True)
    g = ValueOracle("adversarial_g", n, g_fn, monotone=True)
    return f, g, a


class RestrictedOracle:
    """Parent oracle limited to a sub-universe; shares the parent counter.

    Used for post-processing over the elements a streaming pass retained.
    Queries made here are real queries and count against the parent.
    """

    def __init__(self, parent, universe: Iterable[int]):
        self.universe = tuple(universe)
        self._allowed = set(self.universe)
        self._parent = parent
        self.n = parent.n
        self.monotone = parent.monotone
        self.kind = parent.kind

    @property
    def query_count(self) -> int:
        return self._parent.query_count

    def evaluate(self, items: Iterable[int]) -> float:
        s = tuple(items)
        for e in s:
            if e not in self._allowed:
                raise ValidationError(f"element {e} outside restricted universe")
        return self._parent.evaluate(s)

    def ground(self) -> tuple[int, ...]:
        return self.universe
