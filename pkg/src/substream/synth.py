"""Seeded synthetic instance families for verification and benchmarks.

Everything here is deterministic in the seed via the package RNG, so
verification campaigns and benchmark graphs reproduce bit for bit.
"""

from __future__ import annotations

from .errors import ValidationError
from .graph import Graph
from .rng import SplitMix64


def er_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with unit weights."""
    if not (0 <= p <= 1):
        raise ValidationError("p must lie in [0, 1]")
    gen = SplitMix64(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if gen.next_float() < p:
                edges.append((u, v, 1.0))
    return Graph.from_edges(n, edges)


def ba_graph(n: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph: each new vertex attaches to m distinct
    existing vertices with probability proportional to degree + 1.

    Produces the heavy-tailed degree profile typical of social-network
    snapshots, at any desired size.
    """
    if m < 1 or n < m + 1:
        raise ValidationError("need n > m >= 1")
    gen = SplitMix64(seed)
    # bag holds each existing vertex once (the +1 smoothing) plus once per
    # incident edge, so a uniform draw is proportional to degree + 1
    bag: list[int] = [0]
    edges: list[tuple[int, int, float]] = []
    for v in range(1, n):
        targets: set[int] = set()
        want = min(m, v)
        while len(targets) < want:
            targets.add(bag[gen.below(len(bag))])
        bag.append(v)
        for u in sorted(targets):
            edges.append((u, v, 1.0))
            bag.append(u)
            bag.append(v)
    return Graph.from_edges(n, edges)


def triangle_noise_graph(n: int, seed: int, noise_edges: int | None = None) -> Graph:
    """Disjoint random-weight triangles plus random noise edges; a small
    max-cut family that exercises non-monotone behavior."""
    if n < 3:
        raise ValidationError("need n >= 3")
    gen = SplitMix64(seed)
    edges: list[tuple[int, int, float]] = []
    for start in range(0, n - 2, 3):
        a, b, c = start, start + 1, start + 2
        edges.append((a, b, 0.5 + gen.next_float()))
        edges.append((b, c, 0.5 + gen.next_float()))
        edges.append((a, c, 0.5 + gen.next_float()))
    if noise_edges is None:
        noise_edges = n // 2
    for _ in range(noise_edges):
        u = gen.below(n)
        v = gen.below(n)
        if u != v:
            edges.append((u, v, 0.25 * gen.next_float()))
    return Graph.from_edges(n, edges)


def random_modular_weights(n: int, seed: int, scale: float = 10.0) -> list[float]:
    gen = SplitMix64(seed)
    return [scale * gen.next_float() for _ in range(n)]


def geometric_modular_weights(n: int, ratio: float, seed: int) -> list[float]:
    """Weights growing by `ratio` per element with slight jitter; streams of
    these force every block to be accepted, which exercises buffer deletion."""
    gen = SplitMix64(seed)
    weights = []
    w = 1.0
    for _ in range(n):
        weights.append(w * (1.0 + 0.01 * gen.next_float()))
        w *= ratio
    return weights


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i, 1.0) for i in range(1, leaves + 1)])


def triangle_graph() -> Graph:
    return Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
