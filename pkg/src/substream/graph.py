"""Undirected weighted graphs loaded from SNAP-style edge lists.

Cleaning rules applied on ingestion (SNAP files contain both artifacts):
self-loops are dropped, parallel edges are merged by summing their weights.
Vertex ids in the input may be arbitrary integers; they are compacted to
0..n-1 in order of first appearance, reading each line left to right.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import EdgeListParseError, ValidationError


@dataclass
class Graph:
    """Immutable adjacency structure; the ground set is the vertex set."""

    vertex_count: int
    edges: tuple[tuple[int, int, float], ...]
    adjacency: list[list[tuple[int, float]]] = field(repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @staticmethod
    def from_edges(vertex_count: int, raw_edges) -> "Graph":
        """Build from (u, v, w) triples over ids already in 0..vertex_count-1.

        Applies the same cleaning as file loading: drops self-loops, merges
        duplicates (in either orientation) by summing weights.
        """
        merged: dict[tuple[int, int], float] = {}
        for u, v, w in raw_edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValidationError(f"edge ({u}, {v}) outside vertex range 0..{vertex_count - 1}")
            if w < 0:
                raise ValidationError(f"negative edge weight {w} on ({u}, {v})")
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + float(w)
        edges = tuple((u, v, w) for (u, v), w in merged.items())
        adjacency: list[list[tuple[int, float]]] = [[] for _ in range(vertex_count)]
        for u, v, w in edges:
            adjacency[u].append((v, w))
            adjacency[v].append((u, w))
        return Graph(vertex_count, edges, adjacency)


def load_edge_list(path: str | os.PathLike) -> Graph:
    """Parse a whitespace-separated edge list file into a Graph.

    Lines starting with '#' are comments; data lines are "u v" or "u v w".
    Unweighted lines get weight 1.0. A self-loop still registers its vertex
    id before the edge is dropped.
    """
    ids: dict[int, int] = {}
    raw: list[tuple[int, int, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) not in (2, 3):
                raise EdgeListParseError(lineno, f"expected 'u v' or 'u v w', got {text!r}")
            try:
                u_raw = int(parts[0])
                v_raw = int(parts[1])
            except ValueError:
                raise EdgeListParseError(lineno, f"non-integer vertex id in {text!r}") from None
            w = 1.0
            if len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise EdgeListParseError(lineno, f"non-numeric weight in {text!r}") from None
                if w != w or w in (float("inf"), float("-inf")):
                    raise EdgeListParseError(lineno, f"non-finite weight in {text!r}")
            if w < 0:
                raise ValidationError(f"line {lineno}: negative weight {w}")
            for raw_id in (u_raw, v_raw):
                if raw_id not in ids:
                    ids[raw_id] = len(ids)
            raw.append((ids[u_raw], ids[v_raw], w))
    return Graph.from_edges(len(ids), raw)
