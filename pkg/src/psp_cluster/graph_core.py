"""Weighted undirected graphs, their label-ordered orientation, and cut sums.

Vertices are ``0..n-1`` internally. ``WeightedGraph.labels`` keeps the
original (input) label of every vertex for display; by default vertex ``i``
is shown as ``i + 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Invalid graph data or malformed edge-list input."""


def to_rational(value) -> Fraction:
    """Exact conversion of ints, Fractions, and decimal or ``p/q`` strings."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[tuple[int, int, Fraction], ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise GraphError(f"need at least 2 vertices, got {self.n}")
        merged: dict[tuple[int, int], Fraction] = {}
        for u, v, w in self.edges:
            w = to_rational(w)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if w <= 0:
                raise GraphError(f"non-positive weight {w} on edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            merged[key] = merged.get(key, Fraction(0)) + w
        object.__setattr__(
            self, "edges", tuple((u, v, w) for (u, v), w in sorted(merged.items()))
        )
        labels = tuple(self.labels) or tuple(range(1, self.n + 1))
        if len(labels) != self.n:
            raise GraphError("labels must have one entry per vertex")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], n: int | None = None) -> "WeightedGraph":
        """Build from 0-indexed ``(u, v, w)`` triples; ``n`` defaults to max label + 1."""
        edges = [(int(u), int(v), to_rational(w)) for u, v, w in edges]
        if n is None:
            n = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def weight(self, u: int, v: int) -> Fraction:
        a, b = min(u, v), max(u, v)
        for x, y, w in self.edges:
            if (x, y) == (a, b):
                return w
        return Fraction(0)

    def relabel(self, perm: list[int]) -> "WeightedGraph":
        """Graph with vertex ``v`` renamed to ``perm[v]``; display labels follow the vertices."""
        labels = [0] * self.n
        for v, p in enumerate(perm):
            labels[p] = self.labels[v]
        return WeightedGraph(
            self.n, tuple((perm[u], perm[v], w) for u, v, w in self.edges), tuple(labels)
        )

    def induced(self, vertices: Iterable[int]) -> "WeightedGraph":
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = tuple(
            (index[u], index[v], w) for u, v, w in self.edges if u in index and v in index
        )
        return WeightedGraph(len(vs), edges, tuple(self.labels[v] for v in vs))

    def is_connected(self) -> bool:
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class Digraph:
    """Arc capacities ``cap[(v, w)]``; absent pairs have capacity zero."""

    n: int
    cap: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for (v, w), c in self.cap.items():
            if c > 0 and not v < w:
                raise GraphError(f"arc ({v}, {w}) violates the v < w orientation")

    def c(self, v: int, w: int) -> Fraction:
        return self.cap.get((v, w), Fraction(0))

    def in_arcs(self, w: int) -> list[tuple[int, Fraction]]:
        return [(v, c) for (v, x), c in self.cap.items() if x == w]

    def out_arcs(self, v: int) -> list[tuple[int, Fraction]]:
        return [(w, c) for (x, w), c in self.cap.items() if x == v]


def orient(g: WeightedGraph) -> Digraph:
    """Direct every edge from its smaller to its larger endpoint."""
    return Digraph(g.n, {(u, v): w for u, v, w in g.edges})


def cut_value(d: Digraph, b1: Iterable[int], b2: Iterable[int]) -> Fraction:
    b1 = set(b1)
    b2 = set(b2)
    return sum((c for (v, w), c in d.cap.items() if v in b1 and w in b2), Fraction(0))


def incut(d: Digraph, b: Iterable[int]) -> Fraction:
    b = set(b)
    if not b:
        raise GraphError("incut is defined on nonempty sets only")
    if not b <= set(range(d.n)):
        raise GraphError(f"{sorted(b)} is not a subset of the vertex set")
    return cut_value(d, set(range(d.n)) - b, b)


_LINE = re.compile(r"^\s*(\S+)\s+(\S+)\s+(\S+)\s*$")


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse ``u v w`` lines; ``#`` starts a comment.

    Labels are positive integers and are compacted to ``0..n-1`` in numeric
    order, so orientation follows the input labels. Weights may be integers,
    decimals, or ``p/q``.
    """
    raw: list[tuple[int, int, Fraction]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if m is None:
            raise GraphError(f"line {lineno}: expected 'u v w', got {line.strip()!r}")
        try:
            u, v = int(m.group(1)), int(m.group(2))
        except ValueError:
            raise GraphError(f"line {lineno}: vertex labels must be integers") from None
        try:
            w = Fraction(m.group(3))
        except (ValueError, ZeroDivisionError):
            raise GraphError(f"line {lineno}: bad weight {m.group(3)!r}") from None
        if u < 1 or v < 1:
            raise GraphError(f"line {lineno}: vertex labels must be >= 1")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if w <= 0:
            raise GraphError(f"line {lineno}: weight must be positive, got {w}")
        raw.append((u, v, w))
    labels = sorted({x for u, v, _ in raw for x in (u, v)})
    if len(labels) < 2:
        raise GraphError("edge list must mention at least 2 vertices")
    index = {lab: i for i, lab in enumerate(labels)}
    return WeightedGraph(
        len(labels), tuple((index[u], index[v], w) for u, v, w in raw), tuple(labels)
    )
