"""Highest-label push-relabel max-flow with warm starts.

Capacities are given as a mapping ``{(u, v): capacity}`` over arbitrary
hashable nodes. All arithmetic is exact: rational inputs are scaled by the
common denominator and the solve itself runs on Python integers.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

from .config import DEFAULT_CONFIG, SolverConfig, SolverStats

Node = Hashable
Capacity = Mapping[tuple[Node, Node], Fraction]


class PreflowError(ValueError):
    """A warm-start flow is not a valid preflow for the given capacities."""


class InvariantError(RuntimeError):
    """A solver invariant was violated; indicates a bug."""


@dataclass
class FlowState:
    """Anti-symmetric flow: ``flow[(v, w)] == -flow[(w, v)]`` for every stored pair."""

    flow: dict[tuple[Node, Node], Fraction] = field(default_factory=dict)
    label: dict[Node, int] = field(default_factory=dict)

    @classmethod
    def zero(cls) -> "FlowState":
        return cls()

    @classmethod
    def from_arc_flows(cls, arc_flows: Mapping[tuple[Node, Node], Fraction]) -> "FlowState":
        """Build from one-directional net flows, filling in the reverse entries."""
        flow: dict[tuple[Node, Node], Fraction] = {}
        for (v, w), x in arc_flows.items():
            x = Fraction(x)
            if x == 0:
                continue
            flow[(v, w)] = flow.get((v, w), Fraction(0)) + x
            flow[(w, v)] = -flow[(v, w)]
        return cls({k: x for k, x in flow.items() if x != 0})

    def f(self, v: Node, w: Node) -> Fraction:
        return self.flow.get((v, w), Fraction(0))

    def nodes(self) -> set:
        return {x for pair in self.flow for x in pair}

    def excess(self, v: Node) -> Fraction:
        return sum((x for (a, b), x in self.flow.items() if b == v), Fraction(0))

    def excesses(self) -> dict[Node, Fraction]:
        out: dict[Node, Fraction] = {}
        for (_, b), x in self.flow.items():
            out[b] = out.get(b, Fraction(0)) + x
        return out


@dataclass(frozen=True)
class CutResult:
    flow_value: Fraction
    t_star: frozenset
    f_star: FlowState


def validate_preflow(cap: Capacity, fs: FlowState, source: Node) -> str | None:
    """Return ``None`` if ``fs`` is a valid preflow for ``cap``, else a description."""
    for (v, w), x in fs.flow.items():
        if fs.flow.get((w, v), Fraction(0)) != -x:
            return f"anti-symmetry violated on ({v!r}, {w!r}): {x} vs {fs.f(w, v)}"
        c = cap.get((v, w), 0)
        if x > c:
            return f"capacity violated on ({v!r}, {w!r}): flow {x} > capacity {c}"
    for v, e in fs.excesses().items():
        if v != source and e < 0:
            return f"negative excess {e} at {v!r}"
    return None


def _lcm_denominator(values) -> int:
    d = 1
    for x in values:
        d = math.lcm(d, Fraction(x).denominator)
    return d


def max_flow(
    cap: Capacity,
    s: Node,
    t: Node,
    f0: FlowState | None = None,
    config: SolverConfig = DEFAULT_CONFIG,
    stats: SolverStats | None = None,
) -> CutResult:
    """Maximum ``s``-``t`` flow and the inclusion-wise minimal sink side of a min cut.

    ``f0`` is any valid preflow (zero flow if omitted). The returned ``t_star``
    is the set of nodes that can reach ``t`` in the final residual graph.
    """
    if s == t:
        raise ValueError("source and sink must differ")
    if f0 is not None and f0.flow:
        problem = validate_preflow(cap, f0, s)
        if problem is not None:
            if config.strict_warm_start:
                raise PreflowError(problem)
            if stats is not None:
                stats.add(warm_start_fallbacks=1)
            f0 = None
    nodes = {s, t}
    for (u, v), c in cap.items():
        if c < 0:
            raise ValueError(f"negative capacity on ({u!r}, {v!r})")
        nodes.add(u)
        nodes.add(v)
    if f0 is not None:
        nodes |= f0.nodes()
    order = sorted(nodes, key=repr)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    scale = _lcm_denominator(
        list(cap.values()) + (list(f0.flow.values()) if f0 is not None else [])
    )

    capi: list[dict[int, int]] = [dict() for _ in range(n)]
    for (u, v), c in cap.items():
        if c == 0 or u == v:
            continue
        a, b = index[u], index[v]
        capi[a][b] = capi[a].get(b, 0) + int(c * scale)
        capi[b].setdefault(a, 0)
    excess = [0] * n
    res = [dict(row) for row in capi]
    if f0 is not None:
        for (u, v), x in f0.flow.items():
            if u == v:
                continue
            a, b = index[u], index[v]
            x = int(x * scale)
            capi[a].setdefault(b, 0)
            capi[b].setdefault(a, 0)
            res[a][b] = res[a].get(b, capi[a][b]) - x
            res[b].setdefault(a, capi[b][a])
            excess[b] += x
    solver = _PushRelabel(res, excess, index[s], index[t], config)
    solver.run()
    if stats is not None:
        stats.add(
            maxflow_calls=1,
            pushes=solver.pushes,
            relabels=solver.relabels,
            global_relabels=solver.global_relabels,
        )
    flow: dict[tuple[Node, Node], Fraction] = {}
    for a in range(n):
        for b, r in res[a].items():
            x = capi[a][b] - r
            if x != 0:
                flow[(order[a], order[b])] = Fraction(x, scale)
    fs = FlowState(flow, {order[i]: d for i, d in enumerate(solver.label)})
    t_side = frozenset(order[i] for i in solver.sink_side())
    return CutResult(Fraction(solver.excess[index[t]], scale), t_side, fs)


class _PushRelabel:
    """Highest-label preflow push on integer residual capacities.

    Both phases run in one loop: nodes cut off from the sink get labels >= n
    and return their excess to the source, so the result is a proper flow.
    """

    def __init__(self, res: list[dict[int, int]], excess: list[int], s: int, t: int,
                 config: SolverConfig):
        self.res = res
        self.adj = [list(r) for r in res]
        self.excess = excess
        self.s, self.t, self.n = s, t, len(res)
        self.config = config
        self.pushes = self.relabels = self.global_relabels = 0
        self.label = [0] * self.n
        self.current = [0] * self.n
        self.count = [0] * (2 * self.n + 1)
        self.buckets: list[list[int]] = [[] for _ in range(2 * self.n + 1)]
        self.active = [False] * self.n
        self.top = 0
        # res[v][w] + res[w][v] is fixed by the capacities; it moves only if
        # the implied flow stops being anti-symmetric
        self.pair_total = (
            {(v, w): r + res[w][v] for v in range(self.n) for w, r in res[v].items()}
            if config.check_invariants else {}
        )

    def run(self):
        res, excess, s = self.res, self.excess, self.s
        for v in self.adj[s]:
            r = res[s][v]
            if r > 0:
                res[s][v] = 0
                res[v][s] += r
                excess[v] += r
                excess[s] -= r
        self._global_relabel()
        threshold = max(1, int(self.config.global_relabel_freq * self.n))
        since_global = 0
        buckets = self.buckets
        while True:
            while self.top >= 0 and not buckets[self.top]:
                self.top -= 1
            if self.top < 0:
                break
            u = buckets[self.top].pop()
            self.active[u] = False
            since_global += self._discharge(u)
            if self.config.check_invariants:
                self._check()
            if self.config.global_relabel and since_global >= threshold:
                since_global = 0
                self._global_relabel()

    def _activate(self, v: int):
        if not self.active[v] and v != self.s and v != self.t and self.label[v] < 2 * self.n:
            self.active[v] = True
            self.buckets[self.label[v]].append(v)
            if self.label[v] > self.top:
                self.top = self.label[v]

    def _set_label(self, v: int, d: int):
        self.count[self.label[v]] -= 1
        self.label[v] = d
        self.count[d] += 1

    def _discharge(self, u: int) -> int:
        res, excess, label, nbrs = self.res, self.excess, self.label, self.adj[u]
        n = self.n
        relabels = 0
        while excess[u] > 0:
            i = self.current[u]
            while i < len(nbrs):
                v = nbrs[i]
                r = res[u][v]
                if r > 0 and label[u] == label[v] + 1:
                    delta = r if r < excess[u] else excess[u]
                    res[u][v] = r - delta
                    res[v][u] += delta
                    excess[u] -= delta
                    excess[v] += delta
                    self.pushes += 1
                    self._activate(v)
                    if excess[u] == 0:
                        break
                i += 1
            if excess[u] == 0:
                self.current[u] = i
                break
            self.current[u] = 0
            old = label[u]
            new = 1 + min((label[v] for v in nbrs if res[u][v] > 0), default=2 * n - 1)
            self._set_label(u, min(new, 2 * n))
            self.relabels += 1
            relabels += 1
            if old < n and self.count[old] == 0:
                self._gap(old)
            if label[u] >= 2 * n:
                break
        return relabels

    def _gap(self, k: int):
        """No node has label ``k < n``: everything above it cannot reach the sink."""
        n = self.n
        for v in range(n):
            if k < self.label[v] < n and v != self.s:
                self._set_label(v, n)
        for b in self.buckets:
            b.clear()
        self.active = [False] * n
        self.top = 0
        for v in range(n):
            if self.excess[v] > 0:
                self._activate(v)

    def _reverse_bfs(self, root: int, allowed) -> dict[int, int]:
        """Residual distances to ``root``."""
        res, dist = self.res, {root: 0}
        queue = deque([root])
        while queue:
            w = queue.popleft()
            for v in self.adj[w]:
                if v not in dist and res[v][w] > 0 and allowed(v):
                    dist[v] = dist[w] + 1
                    queue.append(v)
        return dist

    def _global_relabel(self):
        n, s, t = self.n, self.s, self.t
        self.global_relabels += 1
        to_sink = self._reverse_bfs(t, lambda v: v != s)
        to_source = self._reverse_bfs(s, lambda v: v not in to_sink)
        for v in range(n):
            if v in to_sink:
                self.label[v] = to_sink[v]
            elif v in to_source:
                self.label[v] = n + to_source[v]
            else:
                self.label[v] = 2 * n
        self.label[s] = n
        self.count = [0] * (2 * n + 1)
        for d in self.label:
            self.count[d] += 1
        self.current = [0] * n
        for b in self.buckets:
            b.clear()
        self.active = [False] * n
        self.top = 0
        for v in range(n):
            if self.excess[v] > 0:
                self._activate(v)

    def sink_side(self) -> set[int]:
        return set(self._reverse_bfs(self.t, lambda v: True))

    def _check(self):
        for v in range(self.n):
            if v != self.s and self.excess[v] < 0:
                raise InvariantError(f"negative excess at node {v}")
            for w, r in self.res[v].items():
                if r + self.res[w][v] != self.pair_total[(v, w)]:
                    raise InvariantError(f"anti-symmetry broken on ({v}, {w})")
                if r < 0:
                    raise InvariantError(f"capacity exceeded on ({v}, {w})")
                if r > 0 and v != self.s and self.label[v] > self.label[w] + 1:
                    raise InvariantError(f"invalid labelling on ({v}, {w})")
            if self.res[v].get(v, 0):
                raise InvariantError("self-loop residual")
