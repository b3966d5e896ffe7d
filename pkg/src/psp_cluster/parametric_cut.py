"""Parametric minimum s-j cut on the growing vertex set ``{0, ..., j}``.

The network ``D_j(gamma)`` has a new source ``SOURCE``, sink ``j``, source
arcs ``max(0, -x_v(gamma))``, sink arcs ``max(0, x_v(gamma)) + c(v, j)`` and
the original arcs among ``0..j-1``. Its minimal sink side, as a function of
gamma, is found by divide and conquer over gamma-intervals with warm-started
max-flows.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import DEFAULT_CONFIG, SolverConfig, SolverStats
from .graph_core import Digraph
from .maxflow import FlowState, max_flow, validate_preflow
from .pwl import NEG_INF, PwlFunction, pos_part, pwl_sum, solve_crossing

SOURCE = "s"

BreakpointList = list[tuple[Fraction, frozenset]]


class ParametricCutError(RuntimeError):
    pass


@dataclass(frozen=True)
class ParametricNetwork:
    j: int
    source_cap: dict[int, PwlFunction]
    sink_cap: dict[int, PwlFunction]
    inner: dict[tuple[int, int], Fraction]
    base: Digraph

    @property
    def vertices(self) -> frozenset:
        """``U = {SOURCE, 0, ..., j}``."""
        return frozenset([SOURCE, *range(self.j + 1)])

    def arc_functions(self) -> dict[tuple, PwlFunction]:
        arcs: dict[tuple, PwlFunction] = {}
        for v in range(self.j):
            arcs[(SOURCE, v)] = self.source_cap[v]
            arcs[(v, self.j)] = self.sink_cap[v]
        for key, c in self.inner.items():
            arcs[key] = PwlFunction.constant(c)
        return arcs

    def cap_at(self, gamma) -> dict[tuple, Fraction]:
        gamma = Fraction(gamma)
        cap = {}
        for v in range(self.j):
            cap[(SOURCE, v)] = self.source_cap[v](gamma)
            cap[(v, self.j)] = self.sink_cap[v](gamma)
        cap.update(self.inner)
        return cap

    def cut_function(self, sink_side) -> PwlFunction:
        """Capacity of the cut with the given sink side, as a function of gamma."""
        sink_side = set(sink_side)
        terms = []
        for v in range(self.j):
            if v in sink_side:
                terms.append(self.source_cap[v])
            elif self.j in sink_side:
                terms.append(self.sink_cap[v])
        const = sum(
            (c for (v, w), c in self.inner.items() if v not in sink_side and w in sink_side),
            Fraction(0),
        )
        return pwl_sum(terms) + const


def build_network(d: Digraph, j: int, x: Sequence[PwlFunction]) -> ParametricNetwork:
    if not 1 <= j < d.n:
        raise ValueError(f"sink vertex {j} out of range 1..{d.n - 1}")
    source_cap, sink_cap = {}, {}
    for v in range(j):
        source_cap[v] = pos_part(-x[v])
        sink_cap[v] = pos_part(x[v]) + d.c(v, j)
    inner = {(v, w): c for (v, w), c in d.cap.items() if w < j and c > 0}
    return ParametricNetwork(j, source_cap, sink_cap, inner, d)


def gamma_plus(pn: ParametricNetwork) -> Fraction:
    """Above this value the minimal sink side is ``{j}``."""
    d, j = pn.base, pn.j
    into = [Fraction(0)] * (j + 1)
    out = [Fraction(0)] * (j + 1)
    for (v, w), c in d.cap.items():
        if w <= j:
            into[w] += c
            out[v] += c
    return max(into[v] + out[v] for v in range(j))


def gamma_minus(pn: ParametricNetwork, mu: Sequence) -> Fraction:
    """Below this value the minimal sink side is ``{0, ..., j}``."""
    return min(max(mu[v], pn.base.c(v, pn.j)) for v in range(pn.j))


def _merged(node, S, T, j):
    if node == SOURCE or node in S:
        return SOURCE
    if node == j or node in T:
        return j
    return node


def contract(pn: ParametricNetwork, gamma_bar, S, T, f: FlowState | None):
    """Evaluate at ``gamma_bar``, contract ``S`` into the source and ``T`` into ``j``.

    Returns the contracted capacities and a preflow for them adapted from ``f``.
    """
    S, T, j = frozenset(S) | {SOURCE}, frozenset(T) | {pn.j}, pn.j
    if S & T:
        raise ValueError(f"source side {set(S)} and sink side {set(T)} overlap")
    middle = [v for v in range(j + 1) if v not in S and v not in T]
    mid = set(middle)
    full = pn.cap_at(gamma_bar)
    cap: dict[tuple, Fraction] = {}
    for (u, v), c in full.items():
        if c == 0:
            continue
        a, b = _merged(u, S, T, j), _merged(v, S, T, j)
        if a == b or a == j or b == SOURCE or (a == SOURCE and b == j):
            continue
        cap[(a, b)] = cap.get((a, b), Fraction(0)) + c
    if not f or not f.flow:
        return cap, FlowState.zero()
    return cap, adapt_preflow(cap, f, S, T, j, mid)


def adapt_preflow(cap, f: FlowState, S, T, j, middle) -> FlowState:
    """Map ``f`` onto the contracted network, clip to capacity, repair deficits."""
    net: dict[tuple, Fraction] = {}
    for (a, b), x in f.flow.items():
        if x <= 0:
            continue
        A, B = _merged(a, S, T, j), _merged(b, S, T, j)
        if A == B:
            continue
        net[(A, B)] = net.get((A, B), Fraction(0)) + x
        net[(B, A)] = net.get((B, A), Fraction(0)) - x
    out: dict[tuple, Fraction] = {}
    for (A, B), x in net.items():
        if x > 0:
            x = min(x, cap.get((A, B), Fraction(0)))
            if x > 0:
                out[(A, B)] = x
    excess = {v: Fraction(0) for v in middle}
    for (A, B), x in out.items():
        if B in excess:
            excess[B] += x
        if A in excess:
            excess[A] -= x
    # push deficits downstream along positive flow until absorbed
    budget = 8 * (len(middle) + 2) ** 2
    deficit = [v for v in middle if excess[v] < 0]
    while deficit:
        budget -= 1
        if budget < 0:
            return FlowState.zero()
        v = deficit.pop()
        need = -excess[v]
        if need <= 0:
            continue
        for (A, B), x in list(out.items()):
            if A != v or need == 0:
                continue
            r = min(x, need)
            out[(A, B)] = x - r
            need -= r
            excess[v] += r
            if B in excess:
                excess[B] -= r
                if excess[B] < 0:
                    deficit.append(B)
        if excess[v] < 0:
            return FlowState.zero()
    fs = FlowState.from_arc_flows({k: x for k, x in out.items() if x > 0})
    if validate_preflow(cap, fs, SOURCE) is not None:
        return FlowState.zero()
    return fs


def _expand(t_star, T, j) -> frozenset:
    t_star = set(t_star)
    if j in t_star:
        t_star |= set(T)
    t_star.discard(SOURCE)
    return frozenset(t_star)


def parametric_min_cut(
    pn: ParametricNetwork,
    mu: Sequence,
    config: SolverConfig = DEFAULT_CONFIG,
    stats: SolverStats | None = None,
    trace: list | None = None,
) -> BreakpointList:
    """Breakpoints ``[(gamma_1, B_1), ...]`` of the minimal sink side ``B*(gamma)``.

    ``B*(gamma)`` is ``{0..j}`` below ``gamma_1`` and ``B_l`` on
    ``[gamma_l, gamma_{l+1})``. ``trace``, when given, collects
    ``(gamma_bar, sink_side)`` for every slice solved, in processing order.
    """
    j = pn.j
    U = pn.vertices
    g_plus, g_minus = gamma_plus(pn), gamma_minus(pn, mu)
    if g_minus > g_plus:
        raise ParametricCutError(f"gamma- = {g_minus} exceeds gamma+ = {g_plus}")
    if g_minus == g_plus:
        if stats is not None:
            stats.add(breakpoints=1)
        return [(g_minus, frozenset([j]))]
    first = max_flow(pn.cap_at(g_minus), SOURCE, j, None, config, stats)
    t_first = _expand(first.t_star, {j}, j)
    if trace is not None:
        trace.append(("start", g_minus, t_first))
    full_side = U - {SOURCE}

    def solve(item):
        lo, hi, f, S, T = item
        g_bar = solve_crossing(pn.cut_function(U - S), pn.cut_function(T), lo, hi)
        cap, f_bar = contract(pn, g_bar, S, T, f)
        res = max_flow(cap, SOURCE, j, f_bar, config, stats)
        t_new = _expand(res.t_star, T, j)
        if t_new == T:
            return g_bar, t_new, None
        return g_bar, t_new, [
            (g_bar, hi, res.f_star, S | (U - t_new), T),
            (lo, g_bar, f, S, t_new),
        ]

    found: dict[Fraction, frozenset] = {}
    if t_first != full_side:
        # on ties the whole prefix is optimal at gamma- without being minimal
        found[g_minus] = t_first

    def record(g_bar, t_new, children):
        if trace is not None:
            trace.append(("slice", g_bar, t_new))
        if children is None:
            prev = found.get(g_bar)
            found[g_bar] = t_new if prev is None or t_new < prev else prev
        return children or []

    # B*(gamma) only shrinks as gamma grows, so vertices outside the sink side
    # at gamma- stay on the source side for the whole interval
    work = [(g_minus, g_plus, first.f_star, U - t_first, frozenset([j]))]
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            while work:
                results = list(pool.map(solve, work))
                work = [c for r in results for c in record(*r)]
    else:
        while work:
            work.extend(record(*solve(work.pop())))

    out: BreakpointList = []
    prev = frozenset(full_side)
    for g in sorted(found):
        b = found[g]
        if b == prev:
            continue
        if not b < prev or j not in b:
            raise ParametricCutError(f"breakpoint sets are not nested at gamma = {g}")
        out.append((g, b))
        prev = b
    if not out or out[-1][1] != frozenset([j]):
        raise ParametricCutError("parametric cut did not end at the singleton {j}")
    if stats is not None:
        stats.add(breakpoints=len(out))
    return out
