"""Principal sequence of partitions of the incut function of an oriented graph."""
from __future__ import annotations

import time
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import DEFAULT_CONFIG, SolverConfig, SolverStats
from .graph_core import WeightedGraph, orient
from .parametric_cut import (
    BreakpointList,
    ParametricNetwork,
    build_network,
    gamma_minus,
    gamma_plus,
    parametric_min_cut,
)
from .pwl import NEG_INF, PwlFunction, make_x

Partition = tuple[frozenset, ...]


class PartitionMergeError(RuntimeError):
    pass


def canonical(blocks) -> Partition:
    return tuple(sorted((frozenset(b) for b in blocks), key=lambda b: (min(b), sorted(b))))


@dataclass(frozen=True)
class PartitionFunction:
    """Piecewise-constant ``gamma -> partition``.

    ``partitions[l]`` holds on ``[critical_values[l-1], critical_values[l])``
    with the outer ends at minus and plus infinity (left-closed pieces).
    """

    critical_values: tuple[Fraction, ...]
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        if len(self.partitions) != len(self.critical_values) + 1:
            raise ValueError("need one more partition than critical values")

    def at(self, gamma) -> Partition:
        return self.partitions[bisect_right(self.critical_values, Fraction(gamma))]

    @classmethod
    def build(cls, pieces: list[tuple[Fraction | None, Partition]]) -> "PartitionFunction":
        """From ``[(start, partition), ...]`` with the first start ``None``; merges repeats."""
        cvs: list[Fraction] = []
        parts: list[Partition] = []
        for start, p in pieces:
            p = canonical(p)
            if parts and parts[-1] == p:
                continue
            if parts:
                cvs.append(start)
            parts.append(p)
        return cls(tuple(cvs), tuple(parts))


@dataclass(frozen=True)
class PSPResult:
    critical_values: tuple[Fraction, ...]
    partitions: tuple[Partition, ...]
    n: int
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        ground = frozenset(range(self.n))
        if self.partitions[0] != (ground,):
            raise PartitionMergeError("first partition of the sequence must be the whole set")
        if self.partitions[-1] != tuple(frozenset([v]) for v in range(self.n)):
            raise PartitionMergeError("last partition of the sequence must be all singletons")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))

    def at(self, gamma) -> Partition:
        return self.partitions[bisect_right(self.critical_values, Fraction(gamma))]

    @property
    def partition_function(self) -> PartitionFunction:
        return PartitionFunction(self.critical_values, self.partitions)


@dataclass(frozen=True)
class IterationTrace:
    """What one pass of the outer loop saw and produced."""

    j: int
    network: ParametricNetwork
    mu: tuple
    gamma_minus: Fraction
    gamma_plus: Fraction
    breakpoints: BreakpointList
    slices: list


def merge_partition(pf: PartitionFunction, bf: BreakpointList, j: int) -> PartitionFunction:
    """Fold the parametric minimiser ``B*(gamma)`` of iteration ``j`` into ``pf``.

    Blocks meeting ``B*(gamma)`` are removed and replaced by one block: their
    union with ``B*(gamma)``. Where the minimiser ties with a larger set it can
    cut through an old block; that block is still tight, so it is absorbed
    whole rather than split.
    """
    b_cvs = [g for g, _ in bf]
    b_sets = [frozenset(range(j + 1))] + [frozenset(b) for _, b in bf]
    grid = sorted(set(pf.critical_values) | set(b_cvs))
    pieces: list[tuple[Fraction | None, Partition]] = []
    for start in [None, *grid]:
        if start is None:
            probe = grid[0] - 1 if grid else Fraction(0)
        else:
            probe = start
        old = pf.at(probe)
        b = b_sets[bisect_right(b_cvs, probe)]
        if j not in b or max(b) > j:
            raise PartitionMergeError(f"{sorted(b)} is not a sink side for vertex {j}")
        kept = [c for c in old if not c & b]
        merged = b.union(*(c for c in old if c & b))
        pieces.append((start, canonical(kept + [merged])))
    return PartitionFunction.build(pieces)


def update_mu_x(
    bf: BreakpointList,
    mu: list,
    x: list,
    j: int,
    g_singletons: Sequence[Fraction],
) -> None:
    """Raise each ``mu_i`` to the value where ``i`` leaves ``B*(gamma)``; rebuild ``x_i``."""
    for i in range(j + 1):
        if i != j:
            drop = next((g for g, b in bf if i not in b), None)
            if drop is None:
                raise PartitionMergeError(f"vertex {i} never leaves B*(gamma) in iteration {j}")
            mu[i] = max(mu[i], drop)
        value = make_x(g_singletons[i], mu[i])
        if i < len(x):
            x[i] = value
        else:
            x.append(value)


def compute_psp(
    g: WeightedGraph,
    config: SolverConfig = DEFAULT_CONFIG,
    stats: SolverStats | None = None,
    trace: list[IterationTrace] | None = None,
) -> PSPResult:
    """PSP of the incut function of ``orient(g)``.

    ``trace``, when given, receives one ``IterationTrace`` per sink vertex.
    """
    started = time.perf_counter()
    d = orient(g)
    n = g.n
    g_single = [Fraction(0)] * n
    for (_, w), c in d.cap.items():
        g_single[w] += c
    mu: list = [NEG_INF] * n
    x: list[PwlFunction] = [make_x(g_single[0], NEG_INF)]
    pf = PartitionFunction((), ((frozenset([0]),),))
    for j in range(1, n):
        pn = build_network(d, j, x)
        slices: list | None = [] if trace is not None else None
        bf = parametric_min_cut(pn, mu, config, stats, slices)
        if trace is not None:
            trace.append(IterationTrace(
                j, pn, tuple(mu), gamma_minus(pn, mu), gamma_plus(pn), bf, slices,
            ))
        pf = merge_partition(pf, bf, j)
        if j < n - 1:
            update_mu_x(bf, mu, x, j, g_single)
    if stats is not None:
        stats.add(wall_time=time.perf_counter() - started)
    return PSPResult(pf.critical_values, pf.partitions, n, g.labels)
