"""Brute-force references: partition enumeration, Dilworth truncation, PSP, MMI, min-cut.

Everything here is exponential and only meant for small ground sets. None of
it shares code with the flow-based solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .graph_core import Digraph, WeightedGraph, incut, orient

DEFAULT_LIMIT = 10

Partition = tuple[frozenset, ...]


class OracleLimitError(ValueError):
    pass


def canonical(partition: Iterable[Iterable]) -> Partition:
    """Blocks as frozensets, sorted by their smallest element."""
    return tuple(sorted((frozenset(b) for b in partition), key=lambda b: (min(b), sorted(b))))


@dataclass
class SetFunction:
    """A set function on nonempty subsets of ``ground``, memoised."""

    ground: tuple
    fn: Callable[[frozenset], Fraction]
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, b: Iterable) -> Fraction:
        b = frozenset(b)
        if b not in self._cache:
            self._cache[b] = Fraction(self.fn(b))
        return self._cache[b]

    def of_partition(self, partition: Iterable[Iterable]) -> Fraction:
        return sum((self(c) for c in partition), Fraction(0))


def incut_function(d: Digraph) -> SetFunction:
    return SetFunction(tuple(range(d.n)), lambda b: incut(d, b))


def pin_entropy(g: WeightedGraph, b: Iterable[int]) -> Fraction:
    """Entropy of a PIN vertex subset: total weight of edges touching it."""
    b = set(b)
    if not b:
        raise ValueError("entropy of the empty set is not used here")
    return sum((w for u, v, w in g.edges if u in b or v in b), Fraction(0))


def entropy_function(g: WeightedGraph) -> SetFunction:
    return SetFunction(tuple(range(g.n)), lambda b: pin_entropy(g, b))


def set_partitions(items: Sequence) -> Iterator[Partition]:
    """All set partitions of ``items`` via restricted-growth strings."""
    items = list(items)
    m = len(items)
    if m == 0:
        yield ()
        return
    rgs = [0] * m

    def emit():
        blocks: list[list] = [[] for _ in range(max(rgs) + 1)]
        for x, k in zip(items, rgs):
            blocks[k].append(x)
        return tuple(frozenset(b) for b in blocks)

    def rec(i, top):
        if i == m:
            yield emit()
            return
        for k in range(top + 2):
            rgs[i] = k
            yield from rec(i + 1, max(top, k))

    rgs[0] = 0
    yield from rec(1, 0)


def refines(p: Iterable[frozenset], q: Iterable[frozenset]) -> bool:
    """``p`` is finer than or equal to ``q``: every block of ``p`` sits inside a block of ``q``."""
    q = list(q)
    return all(any(c <= d for d in q) for c in p)


def meet(partitions: Iterable[Partition]) -> Partition:
    """Coarsest common refinement."""
    partitions = list(partitions)
    result = list(partitions[0])
    for p in partitions[1:]:
        result = [c & d for c in result for d in p if c & d]
    return canonical(result)


def _finest_optimum(scored: list[tuple[Fraction, Partition]]) -> tuple[Fraction, Partition]:
    best = min(v for v, _ in scored)
    optima = [p for v, p in scored if v == best]
    finest = meet(optima)
    if finest not in {canonical(p) for p in optima}:
        raise AssertionError("meet of optimal partitions is not optimal")
    return best, finest


def _check_limit(size: int, limit: int):
    if size > limit:
        raise OracleLimitError(f"ground set of size {size} exceeds enumeration limit {limit}")


def brute_dilworth(f: SetFunction, gamma, limit: int = DEFAULT_LIMIT) -> tuple[Fraction, Partition]:
    """``min over partitions P of sum_{C in P} (f(C) - gamma)`` and its finest optimal partition."""
    _check_limit(len(f.ground), limit)
    gamma = Fraction(gamma)
    scored = [(f.of_partition(p) - len(p) * gamma, p) for p in set_partitions(f.ground)]
    return _finest_optimum(scored)


@dataclass(frozen=True)
class BrutePSP:
    critical_values: tuple[Fraction, ...]
    partitions: tuple[Partition, ...]


def brute_psp(f: SetFunction, limit: int = DEFAULT_LIMIT) -> BrutePSP:
    """Lower envelope of ``gamma -> f[P] - |P| gamma`` over all partitions."""
    _check_limit(len(f.ground), limit)
    m = len(f.ground)
    best: dict[int, Fraction] = {}
    for p in set_partitions(f.ground):
        v = f.of_partition(p)
        k = len(p)
        if k not in best or v < best[k]:
            best[k] = v
    # walk the envelope from gamma = -inf, where one block is cheapest
    k, criticals = 1, []
    while k < m:
        cands = [((best[q] - best[k]) / (q - k), -q) for q in best if q > k]
        gamma, neg_q = min(cands)
        criticals.append(gamma)
        k = -neg_q
    probes = []
    for i in range(len(criticals) + 1):
        if not criticals:
            probes.append(Fraction(0))
        elif i == 0:
            probes.append(criticals[0] - 1)
        elif i == len(criticals):
            probes.append(criticals[-1] + 1)
        else:
            probes.append((criticals[i - 1] + criticals[i]) / 2)
    partitions = tuple(brute_dilworth(f, g, limit)[1] for g in probes)
    return BrutePSP(tuple(criticals), partitions)


def brute_mmi(g: WeightedGraph, limit: int = DEFAULT_LIMIT) -> tuple[Fraction, Partition]:
    """Multivariate mutual information by enumerating partitions into >= 2 blocks."""
    _check_limit(g.n, limit)
    h = entropy_function(g)
    ground = tuple(range(g.n))
    h_v = h(ground)
    scored = [
        ((h.of_partition(p) - h_v) / (len(p) - 1), p)
        for p in set_partitions(ground)
        if len(p) >= 2
    ]
    return _finest_optimum(scored)


def brute_min_cut(
    cap: Mapping[tuple[Hashable, Hashable], Fraction],
    nodes: Iterable[Hashable],
    s: Hashable,
    t: Hashable,
    limit: int = 14,
) -> tuple[Fraction, frozenset]:
    """Minimum ``s``-``t`` cut over all sink sides ``T`` with ``t in T``, ``s not in T``.

    Returns the cut value and the intersection of all optimal sink sides,
    which is itself optimal.
    """
    nodes = set(nodes) | {s, t}
    _check_limit(len(nodes), limit)
    free = sorted(nodes - {s, t}, key=repr)
    scored = []
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            sink = frozenset(extra) | {t}
            value = sum(
                (Fraction(c) for (u, v), c in cap.items() if u not in sink and v in sink),
                Fraction(0),
            )
            scored.append((value, sink))
    best = min(v for v, _ in scored)
    optimal = [sink for v, sink in scored if v == best]
    smallest = frozenset.intersection(*optimal)
    if smallest not in optimal:
        raise AssertionError("intersection of minimum cuts is not a minimum cut")
    return best, smallest


def brute_min_minimizer(objective: Callable[[frozenset], Fraction], candidates: Iterable[frozenset]) -> frozenset:
    """Inclusion-wise minimal minimiser of ``objective`` among ``candidates``."""
    scored = [(objective(b), b) for b in candidates]
    best = min(v for v, _ in scored)
    optimal = [b for v, b in scored if v == best]
    smallest = frozenset.intersection(*optimal)
    if smallest not in optimal:
        raise AssertionError("minimisers are not closed under intersection")
    return smallest


def psp_of_graph(g: WeightedGraph, limit: int = DEFAULT_LIMIT) -> BrutePSP:
    return brute_psp(incut_function(orient(g)), limit)
