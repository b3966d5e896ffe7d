"""Clusters, fundamental partition, MMI and the full hierarchy from a PSP."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG, SolverConfig, SolverStats
from .graph_core import WeightedGraph
from .psp import Partition, PSPResult, canonical, compute_psp

LabelBlock = tuple[int, ...]
LabelPartition = tuple[LabelBlock, ...]


@dataclass(frozen=True)
class ClusterSet:
    """Non-singleton blocks of the finest optimal partition at ``gamma``."""

    gamma: Fraction
    clusters: tuple[frozenset, ...]

    def __iter__(self):
        return iter(self.clusters)

    def __len__(self):
        return len(self.clusters)


def clusters_at(psp: PSPResult, gamma) -> ClusterSet:
    gamma = Fraction(gamma)
    blocks = canonical(c for c in psp.at(gamma) if len(c) > 1)
    return ClusterSet(gamma, blocks)


def fundamental_partition(psp: PSPResult) -> tuple[Fraction, Partition]:
    """First critical value and the partition that takes over there."""
    return psp.critical_values[0], psp.partitions[1]


def mmi(
    g: WeightedGraph,
    config: SolverConfig = DEFAULT_CONFIG,
    stats: SolverStats | None = None,
) -> Fraction:
    """Multivariate mutual information of the PIN given by ``g``."""
    return compute_psp(g, config, stats).critical_values[0]


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _label_partition(p, labels) -> LabelPartition:
    blocks = [tuple(sorted(labels[v] for v in c)) for c in p]
    return tuple(sorted(blocks))


@dataclass(frozen=True)
class Hierarchy:
    """The PSP chain in terms of the original vertex labels.

    ``partitions[l]`` holds on ``[critical_values[l-1], critical_values[l])``;
    the first row starts at minus infinity.
    """

    critical_values: tuple[Fraction, ...]
    partitions: tuple[LabelPartition, ...]

    def __post_init__(self):
        if len(self.partitions) != len(self.critical_values) + 1:
            raise ValueError("need one more partition than critical values")

    @property
    def clusters_by_interval(self) -> tuple[LabelPartition, ...]:
        return tuple(tuple(b for b in p if len(b) > 1) for p in self.partitions)

    def rows(self) -> list[tuple[Fraction | None, LabelPartition, LabelPartition]]:
        """``(start, partition, clusters)`` with ``start=None`` for minus infinity."""
        starts = [None, *self.critical_values]
        return list(zip(starts, self.partitions, self.clusters_by_interval))

    def to_dict(self) -> dict:
        return {
            "critical_values": [format_rational(q) for q in self.critical_values],
            "partitions": [[list(b) for b in p] for p in self.partitions],
            "clusters_by_interval": [[list(b) for b in c] for c in self.clusters_by_interval],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Hierarchy":
        h = cls(
            tuple(Fraction(q) for q in data["critical_values"]),
            tuple(tuple(tuple(int(x) for x in b) for b in p) for p in data["partitions"]),
        )
        given = tuple(
            tuple(tuple(int(x) for x in b) for b in c)
            for c in data.get("clusters_by_interval", h.clusters_by_interval)
        )
        if given != h.clusters_by_interval:
            raise ValueError("clusters_by_interval disagrees with partitions")
        return h

    @classmethod
    def from_json(cls, text: str) -> "Hierarchy":
        return cls.from_dict(json.loads(text))


def hierarchy(psp: PSPResult) -> Hierarchy:
    return Hierarchy(
        tuple(psp.critical_values),
        tuple(_label_partition(p, psp.labels) for p in psp.partitions),
    )
