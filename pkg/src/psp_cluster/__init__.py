"""Info-clustering of weighted graphs via the principal sequence of partitions."""
from .clustering import ClusterSet, Hierarchy, clusters_at, fundamental_partition, hierarchy, mmi
from .config import SolverConfig, SolverStats
from .graph_core import Digraph, GraphError, WeightedGraph, orient, parse_edge_list
from .psp import PSPResult, compute_psp

__all__ = [
    "ClusterSet",
    "Digraph",
    "GraphError",
    "Hierarchy",
    "PSPResult",
    "SolverConfig",
    "SolverStats",
    "WeightedGraph",
    "clusters_at",
    "compute_psp",
    "fundamental_partition",
    "hierarchy",
    "mmi",
    "orient",
    "parse_edge_list",
]
