import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from psp_cluster.graph_core import WeightedGraph, parse_edge_list

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

TRIANGLE_TEXT = "1 2 1\n2 3 1\n1 3 5\n"


@pytest.fixture
def triangle() -> WeightedGraph:
    return parse_edge_list(TRIANGLE_TEXT)


def random_connected(rng: random.Random, n: int, m: int | None = None, wmax: int = 10) -> WeightedGraph:
    """Random spanning tree plus extra random edges, integer weights in ``1..wmax``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(1, wmax)
    target = min(m if m is not None else n - 1 + rng.randint(0, n), n * (n - 1) // 2)
    while len(edges) < target:
        u, v = rng.sample(range(n), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.randint(1, wmax))
    return WeightedGraph.from_edges([(u, v, w) for (u, v), w in edges.items()], n)


@st.composite
def graphs(draw, min_n=2, max_n=6, connected=False, rational=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if rational:
        weight = st.builds(Fraction, st.integers(1, 10), st.integers(1, 4))
    else:
        weight = st.integers(1, 10).map(Fraction)
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    if connected:
        # chain the vertices in a drawn order so the graph is connected
        perm = draw(st.permutations(range(n)))
        chosen = sorted(set(chosen) | {tuple(sorted(p)) for p in zip(perm, perm[1:])})
    edges = [(u, v, draw(weight)) for u, v in chosen]
    return WeightedGraph.from_edges(edges, n)


@st.composite
def capacity_maps(draw, max_nodes=6, integer=True):
    """Random digraph capacities over nodes ``0..k-1`` with source 0 and sink k-1."""
    k = draw(st.integers(2, max_nodes))
    value = st.integers(0, 10) if integer else st.builds(Fraction, st.integers(0, 10), st.integers(1, 3))
    cap = {}
    for u in range(k):
        for v in range(k):
            if u != v and draw(st.booleans()):
                cap[(u, v)] = Fraction(draw(value))
    return k, cap


# acceptance criteria report their outcome here; printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
