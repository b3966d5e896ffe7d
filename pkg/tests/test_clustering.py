from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from psp_cluster.clustering import (
    Hierarchy,
    clusters_at,
    format_rational,
    fundamental_partition,
    hierarchy,
    mmi,
)
from psp_cluster.graph_core import WeightedGraph, orient, parse_edge_list
from psp_cluster.oracle import brute_dilworth, brute_mmi, brute_psp, incut_function
from psp_cluster.psp import canonical, compute_psp

S = frozenset


def test_triangle_clusters(triangle):
    r = compute_psp(triangle)
    assert clusters_at(r, 3).clusters == (S({0, 2}),)
    assert clusters_at(r, 1).clusters == (S({0, 1, 2}),)
    assert clusters_at(r, 5).clusters == ()
    # left-closed: exactly at a critical value the finer partition applies
    assert clusters_at(r, 2).clusters == (S({0, 2}),)


def test_triangle_fundamental_and_mmi(triangle):
    r = compute_psp(triangle)
    assert fundamental_partition(r) == (2, canonical([{0, 2}, {1}]))
    assert mmi(triangle) == 2


def test_pair():
    g = WeightedGraph.from_edges([(0, 1, 5)], 2)
    r = compute_psp(g)
    assert fundamental_partition(r) == (5, canonical([{0}, {1}]))
    assert mmi(g) == 5
    assert hierarchy(r).rows() == [(None, ((1, 2),), ((1, 2),)), (5, ((1,), (2,)), ())]


def test_disconnected_fundamental_partition():
    g = WeightedGraph.from_edges([(0, 1, 4), (2, 3, 9)], 4)
    r = compute_psp(g)
    assert fundamental_partition(r) == (0, canonical([{0, 1}, {2, 3}]))
    assert brute_mmi(g) == (0, canonical([{0, 1}, {2, 3}]))


def test_triangle_hierarchy(triangle):
    h = hierarchy(compute_psp(triangle))
    assert h.critical_values == (2, 5)
    assert h.clusters_by_interval == (((1, 2, 3),), ((1, 3),), ())
    assert Hierarchy.from_json(h.to_json()) == h


def test_hierarchy_uses_input_labels():
    h = hierarchy(compute_psp(parse_edge_list("10 20 1\n20 30 1\n10 30 5\n")))
    assert h.partitions[1] == ((10, 30), (20,))


def test_star_hierarchy_matches_oracle():
    g = WeightedGraph.from_edges([(0, 1, 1), (0, 2, 1), (0, 3, 1)], 4)
    h = hierarchy(compute_psp(g))
    b = brute_psp(incut_function(orient(g)))
    assert h.critical_values == b.critical_values
    assert h.partitions == tuple(tuple(tuple(v + 1 for v in sorted(c)) for c in p) for p in b.partitions)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-7, 2)) == "-7/2"


@given(graphs(max_n=6), st.builds(Fraction, st.integers(-10, 60), st.integers(1, 3)))
def test_clusters_are_non_singleton_blocks_of_finest_optimum(g, gamma):
    r = compute_psp(g)
    _, finest = brute_dilworth(incut_function(orient(g)), gamma)
    assert clusters_at(r, gamma).clusters == canonical(c for c in finest if len(c) > 1)


@given(graphs(max_n=7), st.lists(st.integers(-5, 40), min_size=2, max_size=2))
def test_clusters_nest_as_threshold_grows(g, pair):
    lo, hi = sorted(pair)
    r = compute_psp(g)
    coarse = clusters_at(r, lo).clusters
    for c in clusters_at(r, hi):
        assert any(c <= d for d in coarse)


@given(graphs(max_n=6, connected=True))
def test_mmi_and_fundamental_match_oracle(g):
    value, finest = brute_mmi(g)
    r = compute_psp(g)
    assert mmi(g) == value
    assert fundamental_partition(r) == (value, finest)


@given(graphs(max_n=7))
def test_mmi_positive_iff_connected(g):
    assert (mmi(g) > 0) == g.is_connected()


@given(graphs(max_n=7, rational=True))
def test_json_round_trip(g):
    h = hierarchy(compute_psp(g))
    assert Hierarchy.from_json(h.to_json()) == h
