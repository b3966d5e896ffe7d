from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from psp_cluster.graph_core import (
    GraphError,
    WeightedGraph,
    cut_value,
    incut,
    orient,
    parse_edge_list,
    to_rational,
)


def test_orient_triangle(triangle):
    d = orient(triangle)
    assert d.c(0, 1) == 1 and d.c(1, 2) == 1 and d.c(0, 2) == 5
    assert d.c(1, 0) == 0
    assert incut(d, {0}) == 0
    assert incut(d, {2}) == 6
    assert incut(d, {1, 2}) == 6
    assert incut(d, {0, 1, 2}) == 0


def test_cut_value(triangle):
    d = orient(triangle)
    assert cut_value(d, {0}, {1, 2}) == 6
    assert cut_value(d, {1, 2}, {0}) == 0


def test_duplicate_edges_merge():
    g = WeightedGraph.from_edges([(0, 1, 2), (1, 0, 3)], 2)
    assert g.edges == ((0, 1, Fraction(5)),)


@pytest.mark.parametrize("edges", [[(0, 0, 1)], [(0, 1, 0)], [(0, 1, -2)], [(0, 5, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphError):
        WeightedGraph.from_edges(edges, 3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_parse_labels_and_weights():
    g = parse_edge_list("# comment\n10 30 1/2\n30 20 1.5  # trailing\n\n")
    assert g.labels == (10, 20, 30)
    assert g.n == 3
    assert g.weight(0, 2) == Fraction(1, 2)
    assert g.weight(1, 2) == Fraction(3, 2)


@pytest.mark.parametrize("text", ["", "# nothing\n", "1 2\n", "1 1 3\n", "1 2 0\n", "a b 1\n", "1 2 x\n", "0 1 1\n"])
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_parse_error_mentions_line():
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_list("1 2 1\n2 3\n")


def test_connectivity():
    assert parse_edge_list("1 2 1\n2 3 1\n").is_connected()
    assert not parse_edge_list("1 2 1\n3 4 1\n").is_connected()


@given(graphs(max_n=6), st.randoms())
def test_incut_of_whole_set_is_zero_and_singletons_sum_to_total(g, rnd):
    d = orient(g)
    assert incut(d, range(g.n)) == 0
    assert sum(incut(d, {v}) for v in range(g.n)) == g.total_weight
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert g.relabel(perm).total_weight == g.total_weight
