"""Brute-force references, checked against hand values before anything relies on them."""
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from psp_cluster.graph_core import WeightedGraph, orient
from psp_cluster.oracle import (
    OracleLimitError,
    brute_dilworth,
    brute_min_cut,
    brute_mmi,
    brute_psp,
    canonical,
    entropy_function,
    incut_function,
    meet,
    pin_entropy,
    refines,
    set_partitions,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("m", range(8))
def test_set_partitions_counts_bell_numbers(m):
    parts = list(set_partitions(range(m)))
    assert len(parts) == BELL[m]
    assert len({canonical(p) for p in parts}) == BELL[m]


def test_pin_entropy_triangle(triangle):
    assert pin_entropy(triangle, {0}) == 6
    assert pin_entropy(triangle, {1}) == 2
    assert pin_entropy(triangle, {0, 1, 2}) == 7
    with pytest.raises(ValueError):
        pin_entropy(triangle, set())


def test_brute_mmi_triangle(triangle):
    value, p = brute_mmi(triangle)
    assert value == 2
    assert p == canonical([{0, 2}, {1}])
    h = entropy_function(triangle)
    singles = canonical([{0}, {1}, {2}])
    assert (h.of_partition(singles) - h({0, 1, 2})) / 2 == Fraction(7, 2)


def test_brute_mmi_disconnected_is_zero():
    g = WeightedGraph.from_edges([(0, 1, 3), (2, 3, 4)], 4)
    value, p = brute_mmi(g)
    assert value == 0
    assert p == canonical([{0, 1}, {2, 3}])


def test_brute_dilworth_triangle(triangle):
    f = incut_function(orient(triangle))
    assert brute_dilworth(f, 3) == (-4, canonical([{0, 2}, {1}]))
    assert brute_dilworth(f, 0) == (0, canonical([{0, 1, 2}]))
    assert brute_dilworth(f, 6) == (-11, canonical([{0}, {1}, {2}]))


def test_brute_psp_triangle_incut_and_entropy(triangle):
    chain = (
        canonical([{0, 1, 2}]),
        canonical([{0, 2}, {1}]),
        canonical([{0}, {1}, {2}]),
    )
    for f in (incut_function(orient(triangle)), entropy_function(triangle)):
        r = brute_psp(f)
        assert r.critical_values == (2, 5)
        assert r.partitions == chain


def test_brute_psp_pair():
    g = WeightedGraph.from_edges([(0, 1, 7)], 2)
    assert brute_psp(incut_function(orient(g))).critical_values == (7,)


def test_brute_min_cut_walkthrough_network():
    # D_3(1) of the triangle walk-through, vertices shifted to 0-based
    cap = {("s", 0): Fraction(1), ("s", 1): Fraction(0), (0, 1): Fraction(1),
           (0, 2): Fraction(5), (1, 2): Fraction(1)}
    assert brute_min_cut(cap, ["s", 0, 1, 2], "s", 2) == (1, frozenset({0, 1, 2}))


def test_brute_min_cut_tie_takes_smallest_sink_side():
    # D_2(1): both {1} and {0, 1} are optimal sink sides
    cap = {("s", 0): Fraction(1), (0, 1): Fraction(1)}
    assert brute_min_cut(cap, ["s", 0, 1], "s", 1) == (1, frozenset({1}))


def test_brute_min_cut_zero_network():
    assert brute_min_cut({("s", "t"): Fraction(0)}, ["s", "t"], "s", "t") == (0, frozenset({"t"}))


def test_limits_are_enforced():
    g = WeightedGraph.from_edges([(i, i + 1, 1) for i in range(11)], 12)
    with pytest.raises(OracleLimitError):
        brute_mmi(g)


def test_meet_and_refines():
    p = canonical([{0, 1}, {2, 3}])
    q = canonical([{0, 1, 2}, {3}])
    m = meet([p, q])
    assert m == canonical([{0, 1}, {2}, {3}])
    assert refines(m, p) and refines(m, q) and not refines(p, q)


@given(graphs(max_n=6))
def test_pin_entropy_submodular_and_monotone(g):
    h = entropy_function(g)
    subsets = [frozenset(c) for r in range(1, g.n + 1) for c in combinations(range(g.n), r)]
    for a in subsets:
        for b in subsets:
            if a <= b:
                assert h(a) <= h(b)
            if a & b:
                assert h(a) + h(b) >= h(a | b) + h(a & b)


@given(graphs(max_n=5), st.integers(-5, 20))
def test_entropy_and_incut_differ_by_constant(g, gamma):
    h, f = entropy_function(g), incut_function(orient(g))
    offset = h(range(g.n))
    for p in set_partitions(range(g.n)):
        assert h.of_partition(p) - len(p) * gamma == f.of_partition(p) - len(p) * gamma + offset


@given(graphs(max_n=6, connected=True))
def test_brute_mmi_is_first_critical_value(g):
    value, p = brute_mmi(g)
    r = brute_psp(incut_function(orient(g)))
    assert value == r.critical_values[0]
    assert p == r.partitions[1]
