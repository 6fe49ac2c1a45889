from __future__ import annotations

import random
from itertools import combinations

import oracles
import pytest
from graphs import BRIDGED_TRIANGLES, K4, TRIANGLE, connected_multigraphs, multigraphs
from hypothesis import given, settings
from hypothesis import strategies as st

from tckit.errors import InfeasibleConstraint, InvalidArgument
from tckit.flow import min_cut_between_edge_sets
from tckit.graph import MultiGraph
from tckit.sampling import random_decomposition
from tckit.smoothing import (Signature, cells, contract_theta_cells, is_theta_smooth,
                             pseudo_cells, signature, smooth_refine, smooth_refine_steps)
from tckit.treecut import TreeCutDecomposition, single_bag, validate

TWO_TRIANGLES = MultiGraph.from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])


def two_bags(g, first, second):
    rest = set(g.vertices) - set(first)
    assert rest == set(second)
    return TreeCutDecomposition(g, (0, 1), ((0, 1),), {0: set(first), 1: set(second)})


def test_triangle_cell_is_not_fat():
    (c,) = cells(single_bag(TRIANGLE), 2)
    assert c.torso_edges == 3 and c.is_cell and not c.fat


def test_k4_cell_is_fat():
    (c,) = cells(single_bag(K4), 2)
    assert c.torso_edges == 6 and c.fat


def test_edgeless_graph_has_no_cells():
    d = single_bag(MultiGraph.from_pairs(3, []))
    assert all(cells(d, k) == [] for k in range(1, 4))
    assert len(pseudo_cells(d, 1)) == 1


def test_cells_reject_nonpositive_order():
    with pytest.raises(InvalidArgument):
        cells(single_bag(TRIANGLE), 0)


@given(multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10 ** 6), st.integers(1, 4))
def test_cells_match_definition(g, seed, k):
    d = random_decomposition(g, random.Random(seed))
    assert {c.nodes for c in cells(d, k)} == set(oracles.cells(g, d, k))


def test_signature_of_single_bag_triangle():
    sig = signature(single_bag(TRIANGLE), 1)
    assert sig.rows == ((1, 1, 1),)
    assert [sig.count(1, j) for j in (1, 2, 3)] == [1, 1, 1]


def test_signature_of_two_separate_triangles():
    sig = signature(two_bags(TWO_TRIANGLES, {0, 1, 2}, {3, 4, 5}), 1)
    assert [sig.count(1, j) for j in range(1, 7)] == [2, 2, 2, 0, 0, 0]


def test_signature_with_no_cells_is_zero_and_empty_graph_is_empty():
    sig = signature(single_bag(TRIANGLE), 4)
    assert sig.rows[0] == (0, 0, 0)
    assert signature(single_bag(MultiGraph.from_pairs(2, [])), 2).flat == ()


def test_signature_order_is_lexicographic():
    a = Signature(1, 3, ((1, 0, 0),))
    b = Signature(1, 3, ((0, 5, 5),))
    assert b < a and a != b and sorted([a, b]) == [b, a]


@given(multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10 ** 6), st.integers(1, 4))
def test_signature_matches_direct_count(g, seed, theta):
    d = random_decomposition(g, random.Random(seed))
    sig = signature(d, theta)
    assert sig.rows == oracles.signature(g, d, theta)
    for row in sig.rows:
        assert list(row) == sorted(row)


def test_connected_graph_is_one_smooth():
    for d in (single_bag(K4), two_bags(K4, {0}, {1, 2, 3})):
        assert is_theta_smooth(d, 1) is None


def test_bridge_inside_one_bag_violates_two_smoothness():
    v = is_theta_smooth(single_bag(BRIDGED_TRIANGLES), 2)
    assert v is not None
    assert v.cut.order == 1
    assert v.cut.crossing == {6}


def test_bridge_between_bags_is_two_smooth():
    d = two_bags(BRIDGED_TRIANGLES, {0, 1, 2}, {3, 4, 5})
    assert is_theta_smooth(d, 2) is None


def _smooth_by_edge_sets(g, d, theta):
    """Direct check: no torso sets Y, Z with |Y| = |Z| <= θ are separated
    by a cut of order below |Y|."""
    centres = [{t} for t in d.nodes] + [set(c) for c in oracles.cells(g, d, theta)]
    for centre in centres:
        ids = oracles.torso_edge_ids(g, d.nodes, d.tree_edges, d.bags, centre)
        for k in range(1, min(theta, len(ids)) + 1):
            for y in combinations(ids, k):
                for z in combinations(ids, k):
                    try:
                        if min_cut_between_edge_sets(g, y, z, k) is not None:
                            return False
                    except InfeasibleConstraint:
                        pass
    return True


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=6), st.integers(0, 10 ** 6), st.integers(1, 3))
def test_smoothness_agrees_with_edge_set_definition(g, seed, theta):
    d = random_decomposition(g, random.Random(seed))
    direct = _smooth_by_edge_sets(g, d, theta)
    assert (is_theta_smooth(d, theta) is None) == direct == oracles.is_smooth(g, d, theta)


def test_refining_smooth_input_takes_no_steps():
    d = two_bags(BRIDGED_TRIANGLES, {0, 1, 2}, {3, 4, 5})
    assert list(smooth_refine_steps(d, 2)) == []
    assert smooth_refine(d, 2).bags == d.bags


def test_refining_bridged_triangles_separates_them():
    out = smooth_refine(single_bag(BRIDGED_TRIANGLES), 2)
    assert validate(out) and is_theta_smooth(out, 2) is None
    home = {v: t for t in out.nodes for v in out.bags[t]}
    assert home[0] == home[1] == home[2]
    assert home[3] == home[4] == home[5]
    assert home[0] != home[3]


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10 ** 6),
       st.integers(1, 4))
def test_refinement_lowers_signature_and_ends_smooth(g, seed, theta):
    d = random_decomposition(g, random.Random(seed))
    prev = signature(d, theta)
    out = d
    for step in smooth_refine_steps(d, theta):
        assert step.signature < prev
        assert step.signature == signature(step.decomposition, theta)
        prev, out = step.signature, step.decomposition
    assert validate(out)
    assert oracles.is_smooth(g, out, theta)


def test_refinement_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        list(smooth_refine_steps(single_bag(TRIANGLE), 0))
    broken = TreeCutDecomposition(TRIANGLE, (0,), (), {0: {0, 1}})
    with pytest.raises(InvalidArgument):
        list(smooth_refine_steps(broken, 1))


def test_contracting_without_cells_changes_nothing():
    d = two_bags(TRIANGLE, {0}, {1, 2})
    out = contract_theta_cells(d, 4)
    assert len(out.nodes) == 2


def test_contracting_a_two_node_cell():
    g = MultiGraph.from_pairs(2, [(0, 1)] * 3)
    out = contract_theta_cells(two_bags(g, {0}, {1}), 2)
    assert len(out.nodes) == 1
    assert list(out.bags.values()) == [frozenset({0, 1})]


@given(multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10 ** 6), st.integers(1, 4))
def test_contracted_cells_are_single_nodes(g, seed, theta):
    out = contract_theta_cells(random_decomposition(g, random.Random(seed)), theta)
    assert validate(out)
    assert all(len(c.nodes) == 1 for c in cells(out, theta))
