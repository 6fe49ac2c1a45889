from __future__ import annotations

import oracles
import pytest
from graphs import K4, TRIANGLE, connected_multigraphs, cycle, loops, path
from hypothesis import given, settings

from tckit.census import census
from tckit.errors import CapacityError
from tckit.graph import MultiGraph
from tckit.search import (graph_tree_cut_width, min_torso_width_decomposition,
                          min_tree_cut_width_decomposition, set_partitions, tree_cut_torso_width)
from tckit.treecut import torso_width, tree_cut_width, validate


@pytest.mark.parametrize("count", range(1, 7))
def test_loops_give_torso_width_equal_to_loop_count(count):
    assert tree_cut_torso_width(loops(count)) == count


def test_small_torso_widths():
    assert tree_cut_torso_width(TRIANGLE) == 3
    assert tree_cut_torso_width(path(2)) == 1
    assert tree_cut_torso_width(MultiGraph.from_pairs(2, [])) == 0


def test_complete_graph_on_four_vertices():
    w, d = min_torso_width_decomposition(K4)
    assert w == 5
    assert validate(d) and torso_width(d) == 5
    # six nodes suffice for four vertices after pruning empty leaves and
    # suppressing empty degree-two nodes
    assert oracles.torso_width_brute(K4, 4) == 5


def test_torso_width_matches_brute_force_on_three_vertices():
    for g in census(3, 5, connected=True, loop_cap=2, parallel_cap=2):
        max_nodes = max(1, 2 * g.n - 2)
        assert tree_cut_torso_width(g) == oracles.torso_width_brute(g, max_nodes), g


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_vertices=4, max_edges=6))
def test_witness_attains_the_width(g):
    w, d = min_torso_width_decomposition(g)
    assert validate(d) and torso_width(d) == w
    w2, d2 = min_tree_cut_width_decomposition(g)
    assert validate(d2) and tree_cut_width(d2) == w2 == graph_tree_cut_width(g)


def test_tree_cut_width_examples():
    assert graph_tree_cut_width(TRIANGLE) == 2
    assert graph_tree_cut_width(cycle(4)) == 2
    assert graph_tree_cut_width(K4) == 4


def test_set_partitions_count_bell_numbers():
    assert [sum(1 for _ in set_partitions((1 << n) - 1)) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_search_ceiling():
    with pytest.raises(CapacityError):
        tree_cut_torso_width(path(7))
