from __future__ import annotations

import random

import oracles
import pytest
from graphs import BRIDGED_TRIANGLES, K4, TRIANGLE, complete, connected_multigraphs, cycle, path, star
from hypothesis import given, settings
from hypothesis import strategies as st

from tckit.decompose import (attach_leaf_split, balanced_split, check_global_conclusion,
                             check_mw_conclusion, decomposition_is_xi_nice, is_k_simple,
                             is_xi_nice, refine_along_cut, split_two_cut, xi_nice_decomposition)
from tckit.errors import AlignmentError, InvalidArgument
from tckit.graph import MultiGraph, cut_from_mask
from tckit.io import Certificate
from tckit.sampling import random_decomposition
from tckit.treecut import (TreeCutDecomposition, adhesion_set, compact, same_graph, single_bag,
                           torso_at, validate)


def test_split_cycle_into_two_digons():
    c4 = cycle(4)
    r = split_two_cut(c4, cut_from_mask(c4, 0b0011))
    for side, pair in ((r.first, {0, 1}), (r.second, {2, 3})):
        assert set(side.vertices) == pair
        assert side.m == 2 and side.multiplicity(*sorted(pair)) == 2


def test_split_with_shared_end_makes_a_loop():
    # vertex 0 carries both crossing edges
    g = MultiGraph.from_pairs(3, [(0, 1), (0, 2), (1, 2)])
    r = split_two_cut(g, cut_from_mask(g, 0b001))
    assert r.first.vertices == (0,) and r.first.loop_count(0) == 1
    assert r.second.multiplicity(1, 2) == 2


def test_split_two_triangles_joined_twice():
    g = MultiGraph.from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)])
    r = split_two_cut(g, cut_from_mask(g, 0b000111))
    assert r.first.m == r.second.m == 4
    assert r.first.multiplicity(0, 1) == 2 and r.second.multiplicity(3, 4) == 2
    assert r.new_edges[0] not in g.edge_ids


def test_split_needs_order_two():
    with pytest.raises(InvalidArgument):
        split_two_cut(path(3), cut_from_mask(path(3), 0b001))
    with pytest.raises(InvalidArgument):
        split_two_cut(K4, cut_from_mask(K4, 0b0001))


def _no_cut_of_order(g, orders):
    return all(oracles.cut_order(g, a) not in orders for a in range(1, (1 << g.n) - 1))


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs(max_vertices=5, max_edges=8))
def test_split_conserves_edges_and_connectivity(g):
    clean = _no_cut_of_order(g, {1, 3})
    for a in range(1, (1 << g.n) - 1):
        if oracles.cut_order(g, a) != 2:
            continue
        r = split_two_cut(g, cut_from_mask(g, a))
        assert r.first.m + r.second.m == g.m
        if clean:
            assert _no_cut_of_order(r.first, {1, 3}) and _no_cut_of_order(r.second, {1, 3})


def test_refine_along_trivial_cut_changes_nothing_after_pruning():
    d = single_bag(TRIANGLE)
    out = refine_along_cut(d, 0, cut_from_mask(TRIANGLE, 0), prune=True)
    assert len(out.nodes) == 1 and same_graph(torso_at(out, out.nodes[0]).graph, TRIANGLE)


def test_refine_separates_bridged_triangles():
    g = BRIDGED_TRIANGLES
    out = refine_along_cut(single_bag(g), 0, cut_from_mask(g, 0b000111))
    assert validate(out)
    home = {v: t for t in out.nodes for v in out.bags[t]}
    assert home[0] == home[1] == home[2] != home[3] == home[4] == home[5]


def test_refine_reports_straddling_subtrees():
    g = path(4)
    d = TreeCutDecomposition(g, (0, 1), ((0, 1),), {0: {0}, 1: {1, 2, 3}})
    with pytest.raises(AlignmentError) as info:
        refine_along_cut(d, 0, cut_from_mask(g, 0b0101))
    assert info.value.tree_edge == (0, 1)


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10 ** 6), st.data())
def test_refined_bags_refine_old_bags(g, seed, data):
    d = compact(random_decomposition(g, random.Random(seed)))
    t = data.draw(st.sampled_from(d.nodes))
    a = data.draw(st.integers(0, g.full_mask))
    try:
        out = refine_along_cut(d, t, cut_from_mask(g, a))
    except AlignmentError:
        return
    assert validate(out)
    old = list(d.bags.values())
    assert all(any(bag <= b for b in old) for bag in out.bags.values())


def test_attach_nothing_is_identity():
    d = single_bag(TRIANGLE)
    assert attach_leaf_split(d, 0, set()).bags == d.bags


def test_attach_star_leaves():
    g = star(3)
    out = attach_leaf_split(single_bag(g), 0, {1, 2, 3})
    assert validate(out) and len(out.nodes) == 4
    assert sorted(len(adhesion_set(out, e)) for e in out.tree_edges) == [1, 1, 1]


def test_attach_rejects_foreign_vertices():
    d = TreeCutDecomposition(path(2), (0, 1), ((0, 1),), {0: {0}, 1: {1}})
    with pytest.raises(InvalidArgument):
        attach_leaf_split(d, 0, {1})


def test_global_conclusion_after_deleting_every_edge():
    g = path(3)
    cert = Certificate(single_bag(g), zsets={0: frozenset(g.edge_ids)}, thresholds={0: 1})
    assert check_global_conclusion(g, TRIANGLE, cert)


def test_global_conclusion_on_a_graph_smaller_than_the_pattern():
    g = path(2)
    cert = Certificate(single_bag(g), thresholds={0: 0})
    assert check_global_conclusion(g, TRIANGLE, cert)


def test_global_conclusion_flags_oversized_deletion_sets():
    g = path(3)
    cert = Certificate(single_bag(g), zsets={0: frozenset(g.edge_ids)}, thresholds={0: 1}, xi=1)
    report = check_global_conclusion(g, TRIANGLE, cert)
    assert not report
    assert any(f.startswith("node 0:") for f in report.failures)


def test_global_conclusion_flags_missing_thresholds():
    g = path(2)
    report = check_global_conclusion(g, TRIANGLE, Certificate(single_bag(g)))
    assert not report and "missing threshold" in report.failures[0]


def test_global_conclusion_structural_statements():
    g = path(2)
    cert = Certificate(single_bag(g), thresholds={0: 1}, usets={0: frozenset({0, 1})})
    assert check_global_conclusion(g, TRIANGLE, cert)
    cert = Certificate(single_bag(g), thresholds={0: 2}, usets={0: frozenset()})
    report = check_global_conclusion(g, TRIANGLE, cert)
    assert not report and "below 2" in report.failures[0]


def test_mw_conclusion_on_a_path():
    p3 = path(3)
    d = TreeCutDecomposition(p3, (0, 1, 2), ((0, 1), (1, 2)), {0: {0}, 1: {1}, 2: {2}})
    assert check_mw_conclusion(p3, d, 2)


def test_mw_conclusion_bag_and_adhesion_bounds():
    k5 = complete(5)
    report = check_mw_conclusion(k5, single_bag(k5), 4)
    assert not report and any("bag" in f for f in report.failures)
    c4 = cycle(4)
    d = TreeCutDecomposition(c4, (0, 1), ((0, 1),), {0: {0, 1}, 1: {2, 3}})
    report = check_mw_conclusion(c4, d, 1)
    assert any("adhesion 2" in f for f in report.failures)


def test_simplicity():
    assert is_k_simple(K4, 1)
    assert not is_k_simple(MultiGraph.from_pairs(2, [(0, 1), (0, 1)]), 1)
    assert not is_k_simple(MultiGraph.from_pairs(1, [(0, 0), (0, 0)]), 1)


def test_niceness_examples():
    assert decomposition_is_xi_nice(single_bag(TRIANGLE), 3)
    assert is_xi_nice(TRIANGLE, 3)
    assert not is_xi_nice(complete(5), 3)
    d = xi_nice_decomposition(K4, 4)
    assert d is not None and decomposition_is_xi_nice(d, 4)


def test_balanced_split_on_two_blocks():
    g = BRIDGED_TRIANGLES
    d = TreeCutDecomposition(g, (0, 1), ((0, 1),), {0: {0, 1, 2}, 1: {3, 4, 5}})
    assert balanced_split(d).kind == "edge"


def test_balanced_split_on_a_star_of_small_branches():
    g = MultiGraph.from_pairs(12, [(2 * i, 2 * i + 1) for i in range(6)])
    nodes = tuple(range(7))
    d = TreeCutDecomposition(g, nodes, tuple((6, i) for i in range(6)),
                             {**{i: {2 * i, 2 * i + 1} for i in range(6)}, 6: set()})
    s = balanced_split(d)
    assert s.kind == "partition" and s.node == 6
    assert s.first == {0, 1} and s.second == {2, 3, 4, 5}


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs(max_vertices=5, max_edges=8), st.integers(0, 10 ** 6))
def test_balanced_split_thresholds(g, seed):
    d = compact(random_decomposition(g, random.Random(seed)))
    s = balanced_split(d)
    m = g.m
    vix = {v: i for i, v in enumerate(g.vertices)}

    def mask(vs):
        return sum(1 << vix[v] for v in vs)

    if s.kind == "edge":
        i = d.edge_index(s.tree_edge)
        a = d.side_masks(i, s.tree_edge[0])[0]
        assert 3 * oracles.touching(g, a) >= m
        assert 3 * oracles.touching(g, g.full_mask & ~a) >= m
    elif s.kind == "bag":
        bag = mask(d.bags[s.node])
        inside = sum(1 for u, v in oracles.ends(g) if bag >> u & 1 and bag >> v & 1)
        assert 9 * inside >= m
    else:
        assert s.first | s.second == {y for y, _ in d.adjacency[s.node]}
        for part in (s.first, s.second):
            verts = set()
            for y, i in d.adjacency[s.node]:
                if y in part:
                    verts |= g.vertex_set(d.side_masks(i, y)[0])
            assert 9 * oracles.touching(g, mask(verts)) >= 2 * m
