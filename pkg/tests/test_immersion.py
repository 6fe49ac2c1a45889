from __future__ import annotations

import oracles
import pytest
from graphs import K4, TRIANGLE, complete, connected_multigraphs, loops, multigraphs, path, star
from hypothesis import given, settings
from hypothesis import strategies as st

from tckit.errors import CapacityError
from tckit.graph import MultiGraph
from tckit.immersion import (ImmersionWitness, degree_condition, degree_profile, find_immersion,
                             format_immersion, is_exceptional, make_h_prime, verify_witness)

EDGE = path(2)


def test_edge_immerses_in_any_graph_with_an_edge():
    w = find_immersion(TRIANGLE, EDGE)
    assert w is not None and verify_witness(TRIANGLE, EDGE, w)


def test_triangle_immerses_in_k4():
    w = find_immersion(K4, TRIANGLE)
    assert w is not None and verify_witness(K4, TRIANGLE, w)


def test_k4_does_not_immerse_in_a_star():
    assert degree_condition(star(9), K4) is not None
    assert find_immersion(star(9), K4) is None


def test_loop_needs_a_cycle():
    assert find_immersion(path(4), loops(1)) is None
    w = find_immersion(TRIANGLE, loops(1))
    assert w is not None and len(w.edge_map[0]) == 3


def test_witness_with_shared_edge_is_rejected():
    g = path(3)
    h = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    w = ImmersionWitness({0: 0, 1: 1}, {0: [0], 1: [0]})
    assert not verify_witness(g, h, w)


def test_witness_mapping_a_loop_to_a_path_is_rejected():
    w = ImmersionWitness({0: 0}, {0: [0, 1]})
    assert not verify_witness(path(3), loops(1), w)


def test_witness_must_be_injective_and_complete():
    assert not verify_witness(TRIANGLE, EDGE, ImmersionWitness({0: 0, 1: 0}, {0: [0]}))
    assert not verify_witness(TRIANGLE, EDGE, ImmersionWitness({0: 0, 1: 1}, {}))
    assert not verify_witness(TRIANGLE, EDGE, ImmersionWitness({0: 0, 1: 1}, {0: [1]}))


def test_degree_condition_examples():
    assert degree_condition(K4, K4) is None
    # one host vertex of degree >= 3 against four; already short at k = 2
    assert degree_profile(star(9), 3) == 1 < degree_profile(K4, 3) == 4
    assert degree_condition(star(9), K4) == 2


def test_exceptional_patterns():
    assert is_exceptional(loops(1))
    prime = make_h_prime(loops(1))
    assert not is_exceptional(prime)
    assert prime.n == 2 and prime.m == 2 and prime.multiplicity(0, ("sub", 0)) == 2
    assert not is_exceptional(TRIANGLE)
    assert make_h_prime(TRIANGLE) is TRIANGLE
    assert is_exceptional(MultiGraph.from_pairs(2, [(0, 0), (0, 1)]))


def test_format_immersion():
    assert format_immersion(star(9), K4, None) == "NO IMMERSION\n"
    text = format_immersion(K4, EDGE, find_immersion(K4, EDGE))
    assert text == "IMMERSION FOUND\nv 0->0\nv 1->1\ne 0: 0\n"


def test_pattern_ceiling():
    with pytest.raises(CapacityError):
        find_immersion(complete(6), path(12))


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5))
def test_every_graph_immerses_itself(g):
    w = find_immersion(g, g)
    assert w is not None and verify_witness(g, g, w)


@settings(max_examples=80, deadline=None)
@given(connected_multigraphs(max_vertices=4, max_edges=6),
       multigraphs(max_vertices=3, max_edges=3))
def test_search_agrees_with_brute_force(g, h):
    w = find_immersion(g, h)
    assert (w is not None) == oracles.immerses(g, h)
    if w is not None:
        assert verify_witness(g, h, w)
        assert degree_condition(g, h) is None


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_vertices=4, max_edges=5),
       multigraphs(max_vertices=3, max_edges=3), st.data())
def test_adding_edges_keeps_immersions(g, h, data):
    if find_immersion(g, h) is None:
        return
    extra = data.draw(st.lists(st.tuples(st.integers(0, g.n - 1), st.integers(0, g.n - 1)),
                               max_size=2))
    bigger = MultiGraph.from_pairs(g.n, [e[1:] for e in g.edges] + extra)
    assert find_immersion(bigger, h) is not None


def _capped(g, parallel, loop):
    kept, seen = [], {}
    for _, u, v in g.edges:
        key = frozenset((u, v))
        seen[key] = seen.get(key, 0) + 1
        if seen[key] <= (loop if u == v else parallel):
            kept.append((u, v))
    return MultiGraph.from_pairs(g.n, kept)


def test_capping_at_pattern_size_loses_a_loop_image():
    # a loop maps to a 2-cycle, which needs two parallel edges
    g = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    h = loops(1)
    assert find_immersion(g, h) is not None
    assert find_immersion(_capped(g, h.m, h.m), h) is None


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=3, max_edges=7), multigraphs(max_vertices=2, max_edges=2))
def test_capping_parallel_edges_keeps_immersions(g, h):
    if find_immersion(g, h) is None:
        return
    # paths use one edge per pair, cycles for loops of h may use two
    h_loops = sum(1 for _, u, v in h.edges if u == v)
    assert find_immersion(_capped(g, h.m + h_loops, h.m), h) is not None
