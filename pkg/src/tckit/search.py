"""Exact minimisation over tree-cut decompositions of small graphs.

A rooted decomposition is described recursively: a subtree holding the vertex
set S has a root bag X and child subtrees partitioning S - X. Every local
quantity we minimise (torso edge count, 3-center size, niceness) depends only
on the bag and on the vertex sets of the neighbouring components, so a memo
over vertex subsets visits every decomposition shape. Empty-bag leaves and
empty-bag nodes of degree two never help and are skipped.
"""
from __future__ import annotations

from collections.abc import Callable

from .errors import CapacityError
from .graph import MultiGraph
from .treecut import TreeCutDecomposition, three_center, torso_from_parts

DECOMPOSITION_SEARCH_CEILING = 6


def set_partitions(mask: int):
    """All partitions of the bits of ``mask`` into nonempty blocks."""
    if mask == 0:
        yield []
        return
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    while True:
        block = low | sub
        for tail in set_partitions(rest ^ sub):
            yield [block] + tail
        if sub == 0:
            break
        sub = (sub - 1) & rest


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            break
        sub = (sub - 1) & mask


def optimal_decomposition(g: MultiGraph, node_cost: Callable, edge_cost: Callable | None = None
                          ) -> tuple[int, TreeCutDecomposition]:
    """Minimise the maximum of ``node_cost(bag, parts)`` over nodes and
    ``edge_cost(subtree_vertices)`` over tree edges.

    ``parts`` lists the vertex masks of the components around the node. Both
    callbacks take and return plain ints.
    """
    if g.n > DECOMPOSITION_SEARCH_CEILING:
        raise CapacityError(f"exhaustive decomposition search is limited to "
                            f"{DECOMPOSITION_SEARCH_CEILING} vertices")
    full = g.full_mask
    cost_memo: dict = {}

    def cost(bag, parts):
        key = (bag, frozenset(parts))
        if key not in cost_memo:
            cost_memo[key] = node_cost(bag, tuple(parts))
        return cost_memo[key]

    memo: dict = {}

    def solve(s):
        if s in memo:
            return memo[s][0]
        outside = full & ~s
        base = edge_cost(s) if edge_cost and outside else 0
        best = None
        for bag in _submasks(s):
            for parts in set_partitions(s & ~bag):
                if bag == 0 and len(parts) < 2 and s:
                    continue
                around = parts + [outside] if outside else parts
                value = max(base, cost(bag, around))
                if best is not None and value >= best[0]:
                    continue
                for p in parts:
                    value = max(value, solve(p))
                    if best is not None and value >= best[0]:
                        break
                if best is None or value < best[0]:
                    best = (value, bag, parts)
        memo[s] = best
        return best[0]

    value = solve(full)
    nodes, edges, bags = [], [], {}

    def build(s):
        _, bag, parts = memo[s]
        t = len(nodes)
        nodes.append(t)
        bags[t] = g.vertex_set(bag)
        for p in parts:
            c = build(p)
            edges.append((t, c))
        return t

    build(full)
    return value, TreeCutDecomposition(g, tuple(nodes), tuple(edges), bags)


def _torso_count_cost(g: MultiGraph):
    def node_cost(bag, parts):
        return g.m - sum(g.inside_count(p) for p in parts)
    return node_cost


def min_torso_width_decomposition(g: MultiGraph) -> tuple[int, TreeCutDecomposition]:
    return optimal_decomposition(g, _torso_count_cost(g))


def tree_cut_torso_width(g: MultiGraph) -> int:
    """Minimum over decompositions of the largest torso edge count."""
    return min_torso_width_decomposition(g)[0]


def min_tree_cut_width_decomposition(g: MultiGraph) -> tuple[int, TreeCutDecomposition]:
    def node_cost(bag, parts):
        return three_center(torso_from_parts(g, bag, parts)).n
    return optimal_decomposition(g, node_cost, g.cut_order_mask)


def graph_tree_cut_width(g: MultiGraph) -> int:
    """Minimum over decompositions of max(adhesion, largest 3-center)."""
    return min_tree_cut_width_decomposition(g)[0]
