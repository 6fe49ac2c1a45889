"""Unit-capacity flows, constrained minimum cuts and bridges."""
from __future__ import annotations

from collections import deque
from itertools import product

from .errors import InfeasibleConstraint, InvalidArgument
from .graph import EdgeCut, MultiGraph, cut_from_mask


def _max_flow(g: MultiGraph, sources: set, sinks: set) -> tuple[int, set]:
    """Edge-disjoint path count between two disjoint vertex sets.

    Every non-loop edge is an undirected arc of capacity one. Returns the
    flow value and the set of vertices reachable from the sources in the
    final residual graph, which is the source side of a minimum cut.
    """
    arcs: dict = {}  # vertex -> list of [head, edge index, direction]
    for v in g.vertices:
        arcs[v] = []
    flow = [0] * g.m  # +1 means u->v, -1 means v->u
    for i, (_, u, v) in enumerate(g.edges):
        if u == v:
            continue
        arcs[u].append((v, i, 1))
        arcs[v].append((u, i, -1))

    def residual(i, d):
        # capacity 1 each direction on an undirected edge
        return flow[i] * d < 1

    value = 0
    while True:
        prev = {s: None for s in sources}
        queue = deque(sources)
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for y, i, d in arcs[x]:
                if y in prev or not residual(i, d):
                    continue
                prev[y] = (x, i, d)
                if y in sinks:
                    hit = y
                    break
                queue.append(y)
        if hit is None:
            return value, set(prev)
        y = hit
        while prev[y] is not None:
            x, i, d = prev[y]
            flow[i] += d
            y = x
        value += 1


def edge_disjoint_path_count(g: MultiGraph, u, v) -> int:
    """Maximum number of pairwise edge-disjoint ``u``-``v`` paths."""
    if u == v:
        raise InvalidArgument("endpoints must be distinct")
    return _max_flow(g, {u}, {v})[0]


def min_cut_between_edge_sets(g: MultiGraph, y, z, bound: int) -> EdgeCut | None:
    """A minimum cut ``[A, B]`` with every edge of ``y`` incident with A and
    every edge of ``z`` incident with B, provided its order is below ``bound``.

    Each edge of ``y`` needs one end in A; we branch over which end, solve a
    terminal-set min cut for each choice and keep the best. Ties go to the
    numerically smallest A-side mask.
    """
    ends = g.ends
    y = sorted(set(y), key=repr)
    z = sorted(set(z), key=repr)
    for eid in (*y, *z):
        if eid not in ends:
            raise InvalidArgument(f"unknown edge id {eid!r}")
    y_choices = [sorted(set(ends[e]), key=g.index.get) for e in y]
    z_choices = [sorted(set(ends[e]), key=g.index.get) for e in z]
    best = None
    feasible = False
    seen = set()
    for pick_a in product(*y_choices):
        for pick_b in product(*z_choices):
            sa, sb = frozenset(pick_a), frozenset(pick_b)
            if sa & sb or (sa, sb) in seen:
                continue
            seen.add((sa, sb))
            feasible = True
            if not sa or not sb:
                # one side is unconstrained: put everything on the other
                a_mask = g.full_mask if sa else 0
                value = 0
            else:
                value, reach = _max_flow(g, set(sa), set(sb))
                a_mask = g.mask(reach)
            key = (value, a_mask)
            if best is None or key < best:
                best = key
    if not feasible:
        raise InfeasibleConstraint("the edge sets force a vertex onto both sides")
    if best[0] >= bound:
        return None
    return cut_from_mask(g, best[1])


def bridges_and_2ec_components(g: MultiGraph) -> tuple[frozenset, list]:
    """Bridge edge ids and the vertex sets of the 2-edge-connected components.

    Parallel edges are never bridges and loops are never bridges.
    """
    adj: dict = {v: [] for v in g.vertices}
    for eid, u, v in g.edges:
        if u == v:
            continue
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    disc: dict = {}
    low: dict = {}
    bridges = set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            x, via, it = stack[-1]
            step = next(it, None)
            if step is None:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[x])
                    if low[x] > disc[p]:
                        bridges.add(via)
                continue
            y, eid = step
            if eid == via:
                continue
            if y in disc:
                low[x] = min(low[x], disc[y])
            else:
                disc[y] = low[y] = counter
                counter += 1
                stack.append((y, eid, iter(adj[y])))
    rest = g.delete_edges(bridges)
    return frozenset(bridges), rest.components()
