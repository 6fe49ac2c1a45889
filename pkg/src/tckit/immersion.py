"""Immersion search, witness checking and the degree condition."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError
from .graph import MultiGraph

IMMERSION_MAX_PATTERN_EDGES = 10
IMMERSION_MAX_HOST_EDGES = 24


@dataclass(frozen=True)
class ImmersionWitness:
    """``vertex_map`` sends pattern vertices to host vertices injectively;
    ``edge_map`` sends each pattern edge id to a host edge-id sequence that
    walks a path (or, for a loop, a cycle through the image vertex)."""

    vertex_map: dict
    edge_map: dict


def degree_profile(g: MultiGraph, k: int) -> int:
    """Number of vertices of degree at least ``k``."""
    return sum(1 for d in g.degrees().values() if d >= k)


def degree_condition(g: MultiGraph, h: MultiGraph) -> int | None:
    """``None`` if for every k the host has at least as many vertices of
    degree >= k as the pattern, otherwise the smallest failing k."""
    top = max(h.degrees().values(), default=0)
    for k in range(0, top + 1):
        if degree_profile(g, k) < degree_profile(h, k):
            return k
    return None


def _walk_ok(g: MultiGraph, ids, start, end, closed: bool) -> bool:
    """``ids`` traverses a path from start to end (vertex-simple), or a cycle
    through ``start`` when ``closed``."""
    if not ids or len(set(ids)) != len(ids):
        return False
    ends = g.ends
    at = start
    seen = [start]
    for eid in ids:
        if eid not in ends:
            return False
        u, v = ends[eid]
        if at == u:
            at = v
        elif at == v:
            at = u
        else:
            return False
        seen.append(at)
    if closed:
        return at == start and len(set(seen[:-1])) == len(seen) - 1
    return at == end and len(set(seen)) == len(seen)


def verify_witness(g: MultiGraph, h: MultiGraph, w: ImmersionWitness) -> bool:
    vm = w.vertex_map
    if set(vm) != set(h.vertices) or len(set(vm.values())) != len(vm):
        return False
    if any(x not in g.index for x in vm.values()):
        return False
    if set(w.edge_map) != set(h.edge_ids):
        return False
    used = set()
    for eid, u, v in h.edges:
        ids = list(w.edge_map[eid])
        if used & set(ids):
            return False
        used |= set(ids)
        if not _walk_ok(g, ids, vm[u], vm[v], u == v):
            return False
    return True


def is_exceptional(h: MultiGraph) -> bool:
    """Exactly one vertex of degree at least two, and that vertex has a loop."""
    big = [v for v, d in h.degrees().items() if d >= 2]
    return len(big) == 1 and h.loop_count(big[0]) > 0


def make_h_prime(h: MultiGraph) -> MultiGraph:
    """Subdivide the first edge when the pattern is exceptional, else return
    it unchanged. The new vertex is ``('sub', edge id)``; the halves keep the
    edge id and get ``('sub', edge id)``."""
    if not is_exceptional(h) or not h.edges:
        return h
    eid, u, v = h.edges[0]
    w = ("sub", eid)
    edges = [(eid, u, w), (("sub", eid), w, v)] + list(h.edges[1:])
    return MultiGraph(h.vertices + (w,), tuple(edges))


def _adjacency(g: MultiGraph) -> dict:
    adj = {v: [] for v in g.vertices}
    for i, (eid, u, v) in enumerate(g.edges):
        adj[u].append((v, i))
        if u != v:
            adj[v].append((u, i))
    return adj


def _routes(g: MultiGraph, adj, x, y, used: int, closed: bool):
    """Vertex-simple x-y paths (or cycles through x) avoiding ``used``, as
    edge-index bitmasks together with index lists."""
    if closed:
        for w, i in adj[x]:
            if used >> i & 1:
                continue
            if w == x:
                yield 1 << i, [i]
        # longer cycles leave by one edge and come back by a later one
        for w, i in adj[x]:
            if used >> i & 1 or w == x:
                continue
            for mask, path in _paths(adj, w, x, used | 1 << i, {x, w}):
                last = path[-1]
                if last > i:
                    yield mask | 1 << i, [i] + path
        return
    yield from _paths(adj, x, y, used, {x})


def _paths(adj, x, y, used: int, visited: set):
    if x == y:
        yield 0, []
        return
    for w, i in adj[x]:
        if used >> i & 1 or w == x:
            continue
        if w == y:
            yield 1 << i, [i]
            continue
        if w in visited:
            continue
        visited.add(w)
        for mask, path in _paths(adj, w, y, used | 1 << i, visited):
            yield mask | 1 << i, [i] + path
        visited.discard(w)


def find_immersion(g: MultiGraph, h: MultiGraph) -> ImmersionWitness | None:
    """Backtrack over injective vertex maps, then route the pattern edges one
    by one along edge-disjoint paths with full backtracking."""
    if h.m > IMMERSION_MAX_PATTERN_EDGES or g.m > IMMERSION_MAX_HOST_EDGES:
        raise CapacityError("immersion search is limited to "
                            f"{IMMERSION_MAX_PATTERN_EDGES} pattern and "
                            f"{IMMERSION_MAX_HOST_EDGES} host edges")
    if h.n > g.n or h.m > g.m or degree_condition(g, h) is not None:
        return None
    gdeg = g.degrees()
    hdeg = h.degrees()
    adj = _adjacency(g)
    hverts = sorted(h.vertices, key=lambda v: -hdeg[v])
    hedges = sorted(h.edges, key=lambda e: -(hdeg[e[1]] + hdeg[e[2]]))
    gids = g.edge_ids

    def route(k, vm, used, chosen, failed):
        if k == len(hedges):
            return True
        key = (k, used)
        if key in failed:
            return False
        eid, u, v = hedges[k]
        for mask, path in _routes(g, adj, vm[u], vm[v], used, u == v):
            chosen[eid] = path
            if route(k + 1, vm, used | mask, chosen, failed):
                return True
            del chosen[eid]
        failed.add(key)
        return False

    def assign(k, vm, taken):
        if k == len(hverts):
            chosen: dict = {}
            if route(0, vm, 0, chosen, set()):
                return vm, chosen
            return None
        x = hverts[k]
        for y in g.vertices:
            if y in taken or gdeg[y] < hdeg[x]:
                continue
            vm[x] = y
            taken.add(y)
            found = assign(k + 1, vm, taken)
            if found:
                return found
            taken.discard(y)
            del vm[x]
        return None

    found = assign(0, {}, set())
    if found is None:
        return None
    vm, chosen = found
    return ImmersionWitness(dict(vm), {eid: [gids[i] for i in path]
                                       for eid, path in chosen.items()})


def format_immersion(g: MultiGraph, h: MultiGraph, w: ImmersionWitness | None) -> str:
    if w is None:
        return "NO IMMERSION\n"
    lines = ["IMMERSION FOUND"]
    for x in h.vertices:
        lines.append(f"v {x}->{w.vertex_map[x]}")
    for eid in h.edge_ids:
        lines.append(f"e {eid}: " + " ".join(map(str, w.edge_map[eid])))
    return "\n".join(lines) + "\n"

