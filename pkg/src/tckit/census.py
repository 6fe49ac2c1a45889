"""Isomorphism-free enumeration of small multigraphs."""
from __future__ import annotations

from itertools import permutations, product

from .errors import CapacityError, InvalidArgument
from .graph import MultiGraph

CENSUS_MAX_VERTICES = 6
CENSUS_MAX_EDGES = 10


def _invariant(n: int, edges: tuple) -> list:
    deg = [0] * n
    loops = [0] * n
    mult: dict = {}
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
        if i == j:
            loops[i] += 1
        else:
            mult[i, j] = mult.get((i, j), 0) + 1
    nbr = [[] for _ in range(n)]
    for (i, j), c in mult.items():
        nbr[i].append((c, deg[j], loops[j]))
        nbr[j].append((c, deg[i], loops[i]))
    return [(deg[v], loops[v], tuple(sorted(nbr[v]))) for v in range(n)]


def canonical_edges(n: int, edges) -> tuple:
    """Minimum sorted relabelled edge list over all invariant-respecting
    vertex permutations. Two graphs are isomorphic iff these agree."""
    edges = tuple((min(i, j), max(i, j)) for i, j in edges)
    inv = _invariant(n, edges)
    order = sorted(range(n), key=lambda v: inv[v])
    classes = []
    for v in order:
        if classes and inv[classes[-1][0]] == inv[v]:
            classes[-1].append(v)
        else:
            classes.append([v])
    best = None
    for choice in product(*(permutations(c) for c in classes)):
        pos = [0] * n
        k = 0
        for block in choice:
            for v in block:
                pos[v] = k
                k += 1
        cand = tuple(sorted((min(pos[i], pos[j]), max(pos[i], pos[j])) for i, j in edges))
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(g: MultiGraph) -> str:
    """A compact isomorphism-invariant string such as ``3|0-1,0-2,1-2``."""
    ix = g.index
    key = canonical_edges(g.n, [(ix[u], ix[v]) for _, u, v in g.edges])
    return f"{g.n}|" + ",".join(f"{i}-{j}" for i, j in key)


def graph_from_canonical(text: str) -> MultiGraph:
    head, _, body = text.partition("|")
    pairs = [tuple(int(x) for x in tok.split("-")) for tok in body.split(",") if tok]
    return MultiGraph.from_pairs(int(head), pairs)


def census(max_vertices: int, max_edges: int, *, min_vertices: int = 1,
           connected: bool = False, loop_cap: int | None = None,
           parallel_cap: int | None = None, no_isolated: bool = False) -> list:
    """One representative per isomorphism class of multigraphs with
    ``min_vertices..max_vertices`` vertices and at most ``max_edges`` edges.

    ``loop_cap`` bounds the loops at each vertex (0 means loopless) and
    ``parallel_cap`` bounds the edges between any pair of distinct vertices.
    Representatives have vertices ``0..n-1`` and are ordered by vertex count,
    edge count, then canonical edge list.
    """
    if max_vertices > CENSUS_MAX_VERTICES or max_edges > CENSUS_MAX_EDGES:
        raise CapacityError(f"census is limited to {CENSUS_MAX_VERTICES} vertices and "
                            f"{CENSUS_MAX_EDGES} edges")
    if min_vertices < 0 or max_edges < 0:
        raise InvalidArgument("bounds must be non-negative")
    loop_cap = max_edges if loop_cap is None else loop_cap
    parallel_cap = max_edges if parallel_cap is None else parallel_cap
    out = []
    for n in range(min_vertices, max_vertices + 1):
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        level = {()}
        found = [()]
        for _ in range(max_edges):
            nxt = set()
            for key in level:
                counts: dict = {}
                for e in key:
                    counts[e] = counts.get(e, 0) + 1
                for s in slots:
                    cap = loop_cap if s[0] == s[1] else parallel_cap
                    if counts.get(s, 0) >= cap:
                        continue
                    nxt.add(canonical_edges(n, key + (s,)))
            level = nxt
            found.extend(sorted(level))
        for key in found:
            g = MultiGraph.from_pairs(n, key)
            if connected and not g.is_connected():
                continue
            if no_isolated and any(d == 0 for d in g.degrees().values()):
                continue
            out.append(g)
    return out


def automorphism_count(g: MultiGraph) -> int:
    """Number of vertex permutations preserving the edge multiset."""
    ix = g.index
    edges = sorted((min(ix[u], ix[v]), max(ix[u], ix[v])) for _, u, v in g.edges)
    count = 0
    for p in permutations(range(g.n)):
        if sorted((min(p[i], p[j]), max(p[i], p[j])) for i, j in edges) == edges:
            count += 1
    return count


def blocks_are_d_connected(g: MultiGraph, d: int) -> bool:
    """Every maximal 2-edge-connected subgraph is d-edge-connected. A single
    vertex counts as d-edge-connected."""
    from .flow import bridges_and_2ec_components, edge_disjoint_path_count
    _, comps = bridges_and_2ec_components(g)
    for comp in comps:
        if len(comp) < 2:
            continue
        sub = g.induced(comp)
        first, *rest = sub.vertices
        if any(edge_disjoint_path_count(sub, first, v) < d for v in rest):
            return False
    return True


def immersion_free_counts(h: MultiGraph, d: int, max_vertices: int, max_edges: int, *,
                          loop_cap: int | None = None, parallel_cap: int | None = None) -> dict:
    """Per edge count m in 1..max_edges, the number of unlabelled graphs with no
    isolated vertex that do not immerse ``h`` and whose maximal
    2-edge-connected subgraphs are d-edge-connected."""
    from .immersion import find_immersion
    counts = dict.fromkeys(range(1, max_edges + 1), 0)
    for g in census(max_vertices, max_edges, loop_cap=loop_cap, parallel_cap=parallel_cap,
                    no_isolated=True):
        if g.m == 0:
            continue
        if blocks_are_d_connected(g, d) and find_immersion(g, h) is None:
            counts[g.m] += 1
    return counts
