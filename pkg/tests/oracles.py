"""Brute-force reference implementations used to cross-check the library.

Every function here works straight from the definitions on plain vertex
lists, edge lists and bitmasks, and shares no code with ``tckit`` beyond
reading the fields of ``MultiGraph`` and ``TreeCutDecomposition``.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations, product


# -- graphs --------------------------------------------------------------
def ends(g):
    ix = {v: i for i, v in enumerate(g.vertices)}
    return [(ix[u], ix[v]) for _, u, v in g.edges]


def cut_order(g, a: int) -> int:
    return sum(1 for u, v in ends(g) if (a >> u & 1) != (a >> v & 1))


def touching(g, s: int) -> int:
    """Edges with at least one end in ``s``."""
    return sum(1 for u, v in ends(g) if s >> u & 1 or s >> v & 1)


def components(n: int, pairs) -> list:
    seen = [False] * n
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(sorted(comp))
    return out


def min_cut_between(g, u: int, v: int) -> int:
    """Least cut order over all bipartitions separating vertex indices u, v."""
    return min(cut_order(g, a) for a in range(1 << g.n) if a >> u & 1 and not a >> v & 1)


def bridges(g) -> set:
    """Edge ids whose deletion splits a component."""
    base = len(components(g.n, ends(g)))
    pairs = ends(g)
    out = set()
    for k, (eid, _, _) in enumerate(g.edges):
        rest = pairs[:k] + pairs[k + 1:]
        if len(components(g.n, rest)) > base:
            out.add(eid)
    return out


def automorphisms(g) -> int:
    key = Counter(tuple(sorted(p)) for p in ends(g))
    count = 0
    for perm in permutations(range(g.n)):
        image = Counter(tuple(sorted((perm[u], perm[v]))) for u, v in key.elements())
        count += image == key
    return count


def labelled_count(n: int, m: int, loop_cap: int, parallel_cap: int) -> int:
    """Labelled multigraphs on ``n`` vertices with ``m`` edges under the caps."""
    caps = [loop_cap] * n + [parallel_cap] * (n * (n - 1) // 2)
    ways = [1] + [0] * m
    for cap in caps:
        nxt = [0] * (m + 1)
        for have, w in enumerate(ways):
            for extra in range(min(cap, m - have) + 1):
                nxt[have + extra] += w
        ways = nxt
    return ways[m]


# -- tree-cut decompositions ----------------------------------------------
def tree_parts(nodes, tree_edges, centre: set) -> list:
    """Node sets of the components of the tree minus ``centre``."""
    keep = [t for t in nodes if t not in centre]
    kix = {t: i for i, t in enumerate(keep)}
    pairs = [(kix[x], kix[y]) for x, y in tree_edges if x not in centre and y not in centre]
    return [{keep[i] for i in comp} for comp in components(len(keep), pairs)]


def torso_edge_ids(g, nodes, tree_edges, bags, centre: set) -> list:
    """Edges of G not inside a single component of the tree minus ``centre``."""
    where = {}
    for k, part in enumerate(tree_parts(nodes, tree_edges, centre)):
        for t in part:
            for v in bags[t]:
                where[v] = k
    return [eid for eid, u, v in g.edges if not (u in where and v in where and where[u] == where[v])]


def tree_edge_sides(g, nodes, tree_edges, bags, k: int) -> int:
    """Vertex mask on the first endpoint's side of tree edge ``k``."""
    x, _ = tree_edges[k]
    rest = tree_edges[:k] + tree_edges[k + 1:]
    ix = {t: i for i, t in enumerate(nodes)}
    comps = components(len(nodes), [(ix[a], ix[b]) for a, b in rest])
    side = next(c for c in comps if ix[x] in c)
    vix = {v: i for i, v in enumerate(g.vertices)}
    mask = 0
    for i in side:
        for v in bags[nodes[i]]:
            mask |= 1 << vix[v]
    return mask


def cells(g, d, k: int) -> list:
    """Node sets of k-cells of ``d``."""
    low = [i for i in range(len(d.tree_edges))
           if cut_order(g, tree_edge_sides(g, d.nodes, d.tree_edges, d.bags, i)) < k]
    high = [e for i, e in enumerate(d.tree_edges) if i not in low]
    ix = {t: i for i, t in enumerate(d.nodes)}
    out = []
    for comp in components(len(d.nodes), [(ix[a], ix[b]) for a, b in high]):
        nodes = {d.nodes[i] for i in comp}
        if len(torso_edge_ids(g, d.nodes, d.tree_edges, d.bags, nodes)) >= k:
            out.append(frozenset(nodes))
    return out


def is_smooth(g, d, theta: int) -> bool:
    """No node or θ-cell torso has an order-(<θ) cut with more than its
    order torso edges touching each side."""
    vix = {v: i for i, v in enumerate(g.vertices)}
    endpoints = {eid: (1 << vix[u]) | (1 << vix[v]) for eid, u, v in g.edges}
    centres = [{t} for t in d.nodes] + [set(c) for c in cells(g, d, theta)]
    for centre in centres:
        ids = torso_edge_ids(g, d.nodes, d.tree_edges, d.bags, centre)
        for a in range(1 << g.n):
            order = cut_order(g, a)
            if order >= theta:
                continue
            b = (1 << g.n) - 1 & ~a
            if sum(1 for e in ids if endpoints[e] & a) > order and \
                    sum(1 for e in ids if endpoints[e] & b) > order:
                return False
    return True


def prufer_trees(p: int):
    """All labelled trees on nodes 0..p-1 as edge lists."""
    if p == 1:
        yield []
        return
    if p == 2:
        yield [(0, 1)]
        return
    for seq in product(range(p), repeat=p - 2):
        degree = [1] * p
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(p) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(p) if degree[i] == 1]
        edges.append((u, v))
        yield edges


def torso_width_brute(g, max_nodes: int) -> int:
    """Least largest-torso edge count over all labelled trees with at most
    ``max_nodes`` nodes and all bag assignments."""
    best = None
    verts = list(g.vertices)
    for p in range(1, max_nodes + 1):
        for tree in prufer_trees(p):
            nodes = list(range(p))
            for assign in product(range(p), repeat=len(verts)):
                bags = {t: set() for t in nodes}
                for v, t in zip(verts, assign):
                    bags[t].add(v)
                w = max(len(torso_edge_ids(g, nodes, tree, bags, {t})) for t in nodes)
                if best is None or w < best:
                    best = w
    return best


# -- carvings -------------------------------------------------------------
def carving_width_brute(g) -> int:
    """Least width of a cubic tree whose leaves are the vertices, by a
    recursion over vertex subsets: a subtree hanging below an edge is either
    a leaf or splits in two."""
    n = g.n
    if n <= 1:
        return 0
    if n == 2:
        return cut_order(g, 1)
    memo = {}

    def best(s):
        if s in memo:
            return memo[s]
        cut = cut_order(g, s)
        if s & (s - 1) == 0:
            memo[s] = cut
            return cut
        low = s & -s
        rest = s & ~low
        inner = None
        sub = rest
        while True:
            first = sub | low
            second = s & ~first
            if second:
                w = max(best(first), best(second))
                inner = w if inner is None else min(inner, w)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[s] = max(cut, inner)
        return memo[s]

    full = (1 << n) - 1
    # root at leaf 0: the rest hangs below its single edge
    return best(full & ~1)


# -- tangles --------------------------------------------------------------
def tangles(g, theta: int) -> list:
    """Every set of A-side masks meeting the three tangle axioms."""
    full = (1 << g.n) - 1
    pairs = []
    for a in range(1 << g.n):
        b = full & ~a
        if a < b and cut_order(g, a) < theta:
            pairs.append((a, b))
    out = []
    for choice in product((0, 1), repeat=len(pairs)):
        members = {p[c] for p, c in zip(pairs, choice)}
        bs = [full & ~a for a in members]
        if any(touching(g, b) < theta for b in bs):
            continue
        if all(x & y & z for x in bs for y in bs for z in bs):
            out.append(frozenset(members))
    return out


def max_tangle_order(g) -> int:
    theta = 0
    while tangles(g, theta + 1):
        theta += 1
    return theta


# -- immersions -----------------------------------------------------------
def route_table(g) -> dict:
    """Map (x, y) to the edge-index masks forming an x-y path, and (x, x) to
    the masks forming a cycle through x, by classifying every edge subset."""
    pairs = ends(g)
    table: dict = {}
    for mask in range(1, 1 << g.m):
        chosen = [pairs[i] for i in range(g.m) if mask >> i & 1]
        deg = Counter()
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        touched = sorted(deg)
        local = {v: i for i, v in enumerate(touched)}
        if len(components(len(touched), [(local[u], local[v]) for u, v in chosen])) != 1:
            continue
        odd = [v for v, d in deg.items() if d == 1]
        if all(d == 2 for d in deg.values()):
            for x in touched:
                table.setdefault((x, x), []).append(mask)
        elif len(odd) == 2 and all(d in (1, 2) for d in deg.values()):
            x, y = odd
            table.setdefault((x, y), []).append(mask)
            table.setdefault((y, x), []).append(mask)
    return table


def immerses(g, h, table: dict | None = None) -> bool:
    """Try every injective vertex map and every assignment of pairwise
    disjoint path or cycle edge sets."""
    if h.n > g.n:
        return False
    table = route_table(g) if table is None else table
    hpairs = ends(h)
    for image in permutations(range(g.n), h.n):
        needs = [table.get((image[u], image[v]), []) for u, v in hpairs]

        def place(k, used):
            if k == len(needs):
                return True
            return any(place(k + 1, used | r) for r in needs[k] if not r & used)

        if place(0, 0):
            return True
    return False


# -- helpers for combinatorial sizes ---------------------------------------
def subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def signature(g, d, theta: int) -> tuple:
    """Rows i = θ..1, each listing for j = |E|..1 how many i-cells have a
    torso with at least j edges."""
    rows = []
    for i in range(theta, 0, -1):
        sizes = [len(torso_edge_ids(g, d.nodes, d.tree_edges, d.bags, set(c)))
                 for c in cells(g, d, i)]
        rows.append(tuple(sum(1 for s in sizes if s >= j) for j in range(g.m, 0, -1)))
    return tuple(rows)
