"""Carvings, exact carving width, conversion of decompositions into carvings
and the width relations between carvings, torsos and tangles."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, InvalidArgument
from .graph import MultiGraph
from .search import min_torso_width_decomposition
from .tangles import max_tangle_order
from .treecut import TreeCutDecomposition, adhesion, validate

CARVING_SEARCH_CEILING = 8


def is_weak_carving(d: TreeCutDecomposition) -> bool:
    """Leaf bags are singletons and all other bags are empty."""
    if not validate(d):
        return False
    if len(d.nodes) == 1:
        return len(d.bags[d.nodes[0]]) == 1
    for t in d.nodes:
        if d.is_leaf(t) != (len(d.bags[t]) == 1) or len(d.bags[t]) > 1:
            return False
    return True


def is_carving(d: TreeCutDecomposition) -> bool:
    """A weak carving whose nodes all have degree one or three."""
    return is_weak_carving(d) and all(len(d.adjacency[t]) in (1, 3) for t in d.nodes)


@dataclass(frozen=True)
class Carving:
    decomposition: TreeCutDecomposition
    width: int


def _leaf_trees(n: int):
    """Edge lists of all cubic trees with leaves ``0..n-1`` (internal nodes
    ``n, n+1, ...``), built by inserting each new leaf into every edge."""
    if n == 2:
        yield [(0, 1)]
        return
    start = [(0, n), (1, n), (2, n)]

    def grow(edges, leaf, next_internal):
        if leaf == n:
            yield edges
            return
        for k, (x, y) in enumerate(edges):
            w = next_internal
            new = edges[:k] + edges[k + 1:] + [(x, w), (w, y), (leaf, w)]
            yield from grow(new, leaf + 1, next_internal + 1)

    yield from grow(start, 3, n + 1)


def _tree_from_edges(g: MultiGraph, edges) -> TreeCutDecomposition:
    nodes = sorted({x for e in edges for x in e})
    bags = {t: ({g.vertices[t]} if t < g.n else set()) for t in nodes}
    return TreeCutDecomposition(g, tuple(nodes), tuple(edges), bags)


def optimal_carving(g: MultiGraph) -> Carving:
    """A carving of least adhesion. Graphs with fewer than two vertices get a
    single node, whose width is 0."""
    n = g.n
    if n > CARVING_SEARCH_CEILING:
        raise CapacityError(f"carving search is limited to {CARVING_SEARCH_CEILING} vertices")
    if n <= 1:
        d = TreeCutDecomposition(g, (0,), (), {0: frozenset(g.vertices)})
        return Carving(d, 0)
    table = g.cut_table
    best = None
    for edges in _leaf_trees(n):
        adj: dict = {}
        for x, y in edges:
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        # leaf mask below each directed edge, rooted at leaf 0
        below = {}
        order = []
        parent = {0: None}
        stack = [0]
        while stack:
            x = stack.pop()
            order.append(x)
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        width = 0
        for x in reversed(order):
            m = (1 << x) if x < n else 0
            for y in adj[x]:
                if parent.get(y) == x:
                    m |= below[y]
            below[x] = m
            if parent[x] is not None:
                width = max(width, table[m])
                if best is not None and width >= best[0]:
                    break
        if best is None or width < best[0]:
            best = (width, edges)
    return Carving(_tree_from_edges(g, best[1]), best[0])


def carving_width(g: MultiGraph) -> int:
    return optimal_carving(g).width


def torso_to_carving(d: TreeCutDecomposition) -> Carving:
    """Turn a decomposition into a carving whose adhesion is at most the
    torso-width of ``d``.

    Each bag vertex moves to a new leaf hung off its node, empty leaves are
    pruned, nodes of degree four or more are split two neighbours at a time,
    and degree-two nodes are suppressed.
    """
    if not validate(d):
        raise InvalidArgument("invalid decomposition")
    g = d.graph
    if g.n <= 1:
        return Carving(TreeCutDecomposition(g, (0,), (), {0: frozenset(g.vertices)}), 0)
    adj: dict = {}
    bags: dict = {}

    def add_node(key, bag=()):
        adj[key] = set()
        bags[key] = frozenset(bag)

    def link(x, y):
        adj[x].add(y)
        adj[y].add(x)

    for t in d.nodes:
        add_node(("t", t))
    for a, b in d.tree_edges:
        link(("t", a), ("t", b))
    for t in d.nodes:
        for v in sorted(d.bags[t], key=g.index.get):
            add_node(("v", v), [v])
            link(("t", t), ("v", v))
    # prune empty leaves
    changed = True
    while changed:
        changed = False
        for x in list(adj):
            if not bags[x] and len(adj[x]) <= 1 and len(adj) > 1:
                for y in adj[x]:
                    adj[y].discard(x)
                del adj[x], bags[x]
                changed = True
    fresh = 0
    for x in list(adj):
        while len(adj[x]) >= 4:
            p, q = sorted(adj[x], key=repr)[:2]
            star = ("s", fresh)
            fresh += 1
            add_node(star)
            for y in (p, q):
                adj[x].discard(y)
                adj[y].discard(x)
                link(star, y)
            link(star, x)
    for x in list(adj):
        if x in adj and len(adj[x]) == 2 and not bags[x]:
            p, q = adj[x]
            adj[p].discard(x)
            adj[q].discard(x)
            link(p, q)
            del adj[x], bags[x]
    nodes = tuple(sorted(adj, key=repr))
    edges = tuple({tuple(sorted((x, y), key=repr)) for x in adj for y in adj[x]})
    out = TreeCutDecomposition(g, nodes, tuple(sorted(edges, key=repr)), bags).relabelled()
    return Carving(out, adhesion(out))


@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    carving_width: int
    torso_width: int
    bound: int

    def __bool__(self):
        return self.passed


def carving_torso_bound_check(g: MultiGraph) -> BoundCheck:
    """On a loopless graph, the least torso-width is at most 3/2 times the
    carving width."""
    if not g.is_loopless():
        raise InvalidArgument("the bound only holds for loopless graphs")
    cw = carving_width(g)
    w, _ = min_torso_width_decomposition(g)
    bound = 3 * cw // 2
    return BoundCheck(w <= bound, cw, w, bound)


@dataclass(frozen=True)
class DualityReport:
    """Exact widths and the three inequalities between them.

    ``torso_vs_carving`` is ``None`` on graphs with loops.
    """

    tctw: int
    cw: int
    mu: int
    carving_below_torso: bool
    torso_vs_carving: bool | None
    tangle_sandwich: bool

    @property
    def passed(self) -> bool:
        return self.carving_below_torso and self.torso_vs_carving is not False \
            and self.tangle_sandwich


def verify_duality(g: MultiGraph) -> DualityReport:
    """cw <= tctw; tctw <= floor(3cw/2) when loopless; mu <= tctw <= 3mu."""
    tctw, _ = min_torso_width_decomposition(g)
    cw = carving_width(g)
    mu = max_tangle_order(g)
    second = tctw <= 3 * cw // 2 if g.is_loopless() else None
    return DualityReport(tctw, cw, mu, cw <= tctw, second, mu <= tctw <= 3 * mu)
