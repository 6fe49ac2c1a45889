"""Tree-cut decompositions, torsos, 3-centers, edge-sums and widths."""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidArgument
from .graph import EdgeCut, MultiGraph, cut_from_mask


@dataclass(frozen=True)
class Peripheral:
    """Torso vertex standing for the component of ``T - anchor`` reached
    through the tree edge ``anchor_node -> via``."""

    anchor_node: Hashable
    via: Hashable

    def __repr__(self):
        return f"P({self.anchor_node!r}->{self.via!r})"


@dataclass(frozen=True, eq=False)
class TreeCutDecomposition:
    """A tree on ``nodes`` with pairwise disjoint bags covering ``graph``.

    Bags may be empty. ``tree_edges`` holds node pairs; their positions in the
    tuple serve as tree-edge indices.
    """

    graph: MultiGraph
    nodes: tuple
    tree_edges: tuple
    bags: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "tree_edges", tuple((a, b) for a, b in self.tree_edges))
        object.__setattr__(self, "bags", {t: frozenset(self.bags.get(t, ())) for t in self.nodes})

    # -- tree structure ---------------------------------------------------
    @cached_property
    def node_index(self) -> dict:
        return {t: i for i, t in enumerate(self.nodes)}

    @cached_property
    def adjacency(self) -> dict:
        adj = {t: [] for t in self.nodes}
        for i, (a, b) in enumerate(self.tree_edges):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return adj

    @cached_property
    def bag_mask(self) -> dict:
        return {t: self.graph.mask(self.bags[t]) for t in self.nodes}

    @cached_property
    def _rooted(self) -> tuple:
        """Parent pointers, DFS order, and for each tree edge the child end."""
        parent = {}
        order = []
        child_of = {}
        for root in self.nodes:
            if root in parent:
                continue
            parent[root] = None
            stack = [root]
            while stack:
                x = stack.pop()
                order.append(x)
                for y, i in self.adjacency[x]:
                    if y in parent:
                        continue
                    parent[y] = x
                    child_of[i] = y
                    stack.append(y)
        return parent, order, child_of

    @cached_property
    def subtree_masks(self) -> tuple:
        """Vertex mask and node-bit mask of the subtree below each node."""
        parent, order, _ = self._rooted
        vmask = dict(self.bag_mask)
        nmask = {t: 1 << self.node_index[t] for t in self.nodes}
        for x in reversed(order):
            p = parent[x]
            if p is not None:
                vmask[p] |= vmask[x]
                nmask[p] |= nmask[x]
        return vmask, nmask

    def edge_index(self, tree_edge) -> int:
        """Accepts a tree-edge index or a node pair."""
        if isinstance(tree_edge, int):
            if not 0 <= tree_edge < len(self.tree_edges):
                raise InvalidArgument(f"no tree edge with index {tree_edge}")
            return tree_edge
        a, b = tree_edge
        for i, (x, y) in enumerate(self.tree_edges):
            if (x, y) == (a, b) or (x, y) == (b, a):
                return i
        raise InvalidArgument(f"{tree_edge!r} is not a tree edge")

    def side_masks(self, i: int, toward) -> tuple:
        """(vertex mask, node mask) of the component of ``T - e_i`` containing ``toward``."""
        _, _, child_of = self._rooted
        c = child_of[i]
        vmask, nmask = self.subtree_masks
        a, b = self.tree_edges[i]
        if toward not in (a, b):
            raise InvalidArgument(f"{toward!r} is not an end of tree edge {i}")
        if toward == c:
            return vmask[c], nmask[c]
        full_nodes = (1 << len(self.nodes)) - 1
        return self.graph.full_mask & ~vmask[c], full_nodes & ~nmask[c]

    def side_containing_nodes(self, i: int, node_bits: int) -> tuple:
        """(vertex mask, node mask) of the side of ``e_i`` meeting ``node_bits``."""
        a, b = self.tree_edges[i]
        vm, nm = self.side_masks(i, a)
        if nm & node_bits:
            return vm, nm
        return self.side_masks(i, b)

    @cached_property
    def adhesion_sizes(self) -> tuple:
        g = self.graph
        return tuple(g.cut_order_mask(self.side_masks(i, a)[0])
                     for i, (a, _) in enumerate(self.tree_edges))

    def node_bits(self, nodes: Iterable) -> int:
        out = 0
        for t in nodes:
            out |= 1 << self.node_index[t]
        return out

    def nodes_of_bits(self, bits: int) -> frozenset:
        return frozenset(t for i, t in enumerate(self.nodes) if bits >> i & 1)

    def is_leaf(self, t) -> bool:
        return len(self.adjacency[t]) == 1

    def bag_union(self, nodes: Iterable) -> frozenset:
        out = frozenset()
        for t in nodes:
            out |= self.bags[t]
        return out

    def relabelled(self) -> TreeCutDecomposition:
        """Same decomposition with nodes renamed ``0..p-1`` in node order."""
        ren = {t: i for i, t in enumerate(self.nodes)}
        return TreeCutDecomposition(self.graph, tuple(range(len(self.nodes))),
                                    tuple((ren[a], ren[b]) for a, b in self.tree_edges),
                                    {ren[t]: self.bags[t] for t in self.nodes})


def single_bag(g: MultiGraph) -> TreeCutDecomposition:
    return TreeCutDecomposition(g, (0,), (), {0: frozenset(g.vertices)})


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple

    def __bool__(self):
        return self.ok


def validate(d: TreeCutDecomposition) -> ValidationReport:
    """Check tree shape, bag disjointness and coverage."""
    problems = []
    p = len(d.nodes)
    if p == 0:
        problems.append("tree has no nodes")
    if len(set(d.nodes)) != p:
        problems.append("duplicate node ids")
    for a, b in d.tree_edges:
        if a not in d.node_index or b not in d.node_index:
            problems.append(f"tree edge {(a, b)!r} uses an unknown node")
        elif a == b:
            problems.append(f"tree edge {(a, b)!r} is a loop")
    if p and len(d.tree_edges) != p - 1:
        problems.append(f"{p} nodes but {len(d.tree_edges)} tree edges")
    if not problems and p:
        parent, _, _ = d._rooted
        if sum(1 for t in d.nodes if parent[t] is None) != 1:
            problems.append("tree is not connected")
    seen: dict = {}
    for t in d.nodes:
        for v in d.bags.get(t, ()):
            if v not in d.graph.index:
                problems.append(f"bag of {t!r} holds unknown vertex {v!r}")
            elif v in seen:
                problems.append(f"vertex {v!r} lies in bags of {seen[v]!r} and {t!r}")
            else:
                seen[v] = t
    missing = [v for v in d.graph.vertices if v not in seen]
    if missing:
        problems.append(f"vertices {missing!r} are in no bag")
    return ValidationReport(not problems, tuple(problems))


def adhesion_set(d: TreeCutDecomposition, tree_edge) -> frozenset:
    i = d.edge_index(tree_edge)
    return d.graph.crossing_ids(d.side_masks(i, d.tree_edges[i][0])[0])


def adhesion(d: TreeCutDecomposition) -> int:
    return max(d.adhesion_sizes, default=0)


def side_of(d: TreeCutDecomposition, tree_edge, t) -> EdgeCut:
    """The cut ``[A, B]`` where B is the bag union of the component of
    ``T - e`` containing ``t``."""
    i = d.edge_index(tree_edge)
    nodes = as_node_set(d, t)
    a, b = d.tree_edges[i]
    if a in nodes and b in nodes:
        raise InvalidArgument(f"tree edge {tree_edge!r} lies inside {t!r}")
    b = d.side_containing_nodes(i, d.node_bits(nodes))[0]
    return cut_from_mask(d.graph, d.graph.full_mask & ~b)


def as_node_set(d: TreeCutDecomposition, t) -> frozenset:
    """Interpret ``t`` as a single node or a connected set of nodes."""
    try:
        if t in d.node_index:
            return frozenset([t])
    except TypeError:
        pass
    nodes = frozenset(t)
    if not nodes or not nodes <= set(d.nodes):
        raise InvalidArgument(f"{t!r} is neither a node nor a set of nodes")
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _ in d.adjacency[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    if seen != nodes:
        raise InvalidArgument("node set does not induce a subtree")
    return nodes


def boundary(d: TreeCutDecomposition, nodes: frozenset) -> list:
    """Tree edges with exactly one end in ``nodes``, as (edge index, inner, outer)."""
    out = []
    for i, (a, b) in enumerate(d.tree_edges):
        if (a in nodes) != (b in nodes):
            out.append((i, a, b) if a in nodes else (i, b, a))
    return out


def component_masks(d: TreeCutDecomposition, nodes: frozenset) -> list:
    """Vertex masks of the components of ``T - nodes``, one per boundary edge."""
    return [d.side_masks(i, outer)[0] for i, _, outer in boundary(d, nodes)]


def torso_edge_mask_pairs(d: TreeCutDecomposition, nodes: frozenset) -> list:
    """Endpoint masks (in the host graph) of the torso edges at ``nodes``."""
    comps = component_masks(d, nodes)
    out = []
    for mu, mv in d.graph.edge_masks:
        both = mu | mv
        if any(both & c == both for c in comps):
            continue
        out.append(both)
    return out


def torso_edge_count(d: TreeCutDecomposition, nodes: frozenset) -> int:
    g = d.graph
    return g.m - sum(g.inside_count(c) for c in component_masks(d, nodes))


@dataclass(frozen=True)
class Torso:
    """The torso graph plus its bookkeeping.

    ``graph`` keeps host edge ids. ``vertex_origin`` maps each peripheral
    vertex to the frozenset of tree nodes it stands for.
    """

    graph: MultiGraph
    peripheral: frozenset
    vertex_origin: Mapping
    anchor: frozenset

    @property
    def edge_origin(self) -> dict:
        return {eid: eid for eid in self.graph.edge_ids}


def torso_at(d: TreeCutDecomposition, t) -> Torso:
    """Identify each component of ``T - t`` into one peripheral vertex and drop
    the loops this creates. ``t`` is a node or a connected node set."""
    nodes = as_node_set(d, t)
    g = d.graph
    image = {}
    periph = []
    origin = {}
    anchor_node = min(nodes, key=d.node_index.get)
    for i, inner, outer in boundary(d, nodes):
        vm, nm = d.side_masks(i, outer)
        p = Peripheral(inner if len(nodes) > 1 else anchor_node, outer)
        periph.append(p)
        origin[p] = d.nodes_of_bits(nm)
        for v in g.vertex_list(vm):
            image[v] = p
    inner_vertices = [v for v in g.vertices if v not in image]
    edges = []
    for eid, u, v in g.edges:
        iu, iv = image.get(u, u), image.get(v, v)
        if iu == iv and isinstance(iu, Peripheral):
            continue
        edges.append((eid, iu, iv))
    tg = MultiGraph(tuple(inner_vertices) + tuple(periph), tuple(edges))
    return Torso(tg, frozenset(periph), origin, nodes)


def torso_from_parts(g: MultiGraph, bag_mask: int, part_masks) -> Torso:
    """Torso for a bag and a partition of the remaining vertices into
    component vertex sets, with peripheral vertices ``Peripheral(None, k)``."""
    image = {}
    periph = []
    for k, pm in enumerate(part_masks):
        p = Peripheral(None, k)
        periph.append(p)
        for v in g.vertex_list(pm):
            image[v] = p
    edges = []
    for eid, u, v in g.edges:
        iu, iv = image.get(u, u), image.get(v, v)
        if iu == iv and isinstance(iu, Peripheral):
            continue
        edges.append((eid, iu, iv))
    tg = MultiGraph(tuple(g.vertex_list(bag_mask)) + tuple(periph), tuple(edges))
    return Torso(tg, frozenset(periph), {p: frozenset() for p in periph}, frozenset())


def three_center(torso: Torso) -> MultiGraph:
    """Repeatedly delete peripheral vertices of degree at most one and suppress
    peripheral vertices of degree two, until none is left of degree below three.

    Suppressing replaces the two edges ``px`` and ``py`` by a fresh edge
    ``xy`` (a loop when ``x == y``). A peripheral vertex whose only edge is a
    loop is deleted.
    """
    verts = list(torso.graph.vertices)
    edges = {eid: (u, v) for eid, u, v in torso.graph.edges}
    periph = set(torso.peripheral)
    fresh = 0
    used = set(edges)

    def new_id():
        nonlocal fresh
        while ("s", fresh) in used:
            fresh += 1
        used.add(("s", fresh))
        return ("s", fresh)

    changed = True
    while changed:
        changed = False
        for p in verts:
            if p not in periph:
                continue
            inc = [(eid, uv) for eid, uv in edges.items() if p in uv]
            deg = sum((uv[0] == p) + (uv[1] == p) for _, uv in inc)
            if deg > 2:
                continue
            if deg == 2 and len(inc) == 2:
                (e1, (a1, b1)), (e2, (a2, b2)) = inc
                x = b1 if a1 == p else a1
                y = b2 if a2 == p else a2
                del edges[e1], edges[e2]
                edges[new_id()] = (x, y)
            else:
                for eid, _ in inc:
                    del edges[eid]
            verts.remove(p)
            periph.discard(p)
            changed = True
            break
    return MultiGraph(tuple(verts), tuple((eid, u, v) for eid, (u, v) in edges.items()))


def torso_width(d: TreeCutDecomposition) -> int:
    """Largest torso edge count over all nodes."""
    return max((torso_edge_count(d, frozenset([t])) for t in d.nodes), default=0)


def tree_cut_width(d: TreeCutDecomposition) -> int:
    """Maximum of the adhesion and the largest 3-center vertex count."""
    centers = max((three_center(torso_at(d, t)).n for t in d.nodes), default=0)
    return max(adhesion(d), centers)


def edge_sum(g1: MultiGraph, v1, g2: MultiGraph, v2, matching: Mapping,
             new_ids: Mapping | None = None) -> MultiGraph:
    """Delete ``v1`` and ``v2`` and join the matched edge ends.

    ``matching`` pairs every non-loop edge at ``v1`` with one non-loop edge at
    ``v2``. The joined edge takes the id from ``new_ids`` if given, otherwise
    the id of the ``g1`` edge. Loops at ``v1`` or ``v2`` disappear.
    """
    at1 = {eid: (u if v == v1 else v) for eid, u, v in g1.edges if v1 in (u, v) and u != v}
    at2 = {eid: (u if v == v2 else v) for eid, u, v in g2.edges if v2 in (u, v) and u != v}
    if set(matching) != set(at1) or sorted(map(repr, matching.values())) != sorted(map(repr, at2)) \
            or len(set(matching.values())) != len(at2):
        raise InvalidArgument("matching must be a bijection between the edges at v1 and v2")
    verts1 = [v for v in g1.vertices if v != v1]
    verts2 = [v for v in g2.vertices if v != v2]
    if set(verts1) & set(verts2):
        raise InvalidArgument("summands share vertices")
    edges = [e for e in g1.edges if v1 not in e[1:]]
    edges += [e for e in g2.edges if v2 not in e[1:]]
    for e1, e2 in matching.items():
        eid = new_ids[e1] if new_ids else e1
        edges.append((eid, at1[e1], at2[e2]))
    return MultiGraph(tuple(verts1 + verts2), tuple(edges))


def reconstruct_from_torsos(d: TreeCutDecomposition) -> MultiGraph:
    """Fold the node torsos back together along the tree by edge-sums.

    For a valid decomposition the result has the host's vertices and the
    host's edges under the same ids.
    """
    parent, order, _ = d._rooted
    root = order[0]
    current = torso_at(d, root).graph
    for x in order[1:]:
        p = parent[x]
        child = torso_at(d, x).graph
        v1 = Peripheral(p, x)
        v2 = Peripheral(x, p)
        ids = [eid for eid, u, v in current.edges if v1 in (u, v) and u != v]
        current = edge_sum(current, v1, child, v2, {e: e for e in ids})
    return current


def same_graph(g1: MultiGraph, g2: MultiGraph) -> bool:
    """Identical vertex sets and identical edges by id (endpoints unordered)."""
    if set(g1.vertices) != set(g2.vertices) or g1.m != g2.m:
        return False
    e1 = {eid: frozenset((u, v)) for eid, u, v in g1.edges}
    e2 = {eid: frozenset((u, v)) for eid, u, v in g2.edges}
    return e1 == e2


def compact(d: TreeCutDecomposition) -> TreeCutDecomposition:
    """Drop empty-bag leaves and suppress empty-bag nodes of degree two.

    Neither operation changes any cell torso or any node torso other than
    removing isolated peripheral vertices, so widths, signatures and
    smoothness are unaffected.
    """
    nodes = list(d.nodes)
    bags = dict(d.bags)
    adj = {t: set() for t in nodes}
    for a, b in d.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed and len(nodes) > 1:
        changed = False
        for t in nodes:
            if bags[t] or len(adj[t]) > 2:
                continue
            if len(adj[t]) == 1:
                (u,) = adj[t]
                adj[u].discard(t)
            elif len(adj[t]) == 2:
                u, w = sorted(adj[t], key=d.node_index.get)
                adj[u].discard(t)
                adj[w].discard(t)
                adj[u].add(w)
                adj[w].add(u)
            else:
                continue
            nodes.remove(t)
            del adj[t], bags[t]
            changed = True
            break
    edges = []
    for t in nodes:
        for u in adj[t]:
            if d.node_index[t] < d.node_index[u]:
                edges.append((t, u))
    return TreeCutDecomposition(d.graph, tuple(nodes), tuple(edges), bags).relabelled()


def contract_nodes(d: TreeCutDecomposition, groups) -> TreeCutDecomposition:
    """Contract each connected node set in ``groups`` into its first node."""
    rep = {t: t for t in d.nodes}
    for group in groups:
        nodes = as_node_set(d, group)
        head = min(nodes, key=d.node_index.get)
        for t in nodes:
            rep[t] = head
    new_nodes = tuple(t for t in d.nodes if rep[t] == t)
    bags = {t: frozenset() for t in new_nodes}
    for t in d.nodes:
        bags[rep[t]] = bags[rep[t]] | d.bags[t]
    edges = tuple((rep[a], rep[b]) for a, b in d.tree_edges if rep[a] != rep[b])
    return TreeCutDecomposition(d.graph, new_nodes, edges, bags)
