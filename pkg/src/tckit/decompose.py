"""Surgery on graphs and decompositions, certificate checkers, niceness and
balanced splits."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlignmentError, InvalidArgument
from .graph import MultiGraph, cut_from_mask, cut_mask, is_k_simple  # noqa: F401  (re-exported)
from .immersion import make_h_prime
from .io import Certificate
from .search import optimal_decomposition
from .treecut import (TreeCutDecomposition, Torso, adhesion, as_node_set, boundary,
                      compact, contract_nodes, torso_at, torso_from_parts, tree_cut_width,
                      validate)


@dataclass(frozen=True)
class SplitResult:
    first: MultiGraph
    second: MultiGraph
    new_edges: tuple


def split_two_cut(g: MultiGraph, cut) -> SplitResult:
    """For a cut ``[A1, A2]`` of order two with crossing edges ``u1u2`` and
    ``v1v2`` (``u_i, v_i`` in ``A_i``), return ``G[A_i]`` plus a new edge
    ``u_i v_i`` for both sides. The new edge is a loop when ``u_i == v_i``."""
    a = cut_mask(g, cut)
    ec = cut_from_mask(g, a)
    if ec.order != 2:
        raise InvalidArgument(f"cut has order {ec.order}, expected 2")
    ends = [g.ends[e] for e in sorted(ec.crossing, key=repr)]
    side_a = ec.side_a
    inside = [(u, v) if u in side_a else (v, u) for u, v in ends]
    fresh = g.fresh_edge_id(g.m)
    first = g.induced(ec.side_a)
    second = g.induced(ec.side_b)
    first = MultiGraph(first.vertices, first.edges + ((fresh, inside[0][0], inside[1][0]),))
    second = MultiGraph(second.vertices, second.edges + ((fresh, inside[0][1], inside[1][1]),))
    return SplitResult(first, second, (fresh, fresh))


def _realign(d: TreeCutDecomposition, nodes: frozenset, a: int) -> int:
    """Move each subtree hanging off ``nodes`` wholly to one side of the cut
    when that keeps the crossing edges the same."""
    g = d.graph
    crossing = g.crossing_ids(a)
    for i, _, outer in boundary(d, nodes):
        far = d.side_masks(i, outer)[0]
        if far & ~a == 0 or far & a == 0:
            continue
        inside_a = bin(far & a).count("1")
        order = [a | far, a & ~far] if 2 * inside_a >= bin(far).count("1") else [a & ~far, a | far]
        for cand in order:
            if g.crossing_ids(cand) == crossing:
                a = cand
                break
        else:
            raise AlignmentError(f"subtree across tree edge {d.tree_edges[i]!r} straddles the cut",
                                 d.tree_edges[i])
    return a


def refine_along_cut(d: TreeCutDecomposition, anchor, cut, *, prune: bool = False
                     ) -> TreeCutDecomposition:
    """Split the anchor (a node, or a connected node set that is contracted
    first) along ``cut``: two copies of the tree joined at the anchor's
    copies, copy one keeping ``bag ∩ A`` and copy two ``bag ∩ B``.

    Subtrees off the anchor must end up wholly on one side; a straddling
    subtree is moved across when the crossing edges stay the same, otherwise
    :class:`AlignmentError` names the offending tree edge.
    """
    if not validate(d):
        raise InvalidArgument("invalid decomposition")
    nodes = as_node_set(d, anchor)
    a = _realign(d, nodes, cut_mask(d.graph, cut))
    base = contract_nodes(d, [nodes]) if len(nodes) > 1 else d
    head = min(nodes, key=d.node_index.get)
    g = d.graph
    a_set = g.vertex_set(a)
    b_set = frozenset(g.vertices) - a_set
    new_nodes, bags, edges = [], {}, []
    for side, keep in ((0, a_set), (1, b_set)):
        for t in base.nodes:
            new_nodes.append((t, side))
            bags[(t, side)] = base.bags[t] & keep
        edges += [((x, side), (y, side)) for x, y in base.tree_edges]
    edges.append(((head, 0), (head, 1)))
    out = TreeCutDecomposition(g, tuple(new_nodes), tuple(edges), bags)
    return compact(out) if prune else out.relabelled()


def attach_leaf_split(d: TreeCutDecomposition, t, s) -> TreeCutDecomposition:
    """Move every vertex of ``s`` (a subset of the bag of ``t``) into its own
    new leaf attached to ``t``."""
    s = frozenset(s)
    if t not in d.node_index:
        raise InvalidArgument(f"unknown node {t!r}")
    if not s <= d.bags[t]:
        raise InvalidArgument("vertex set is not inside the bag")
    g = d.graph
    nodes = list(d.nodes)
    bags = dict(d.bags)
    edges = list(d.tree_edges)
    bags[t] = d.bags[t] - s
    for v in sorted(s, key=g.index.get):
        leaf = ("leaf", v)
        nodes.append(leaf)
        bags[leaf] = frozenset([v])
        edges.append((t, leaf))
    return TreeCutDecomposition(g, tuple(nodes), tuple(edges), bags).relabelled()


@dataclass
class CheckReport:
    passed: bool = True
    failures: list = field(default_factory=list)

    def fail(self, message: str):
        self.passed = False
        self.failures.append(message)

    def __bool__(self):
        return self.passed


def _degrees_without(torso: Torso, z) -> dict:
    kept = torso.graph.delete_edges([e for e in torso.graph.edge_ids if e in z])
    return kept.degrees()


def check_global_conclusion(g: MultiGraph, h: MultiGraph, cert: Certificate) -> CheckReport:
    """Per node: fewer vertices of degree >= k_t in ``torso - Z_t`` than in
    the pattern (subdivided once if exceptional), plus the size bounds.

    When U-sets are supplied the structural statements are checked too:
    high-degree vertices are bag vertices, inner nodes (or a lone node) have
    every bag vertex at degree >= k_t, leaves of a larger tree hold at most
    one vertex, and each U-set lies in its bag with fewer vertices than the
    pattern.
    """
    report = CheckReport()
    d = cert.decomposition
    v = validate(d)
    if not v:
        report.fail("invalid decomposition: " + "; ".join(v.problems))
        return report
    hp = make_h_prime(h)
    hdeg = hp.degrees()
    if cert.eta is not None and adhesion(d) > cert.eta:
        report.fail(f"adhesion {adhesion(d)} exceeds eta={cert.eta}")
    structural = bool(cert.usets)
    for t in d.nodes:
        z = cert.zsets.get(t, frozenset())
        if cert.xi is not None and len(z) > cert.xi:
            report.fail(f"node {t}: |Z_t|={len(z)} exceeds xi={cert.xi}")
        if t not in cert.thresholds:
            report.fail(f"node {t}: missing threshold k_t")
            continue
        k = cert.thresholds[t]
        torso = torso_at(d, t)
        deg = _degrees_without(torso, z)
        high = [x for x, dx in deg.items() if dx >= k]
        pattern = sum(1 for dx in hdeg.values() if dx >= k)
        if len(high) >= pattern:
            report.fail(f"node {t}: {len(high)} vertices of degree >= {k}, pattern has {pattern}")
        if not structural:
            continue
        if any(x in torso.peripheral for x in high):
            report.fail(f"node {t}: a peripheral vertex reaches degree {k}")
        if len(d.nodes) == 1 or not d.is_leaf(t):
            if any(deg[x] < k for x in d.bags[t]):
                report.fail(f"node {t}: a bag vertex has degree below {k}")
        elif len(d.bags[t]) > 1:
            report.fail(f"node {t}: leaf bag has {len(d.bags[t])} vertices")
        u = cert.usets.get(t, frozenset())
        if not u <= d.bags[t]:
            report.fail(f"node {t}: U_t is not inside the bag")
        if len(u) > hp.n - 1:
            report.fail(f"node {t}: |U_t|={len(u)} exceeds {hp.n - 1}")
    return report


def check_mw_conclusion(g: MultiGraph, d: TreeCutDecomposition, xi: int) -> CheckReport:
    """With S the tree edges of adhesion at most two: T - S has maximum degree
    at most xi, every bag has at most xi vertices, the adhesion is at most xi
    and the tree-cut width is at most 2 xi."""
    report = CheckReport()
    v = validate(d)
    if not v:
        report.fail("invalid decomposition: " + "; ".join(v.problems))
        return report
    deg = dict.fromkeys(d.nodes, 0)
    for i, (a, b) in enumerate(d.tree_edges):
        if d.adhesion_sizes[i] > 2:
            deg[a] += 1
            deg[b] += 1
    worst = max(deg.values(), default=0)
    if worst > xi:
        report.fail(f"T - S has a node of degree {worst} > {xi}")
    for t in d.nodes:
        if len(d.bags[t]) > xi:
            report.fail(f"bag of node {t} has {len(d.bags[t])} > {xi} vertices")
    if adhesion(d) > xi:
        report.fail(f"adhesion {adhesion(d)} > {xi}")
    tcw = tree_cut_width(d)
    if tcw > 2 * xi:
        report.fail(f"tree-cut width {tcw} > {2 * xi}")
    return report


def torso_core_size(torso: Torso, bag) -> int:
    """Vertices left after removing as many leaves hanging off bag vertices as
    possible."""
    tg = torso.graph
    deg = tg.degrees()
    nbr = {}
    for _, u, v in tg.edges:
        if u != v:
            nbr.setdefault(u, []).append(v)
            nbr.setdefault(v, []).append(u)
    leaves = {x for x in tg.vertices if deg[x] == 1 and nbr[x][0] in bag}
    # two adjacent bag vertices of degree one: only one of them can go
    paired = {frozenset((x, nbr[x][0])) for x in leaves if nbr[x][0] in leaves}
    return tg.n - len(leaves) + len(paired)


def torso_is_xi_nice(torso: Torso, bag, xi: int) -> bool:
    return torso_core_size(torso, bag) <= xi


def decomposition_is_xi_nice(d: TreeCutDecomposition, xi: int) -> bool:
    """Adhesion at most xi and every torso is a graph on at most xi vertices
    with leaves attached to bag vertices."""
    if adhesion(d) > xi:
        return False
    return all(torso_is_xi_nice(torso_at(d, t), d.bags[t], xi) for t in d.nodes)


def xi_nice_decomposition(g: MultiGraph, xi: int) -> TreeCutDecomposition | None:
    """A ξ-nice decomposition if one exists (exhaustive search)."""
    def node_cost(bag, parts):
        torso = torso_from_parts(g, bag, parts)
        return 0 if torso_is_xi_nice(torso, g.vertex_set(bag), xi) else 1

    def edge_cost(s):
        return 0 if g.cut_order_mask(s) <= xi else 1

    value, d = optimal_decomposition(g, node_cost, edge_cost)
    return d if value == 0 else None


def is_xi_nice(g: MultiGraph, xi: int) -> bool:
    return xi_nice_decomposition(g, xi) is not None


@dataclass(frozen=True)
class BalancedSplit:
    """Either a tree edge with both sides touching at least |E|/3 edges
    (``kind == 'edge'``), a node whose bag spans at least |E|/9 edges
    (``kind == 'bag'``), or a node whose neighbouring branches split into two
    groups each touching at least 2|E|/9 edges (``kind == 'partition'``)."""

    kind: str
    tree_edge: tuple | None = None
    node: object = None
    first: frozenset = frozenset()
    second: frozenset = frozenset()


def balanced_split(d: TreeCutDecomposition) -> BalancedSplit:
    """Direct every tree edge toward a side touching at least |E|/3 edges and
    read off the balanced structure at the sink."""
    if not validate(d):
        raise InvalidArgument("invalid decomposition")
    g = d.graph
    m = g.m
    heavy = {}
    for i, (a, b) in enumerate(d.tree_edges):
        side_a = d.side_masks(i, a)[0]
        side_b = g.full_mask & ~side_a
        ha = 3 * g.incident_count(side_a) >= m
        hb = 3 * g.incident_count(side_b) >= m
        if ha and hb:
            return BalancedSplit("edge", tree_edge=(a, b))
        heavy[i] = a if ha else b
    sink = None
    for t in d.nodes:
        if all(heavy[i] == t for _, i in d.adjacency[t]):
            sink = t
            break
    if sink is None:
        raise RuntimeError("orientation has no sink")
    bag = d.bag_mask[sink]
    if 9 * g.inside_count(bag) >= m:
        return BalancedSplit("bag", node=sink)
    branches = sorted(d.adjacency[sink], key=lambda yi: d.node_index[yi[0]])
    acc = 0
    for k, (y, i) in enumerate(branches):
        acc |= d.side_masks(i, y)[0]
        if 3 * g.incident_count(acc) >= m:
            first = frozenset(y for y, _ in branches[:k + 1])
            second = frozenset(y for y, _ in branches[k + 1:])
            return BalancedSplit("partition", node=sink, first=first, second=second)
    raise RuntimeError("no prefix of branches reaches a third of the edges")


def branch_vertices(d: TreeCutDecomposition, node, neighbours) -> frozenset:
    """Vertices in the branches of ``T - node`` through the given neighbours."""
    out = 0
    for y, i in d.adjacency[node]:
        if y in neighbours:
            out |= d.side_masks(i, y)[0]
    return d.graph.vertex_set(out)
