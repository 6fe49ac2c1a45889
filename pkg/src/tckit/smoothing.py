"""Cells of a decomposition, lexicographic signatures and the refinement
that removes badly split torsos."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import InvalidArgument
from .graph import EdgeCut, cut_from_mask, cut_masks_below
from .treecut import (TreeCutDecomposition, compact, contract_nodes, torso_edge_count,
                      torso_edge_mask_pairs, validate)


@dataclass(frozen=True)
class Cell:
    """A pseudo-k-cell: a component of T after deleting tree edges whose
    adhesion is below k."""

    nodes: frozenset
    k: int
    torso_edges: int

    @property
    def is_cell(self) -> bool:
        """At least k torso edges."""
        return self.torso_edges >= self.k

    @property
    def fat(self) -> bool:
        return self.is_cell and self.torso_edges >= 3 * self.k - 2


def pseudo_cells(d: TreeCutDecomposition, k: int) -> list:
    """All pseudo-k-cells, ordered by their first node."""
    parent = {t: t for t in d.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b) in enumerate(d.tree_edges):
        if d.adhesion_sizes[i] >= k:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for t in d.nodes:
        groups.setdefault(find(t), []).append(t)
    out = []
    for members in groups.values():
        nodes = frozenset(members)
        out.append(Cell(nodes, k, torso_edge_count(d, nodes)))
    return out


def cells(d: TreeCutDecomposition, k: int) -> list:
    """The k-cells: pseudo-k-cells whose torso has at least k edges."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    return [c for c in pseudo_cells(d, k) if c.is_cell]


@total_ordering
@dataclass(frozen=True)
class Signature:
    """Counts ``a[i][j]`` of i-cells with at least j torso edges.

    ``rows`` lists i from theta down to 1; each row lists j from |E| down
    to 1. Comparison is lexicographic on the flattened rows.
    """

    theta: int
    m: int
    rows: tuple

    def count(self, i: int, j: int) -> int:
        return self.rows[self.theta - i][self.m - j]

    @property
    def flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def __lt__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.flat < other.flat

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.flat == other.flat

    def __hash__(self):
        return hash(self.flat)


def signature(d: TreeCutDecomposition, theta: int) -> Signature:
    m = d.graph.m
    rows = []
    for i in range(theta, 0, -1):
        sizes = [c.torso_edges for c in cells(d, i)]
        rows.append(tuple(sum(1 for s in sizes if s >= j) for j in range(m, 0, -1)))
    return Signature(theta, m, tuple(rows))


@dataclass(frozen=True)
class SmoothnessViolation:
    """Torso edges of ``nodes`` are split by ``cut`` into two sides that each
    touch more than ``cut.order`` of them."""

    nodes: frozenset
    is_theta_cell: bool
    cut: EdgeCut
    a_mask: int


def _targets(d: TreeCutDecomposition, theta: int) -> list:
    """θ-cells first, then every node, as (node set, is θ-cell)."""
    out = [(c.nodes, True) for c in cells(d, theta)]
    singles = {c[0] for c in out if len(c[0]) == 1}
    out += [(frozenset([t]), False) for t in d.nodes if frozenset([t]) not in singles]
    return out


def violations(d: TreeCutDecomposition, theta: int):
    """Yield every (node set, is θ-cell, A-mask) that breaks θ-smoothness."""
    g = d.graph
    masks = cut_masks_below(g, theta)
    table = g.cut_table
    full = g.full_mask
    for nodes, is_cell in _targets(d, theta):
        torso = torso_edge_mask_pairs(d, nodes)
        if len(torso) < 2:
            continue
        for a in masks:
            need = table[a] + 1
            b = full & ~a
            if sum(1 for e in torso if e & a) >= need and sum(1 for e in torso if e & b) >= need:
                yield nodes, is_cell, a


def is_theta_smooth(d: TreeCutDecomposition, theta: int) -> SmoothnessViolation | None:
    """``None`` when smooth, otherwise the first violation found."""
    for nodes, is_cell, a in violations(d, theta):
        return SmoothnessViolation(nodes, is_cell, cut_from_mask(d.graph, a), a)
    return None


def _aligned_count(d: TreeCutDecomposition, nodes: frozenset, a: int) -> int:
    """Tree edges with at most one end in ``nodes`` whose far side from
    ``nodes`` lies inside A or inside B."""
    bits = d.node_bits(nodes)
    full = d.graph.full_mask
    b = full & ~a
    count = 0
    for i, (x, y) in enumerate(d.tree_edges):
        if x in nodes and y in nodes:
            continue
        near, _ = d.side_containing_nodes(i, bits)
        far = full & ~near
        if far & ~a == 0 or far & ~b == 0:
            count += 1
    return count


def _largest_cell_level(d: TreeCutDecomposition, nodes: frozenset, theta: int) -> int:
    anchor = next(iter(nodes))
    for k in range(theta, 0, -1):
        for c in cells(d, k):
            if anchor in c.nodes and nodes <= c.nodes:
                return k
    return 0


def split_along(d: TreeCutDecomposition, nodes: frozenset, contract: bool, a: int
                ) -> TreeCutDecomposition:
    """Two copies of T (with ``nodes`` contracted when ``contract``) joined at
    the copies of the anchor; copy one keeps bag ∩ A, copy two bag ∩ B."""
    g = d.graph
    base = contract_nodes(d, [nodes]) if contract and len(nodes) > 1 else d
    anchor = min(nodes, key=d.node_index.get)
    a_set = g.vertex_set(a)
    new_nodes, bags, edges = [], {}, []
    for side, keep in ((0, a_set), (1, frozenset(g.vertices) - a_set)):
        for t in base.nodes:
            new_nodes.append((t, side))
            bags[(t, side)] = base.bags[t] & keep
        edges += [((x, side), (y, side)) for x, y in base.tree_edges]
    edges.append(((anchor, 0), (anchor, 1)))
    return TreeCutDecomposition(g, tuple(new_nodes), tuple(edges), bags)


@dataclass(frozen=True)
class RefinementStep:
    decomposition: TreeCutDecomposition
    signature: Signature
    anchor: frozenset
    cut: EdgeCut


def smooth_refine_steps(d: TreeCutDecomposition, theta: int, max_iterations: int = 10000):
    """Yield one :class:`RefinementStep` per split until the decomposition is
    θ-smooth. Each split picks the violation whose cut agrees with the most
    tree edges around its anchor (θ-cells first, then canonical order); the
    signature must strictly drop at every step, else ``RuntimeError``.
    """
    if theta < 1:
        raise InvalidArgument("theta must be positive")
    report = validate(d)
    if not report:
        raise InvalidArgument("invalid decomposition: " + "; ".join(report.problems))
    current = compact(d)
    sig = signature(current, theta)
    for _ in range(max_iterations):
        best = None
        for nodes, is_cell, a in violations(current, theta):
            score = _aligned_count(current, nodes, a)
            if best is None or score > best[0]:
                best = (score, nodes, is_cell, a)
        if best is None:
            return
        _, nodes, is_cell, a = best
        if _largest_cell_level(current, nodes, theta) < current.graph.cut_table[a] + 1:
            raise RuntimeError("violating anchor lies in no cell of the expected level")
        nxt = compact(split_along(current, nodes, is_cell, a))
        new_sig = signature(nxt, theta)
        if not new_sig < sig:
            raise RuntimeError("signature did not decrease")
        yield RefinementStep(nxt, new_sig, nodes, cut_from_mask(current.graph, a))
        current, sig = nxt, new_sig
    raise RuntimeError("iteration limit reached")


def smooth_refine(d: TreeCutDecomposition, theta: int) -> TreeCutDecomposition:
    """A θ-smooth decomposition whose signature is at most that of ``d``."""
    out = compact(d)
    for step in smooth_refine_steps(d, theta):
        out = step.decomposition
    return out


def contract_theta_cells(d: TreeCutDecomposition, theta: int) -> TreeCutDecomposition:
    """Contract every θ-cell with more than one node into a single node."""
    groups = [c.nodes for c in cells(d, theta) if len(c.nodes) > 1]
    return contract_nodes(d, groups)
