"""Explicit edge-tangles, their enumeration, the tangle of a fat cell, cell
location, minimum separators and cross-free families of cuts.

A tangle stores its members as A-side bitmasks over the host's vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .errors import CapacityError, InvalidArgument, PreconditionError
from .graph import EdgeCut, MultiGraph, cut_from_mask, cut_mask, cut_masks_below
from .smoothing import Cell, cells, is_theta_smooth, pseudo_cells
from .treecut import TreeCutDecomposition, torso_edge_mask_pairs

TANGLE_ENUMERATION_CEILING = 8


@dataclass(frozen=True)
class ExplicitTangle:
    """Order θ and the chosen orientation of every cut of order below θ."""

    graph: MultiGraph
    order: int
    members: frozenset

    def __contains__(self, cut) -> bool:
        a = cut if isinstance(cut, int) else cut_mask(self.graph, cut)
        return a in self.members

    def cuts(self) -> list:
        return [cut_from_mask(self.graph, a) for a in sorted(self.members)]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def check_axioms(g: MultiGraph, t: ExplicitTangle) -> AxiomReport:
    """Exactly one orientation per cut of order below θ (E1), no three
    members with disjoint B-sides (E2, repeats allowed), at least θ edges
    incident with every B-side (E3)."""
    theta = t.order
    full = g.full_mask
    table = g.cut_table
    bad = []
    for a in t.members:
        if table[a] >= theta:
            bad.append(("E1", f"member {g.vertex_list(a)} has order {table[a]} >= {theta}"))
    for a in cut_masks_below(g, theta):
        b = full & ~a
        if a < b or a == b:
            inside = (a in t.members) + (b in t.members)
            if inside != 1:
                bad.append(("E1", f"cut {g.vertex_list(a)} has {inside} orientations"))
    sides = sorted(full & ~a for a in t.members)
    for b1, b2, b3 in combinations_with_replacement(sides, 3):
        if b1 & b2 & b3 == 0:
            bad.append(("E2", f"B-sides {[g.vertex_list(x) for x in (b1, b2, b3)]} "
                              "have empty intersection"))
            break
    for b in sides:
        if g.incident_count(b) < theta:
            bad.append(("E3", f"B-side {g.vertex_list(b)} meets {g.incident_count(b)} < "
                              f"{theta} edges"))
    return AxiomReport(not bad, tuple(bad))


def _unordered_cuts(g: MultiGraph, theta: int) -> list:
    """One representative A-mask per unordered cut of order below θ,
    sorted by order then mask."""
    full = g.full_mask
    reps = [a for a in cut_masks_below(g, theta) if a <= full & ~a]
    return sorted(reps, key=lambda a: (g.cut_table[a], a))


def enumerate_tangles(g: MultiGraph, theta: int) -> list:
    """Every edge-tangle of order θ, by backtracking over orientations."""
    if theta < 1:
        raise InvalidArgument("theta must be positive")
    if g.n > TANGLE_ENUMERATION_CEILING:
        raise CapacityError(f"tangle enumeration is limited to "
                            f"{TANGLE_ENUMERATION_CEILING} vertices")
    full = g.full_mask
    reps = _unordered_cuts(g, theta)
    ok_side = {}
    out = []
    chosen_b: list = []
    pairs: list = []  # pairwise intersections of chosen B-sides

    def fits(b):
        if b not in ok_side:
            ok_side[b] = b != 0 and g.incident_count(b) >= theta
        if not ok_side[b]:
            return False
        for x in chosen_b:
            if b & x == 0:
                return False
        for x in pairs:
            if b & x == 0:
                return False
        return True

    def extend(i, members):
        if i == len(reps):
            out.append(ExplicitTangle(g, theta, frozenset(members)))
            return
        a0 = reps[i]
        for a in (a0, full & ~a0):
            b = full & ~a
            if not fits(b):
                continue
            added = [b & x for x in chosen_b]
            chosen_b.append(b)
            pairs.extend(added)
            members.append(a)
            extend(i + 1, members)
            members.pop()
            del pairs[len(pairs) - len(added):]
            chosen_b.pop()

    extend(0, [])
    return out


def max_tangle_order(g: MultiGraph) -> int:
    """Largest θ admitting an edge-tangle of order θ (0 if none)."""
    best = 0
    for theta in range(1, g.m + 1):
        if not enumerate_tangles(g, theta):
            break
        best = theta
    return best


def _cell_nodes(d: TreeCutDecomposition, cell) -> tuple[frozenset, int]:
    if isinstance(cell, Cell):
        return cell.nodes, cell.k
    raise InvalidArgument("expected a Cell")


def tangle_from_fat_cell(d: TreeCutDecomposition, cell: Cell) -> ExplicitTangle:
    """The cuts of order below θ whose A-side meets at most ``order`` torso
    edges of the cell. Requires a θ-smooth decomposition and a θ-cell with at
    least 3θ-2 torso edges."""
    nodes, theta = _cell_nodes(d, cell)
    g = d.graph
    match = [c for c in cells(d, theta) if c.nodes == nodes]
    if not match:
        raise PreconditionError("node set is not a θ-cell of the decomposition")
    if not match[0].fat:
        raise PreconditionError(f"cell torso has {match[0].torso_edges} edges, fewer than "
                                f"{3 * theta - 2}")
    if is_theta_smooth(d, theta) is not None:
        raise PreconditionError("decomposition is not θ-smooth")
    torso = torso_edge_mask_pairs(d, nodes)
    members = frozenset(a for a in cut_masks_below(g, theta)
                        if sum(1 for e in torso if e & a) <= g.cut_table[a])
    return ExplicitTangle(g, theta, members)


def contracted_cell_tree(d: TreeCutDecomposition, theta: int) -> tuple[list, list]:
    """Pseudo-θ-cells and the tree edges between them, as
    (cells, [(edge index, cell index, cell index)])."""
    pcs = pseudo_cells(d, theta)
    where = {t: i for i, c in enumerate(pcs) for t in c.nodes}
    links = [(i, where[a], where[b]) for i, (a, b) in enumerate(d.tree_edges)
             if where[a] != where[b]]
    return pcs, links


def locate_cell(t: ExplicitTangle, d: TreeCutDecomposition) -> Cell:
    """The unique sink of the contracted cell tree, where every link points
    toward the side the tangle puts on its B-side."""
    pcs, links = contracted_cell_tree(d, t.order)
    full = d.graph.full_mask
    out_degree = [0] * len(pcs)
    for i, c0, c1 in links:
        side0 = d.side_masks(i, d.tree_edges[i][0])[0]
        if full & ~side0 in t.members:
            out_degree[c1] += 1
        elif side0 in t.members:
            out_degree[c0] += 1
        else:
            raise InvalidArgument("tangle does not orient a low-adhesion tree edge")
    sinks = [c for c, deg in zip(pcs, out_degree) if deg == 0]
    if len(sinks) != 1:
        raise RuntimeError(f"expected one sink, found {len(sinks)}")
    return sinks[0]


def is_separator(a: int, left, right: ExplicitTangle, full: int) -> bool:
    """``[A,B]`` lies in every left tangle but not in ``right``, and
    ``[B,A]`` lies in ``right`` but in no left tangle."""
    b = full & ~a
    if a in right.members or b not in right.members:
        return False
    return all(a in e.members and b not in e.members for e in left)


def _common_order(left, right) -> int:
    orders = {e.order for e in left} | {right.order}
    if len(orders) != 1:
        raise InvalidArgument("all tangles must have the same order")
    return right.order


def separator_masks(g: MultiGraph, left, right: ExplicitTangle) -> list:
    theta = _common_order(left, right)
    full = g.full_mask
    return [a for a in cut_masks_below(g, theta) if is_separator(a, left, right, full)]


def _lex_key(g: MultiGraph, a: int) -> tuple:
    return tuple(i for i in range(g.n) if a >> i & 1)


def minimum_separator_masks(g: MultiGraph, left, right: ExplicitTangle) -> list:
    """All separators of least order, in canonical order."""
    seps = separator_masks(g, left, right)
    if not seps:
        return []
    low = min(g.cut_table[a] for a in seps)
    return sorted((a for a in seps if g.cut_table[a] == low), key=lambda a: _lex_key(g, a))


def min_separator(g: MultiGraph, left, right: ExplicitTangle) -> EdgeCut | None:
    """Least-order separator, ties broken by the sorted A-side index tuple."""
    best = minimum_separator_masks(g, left, right)
    return cut_from_mask(g, best[0]) if best else None


@dataclass(frozen=True)
class CrossFreeFamily:
    """Cuts whose A-sides are pairwise disjoint."""

    graph: MultiGraph
    masks: tuple

    def __post_init__(self):
        object.__setattr__(self, "masks", tuple(self.masks))
        if not is_cross_free(self.masks):
            raise InvalidArgument("A-sides are not pairwise disjoint")

    def cuts(self) -> list:
        return [cut_from_mask(self.graph, a) for a in self.masks]

    def union(self) -> int:
        out = 0
        for a in self.masks:
            out |= a
        return out

    def __len__(self):
        return len(self.masks)


def is_cross_free(masks) -> bool:
    return all(x & y == 0 for x, y in combinations(masks, 2))


def is_segregator(g: MultiGraph, left, right_family, masks) -> bool:
    """Every member is a minimum separator for some right tangle, and every
    right tangle has a minimum separator whose A-side sits inside a member."""
    mins = [set(minimum_separator_masks(g, left, e)) for e in right_family]
    for a in masks:
        if not any(a in m for m in mins):
            return False
    for m in mins:
        if not m:
            return False
        if not any(x & ~a == 0 for x in m for a in masks):
            return False
    return True


def _union(masks) -> int:
    out = 0
    for a in masks:
        out |= a
    return out


def uncross_segregator(g: MultiGraph, left, right_family, masks) -> CrossFreeFamily:
    """A cross-free segregator with the same union of A-sides.

    Crossing pairs are resolved by local exchanges that shrink the total
    A-side size; if exchanges stall, all subsets of minimum separators with
    the right union are searched for the smallest total size.
    """
    masks = list(dict.fromkeys(masks))
    if not is_segregator(g, left, right_family, masks):
        raise PreconditionError("input is not a segregator")
    target = _union(masks)
    mins = sorted({a for e in right_family for a in minimum_separator_masks(g, left, e)})
    pool = set(mins)

    def ok(cand):
        return _union(cand) == target and is_segregator(g, left, right_family, cand)

    current = masks
    progress = True
    while progress and not is_cross_free(current):
        progress = False
        for x, y in combinations(current, 2):
            if x & y == 0:
                continue
            rest = [c for c in current if c not in (x, y)]
            options = []
            if x & ~y == 0:
                options.append(rest + [y])
            if y & ~x == 0:
                options.append(rest + [x])
            if (x | y) in pool:
                options.append(rest + [x | y])
            if (y & ~x) in pool or y & ~x == 0:
                options.append(rest + [x] + ([y & ~x] if y & ~x else []))
            if (x & ~y) in pool or x & ~y == 0:
                options.append(rest + [y] + ([x & ~y] if x & ~y else []))
            size = sum(bin(c).count("1") for c in current)
            for cand in options:
                cand = list(dict.fromkeys(cand))
                if sum(bin(c).count("1") for c in cand) < size and ok(cand):
                    current = cand
                    progress = True
                    break
            if progress:
                break
    if is_cross_free(current):
        return CrossFreeFamily(g, tuple(sorted(current)))
    best = None
    for r in range(1, len(mins) + 1):
        for sub in combinations(mins, r):
            if _union(sub) != target or not is_cross_free(sub):
                continue
            if ok(list(sub)):
                size = sum(bin(c).count("1") for c in sub)
                if best is None or size < best[0]:
                    best = (size, sub)
    if best is None:
        raise RuntimeError("no cross-free segregator with the same union exists")
    return CrossFreeFamily(g, tuple(sorted(best[1])))


def restrict_family(family: CrossFreeFamily, cut) -> tuple[CrossFreeFamily, tuple]:
    """Map each member ``[A,B]`` to ``[A ∩ B*, B ∪ A*]`` and prepend ``[A*,B*]``.

    Returns the new family and the indices (into it) of images whose A-side
    receives an edge of ``[A*,B*]``.
    """
    g = family.graph
    a_star = cut if isinstance(cut, int) else cut_mask(g, cut)
    full = g.full_mask
    b_star = full & ~a_star
    crossing = [(mu, mv) for mu, mv in g.edge_masks if bool(mu & a_star) != bool(mv & a_star)]
    images = [a_star]
    flagged = []
    for a in family.masks:
        img = a & b_star
        images.append(img)
        if any((mu & img and mv & a_star) or (mv & img and mu & a_star) for mu, mv in crossing):
            flagged.append(len(images) - 1)
    return CrossFreeFamily(g, tuple(images)), tuple(flagged)


def is_guard(g: MultiGraph, family: CrossFreeFamily, d_set, left) -> bool:
    """Every member is a minimum separator between ``left`` and some tangle
    of the same order that misses part of ``d_set``."""
    left = list(left)
    if not left:
        raise InvalidArgument("need at least one tangle")
    theta = _common_order(left, left[0])
    d_masks = {x if isinstance(x, int) else cut_mask(g, x) for x in d_set}
    for e in left:
        if not d_masks <= e.members:
            raise PreconditionError("d_set is not contained in every tangle of the collection")
    others = [e for e in enumerate_tangles(g, theta) if not d_masks <= e.members]
    for a in family.masks:
        if not any(a in minimum_separator_masks(g, left, e) for e in others):
            return False
    return True


def tangle_minus_edges(t: ExplicitTangle, x) -> ExplicitTangle:
    """The tangle induced on ``G - X``: cuts of order below θ-|X| in ``G - X``
    that the original tangle contains."""
    x = set(x)
    if len(x) >= t.order:
        raise InvalidArgument("must delete fewer edges than the tangle order")
    h = t.graph.delete_edges(x)
    theta = t.order - len(x)
    members = frozenset(a for a in cut_masks_below(h, theta) if a in t.members)
    return ExplicitTangle(h, theta, members)
