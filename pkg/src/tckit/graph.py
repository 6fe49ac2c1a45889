"""Finite multigraphs with loops, and edge-cuts between vertex sets.

Vertex sets are handled internally as integer bitmasks over the vertex order
of the graph; the public API accepts and returns frozensets.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from .errors import CapacityError, InvalidArgument, InvalidPartition

# Exhaustive cut enumeration walks all 2^n bipartitions.
CUT_ENUMERATION_CEILING = 16


@dataclass(frozen=True)
class MultiGraph:
    """A multigraph given by a vertex tuple and ``(edge_id, u, v)`` triples.

    Loops (``u == v``) and parallel edges are allowed. Edge ids are stable
    across every derived graph (torsos, sums, subgraphs).
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = tuple((eid, u, v) for eid, u, v in self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if len(set(verts)) != len(verts):
            raise InvalidArgument("duplicate vertex")
        vs = set(verts)
        seen = set()
        for eid, u, v in edges:
            if eid in seen:
                raise InvalidArgument(f"duplicate edge id {eid!r}")
            seen.add(eid)
            if u not in vs or v not in vs:
                raise InvalidArgument(f"edge {eid!r} has an endpoint outside the vertex set")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple]) -> MultiGraph:
        """Vertices ``0..n-1`` and edges numbered in the order given."""
        return cls(tuple(range(n)), tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    # -- basic structure -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def ends(self) -> dict:
        return {eid: (u, v) for eid, u, v in self.edges}

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def edge_masks(self) -> tuple:
        """Per edge, the pair of one-bit masks of its endpoints."""
        ix = self.index
        return tuple((1 << ix[u], 1 << ix[v]) for _, u, v in self.edges)

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(eid for eid, _, _ in self.edges)

    def mask(self, vertices: Iterable) -> int:
        ix = self.index
        out = 0
        for v in vertices:
            out |= 1 << ix[v]
        return out

    def vertex_set(self, mask: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def vertex_list(self, mask: int) -> list:
        return [v for i, v in enumerate(self.vertices) if mask >> i & 1]

    def degree(self, v) -> int:
        """Number of edge ends at ``v``; a loop contributes two."""
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def degrees(self) -> dict:
        deg = dict.fromkeys(self.vertices, 0)
        for _, u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def loop_count(self, v) -> int:
        return sum(1 for _, u, w in self.edges if u == w == v)

    def multiplicity(self, u, v) -> int:
        return sum(1 for _, a, b in self.edges if {a, b} == {u, v} and (u != v or a == b))

    def is_loopless(self) -> bool:
        return all(u != v for _, u, v in self.edges)

    def incident_edges(self, v) -> list:
        return [eid for eid, a, b in self.edges if v in (a, b)]

    # -- mask tables used by the exhaustive searches ----------------------
    @cached_property
    def cut_table(self) -> list:
        """``cut_table[a]`` is the order of the cut with A-side mask ``a``."""
        self._check_enumerable()
        table = [0] * (1 << self.n)
        for mu, mv in self.edge_masks:
            if mu == mv:
                continue
            both = mu | mv
            for a in range(1 << self.n):
                if a & both and (a & both) != both:
                    table[a] += 1
        return table

    @cached_property
    def inside_table(self) -> list:
        """``inside_table[s]`` counts edges (loops included) with both ends in ``s``."""
        self._check_enumerable()
        table = [0] * (1 << self.n)
        for mu, mv in self.edge_masks:
            both = mu | mv
            for s in range(1 << self.n):
                if s & both == both:
                    table[s] += 1
        return table

    def cut_order_mask(self, a: int) -> int:
        if self.n <= CUT_ENUMERATION_CEILING:
            return self.cut_table[a]
        return sum(1 for mu, mv in self.edge_masks if bool(mu & a) != bool(mv & a))

    def inside_count(self, s: int) -> int:
        if self.n <= CUT_ENUMERATION_CEILING:
            return self.inside_table[s]
        return sum(1 for mu, mv in self.edge_masks if (mu | mv) & ~s == 0)

    def incident_count(self, s: int) -> int:
        """Number of edges with at least one end in ``s``."""
        return self.m - self.inside_count(self.full_mask & ~s)

    def crossing_ids(self, a: int) -> frozenset:
        return frozenset(eid for eid, (mu, mv) in zip(self.edge_ids, self.edge_masks)
                         if bool(mu & a) != bool(mv & a))

    def _check_enumerable(self):
        if self.n > CUT_ENUMERATION_CEILING:
            raise CapacityError(f"{self.n} vertices exceeds the cut enumeration ceiling "
                                f"of {CUT_ENUMERATION_CEILING}")

    # -- derived graphs ---------------------------------------------------
    def delete_edges(self, ids: Iterable) -> MultiGraph:
        drop = set(ids)
        missing = drop - set(self.edge_ids)
        if missing:
            raise InvalidArgument(f"unknown edge ids {sorted(map(repr, missing))}")
        return MultiGraph(self.vertices, tuple(e for e in self.edges if e[0] not in drop))

    def induced(self, vertices: Iterable) -> MultiGraph:
        keep = set(vertices)
        verts = tuple(v for v in self.vertices if v in keep)
        return MultiGraph(verts, tuple(e for e in self.edges if e[1] in keep and e[2] in keep))

    def components(self) -> list:
        """Vertex sets of the connected components, in vertex order."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [frozenset(g) for g in groups.values()]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def fresh_edge_id(self, hint: int = 0) -> int:
        used = set(self.edge_ids)
        i = hint
        while i in used:
            i += 1
        return i


@dataclass(frozen=True)
class EdgeCut:
    """An ordered bipartition ``[A, B]`` together with its crossing edge ids."""

    side_a: frozenset
    side_b: frozenset
    crossing: frozenset

    @property
    def order(self) -> int:
        return len(self.crossing)

    def reversed(self) -> EdgeCut:
        return EdgeCut(self.side_b, self.side_a, self.crossing)

    def __repr__(self):
        a = sorted(self.side_a, key=repr)
        b = sorted(self.side_b, key=repr)
        return f"EdgeCut({a}|{b}, order={self.order})"


def cut_from_mask(g: MultiGraph, a: int) -> EdgeCut:
    return EdgeCut(g.vertex_set(a), g.vertex_set(g.full_mask & ~a), g.crossing_ids(a))


def cut_mask(g: MultiGraph, cut: EdgeCut | tuple) -> int:
    """A-side mask of a cut, validating that it partitions the vertex set."""
    if isinstance(cut, EdgeCut):
        a, b = cut.side_a, cut.side_b
    else:
        a, b = cut
    a, b = set(a), set(b)
    if a & b:
        raise InvalidPartition("sides overlap")
    if a | b != set(g.vertices):
        raise InvalidPartition("sides do not cover the vertex set")
    return g.mask(a)


def edge_cut_order(g: MultiGraph, cut: EdgeCut | tuple) -> EdgeCut:
    """Build the edge-cut ``[A, B]``; loops never cross."""
    return cut_from_mask(g, cut_mask(g, cut))


def enumerate_edge_cuts(g: MultiGraph, max_order: int) -> Iterator[EdgeCut]:
    """All ordered cuts of order at most ``max_order``.

    The A-side mask runs as a binary counter over the vertex order, so
    ``[∅, V]`` comes first and ``[V, ∅]`` last.
    """
    g._check_enumerable()
    table = g.cut_table
    for a in range(1 << g.n):
        if table[a] <= max_order:
            yield cut_from_mask(g, a)


def cut_masks_below(g: MultiGraph, bound: int) -> list:
    """A-side masks of all ordered cuts with order strictly below ``bound``."""
    table = g.cut_table
    return [a for a in range(1 << g.n) if table[a] < bound]


def is_k_simple(g: MultiGraph, k: int) -> bool:
    """At most ``k`` loops per vertex and at most ``k`` edges between any pair."""
    counts: dict = {}
    for _, u, v in g.edges:
        key = (u, v) if g.index[u] <= g.index[v] else (v, u)
        counts[key] = counts.get(key, 0) + 1
    return all(c <= k for c in counts.values())
