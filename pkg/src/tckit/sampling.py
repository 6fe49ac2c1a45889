"""Deterministic samples of decompositions and cross-free families."""
from __future__ import annotations

import random
import zlib

from .census import canonical_form
from .graph import MultiGraph
from .search import min_torso_width_decomposition
from .treecut import TreeCutDecomposition, single_bag


def graph_rng(g: MultiGraph, seed: int) -> random.Random:
    """A generator seeded by ``seed`` and the graph's canonical form."""
    return random.Random(seed * 1_000_003 + zlib.crc32(canonical_form(g).encode()))


def random_decomposition(g: MultiGraph, rng: random.Random, max_nodes: int | None = None
                         ) -> TreeCutDecomposition:
    """Uniform random labelled tree (via a Prüfer sequence) with uniformly
    random bag assignment."""
    max_nodes = max_nodes or g.n + 2
    p = rng.randint(1, max_nodes)
    if p == 1:
        edges = []
    elif p == 2:
        edges = [(0, 1)]
    else:
        seq = [rng.randrange(p) for _ in range(p - 2)]
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
    bags: dict = {i: set() for i in range(p)}
    for v in g.vertices:
        bags[rng.randrange(p)].add(v)
    return TreeCutDecomposition(g, tuple(range(p)), tuple(edges), bags)


def decomposition_sample(g: MultiGraph, count: int = 4, seed: int = 0) -> list:
    """Single bag, a path of singletons, a star of singletons around an empty
    centre, a least torso-width decomposition, and ``count`` random ones."""
    out = [single_bag(g)]
    n = g.n
    if n >= 2:
        out.append(TreeCutDecomposition(g, tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)),
                                        {i: {v} for i, v in enumerate(g.vertices)}))
        out.append(TreeCutDecomposition(g, tuple(range(n + 1)), tuple((n, i) for i in range(n)),
                                        {i: {v} for i, v in enumerate(g.vertices)}))
    out.append(min_torso_width_decomposition(g)[1])
    rng = graph_rng(g, seed)
    out += [random_decomposition(g, rng) for _ in range(count)]
    return out


def random_cross_free_masks(g: MultiGraph, rng: random.Random, size: int) -> list:
    """Up to ``size`` A-sides with pairwise disjoint supports."""
    label = [rng.randrange(size + 1) for _ in range(g.n)]
    out = []
    for k in range(size):
        a = 0
        for i, lab in enumerate(label):
            if lab == k and rng.random() < 0.8:
                a |= 1 << i
        out.append(a)
    return out
