"""Property battery run over census graphs by the acceptance suite and the
``verify-all`` command."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .carving import verify_duality
from .decompose import (_realign, attach_leaf_split, balanced_split, branch_vertices,
                        decomposition_is_xi_nice, is_xi_nice, refine_along_cut, split_two_cut)
from .errors import AlignmentError
from .graph import MultiGraph, cut_masks_below
from .sampling import decomposition_sample, graph_rng, random_cross_free_masks
from .search import min_torso_width_decomposition
from .smoothing import cells, is_theta_smooth, pseudo_cells, signature, smooth_refine_steps
from .tangles import (CrossFreeFamily, enumerate_tangles, is_cross_free, is_segregator,
                      is_separator, locate_cell, minimum_separator_masks, restrict_family,
                      tangle_from_fat_cell, uncross_segregator)
from .treecut import (adhesion_set, boundary, reconstruct_from_torsos, same_graph, torso_at,
                      torso_width, validate)


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    kinds: Counter = field(default_factory=Counter)

    def record(self, ok: bool, detail: str = "", kind: str = ""):
        self.checked += 1
        self.kinds[kind] += 1
        if not ok:
            self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.checked} checks, {len(self.failures)} failures)"


class GraphFacts:
    """Lazily computed tangles, samples and smooth decompositions of a graph."""

    def __init__(self, g: MultiGraph, samples: int = 4, seed: int = 0):
        self.g = g
        self._samples = samples
        self._seed = seed
        self._tangles: dict = {}
        self._smooth: dict = {}

    def tangles(self, theta: int) -> list:
        if theta not in self._tangles:
            self._tangles[theta] = enumerate_tangles(self.g, theta)
        return self._tangles[theta]

    @cached_property
    def mu(self) -> int:
        theta = 0
        while theta < self.g.m and self.tangles(theta + 1):
            theta += 1
        return theta

    @cached_property
    def sample(self) -> list:
        return decomposition_sample(self.g, self._samples, self._seed)

    def refinement(self, index: int, theta: int) -> list:
        """Steps of smoothing sample decomposition ``index`` at ``theta``."""
        key = (index, theta)
        if key not in self._smooth:
            self._smooth[key] = list(smooth_refine_steps(self.sample[index], theta))
        return self._smooth[key]

    def smooth(self, index: int, theta: int):
        steps = self.refinement(index, theta)
        return steps[-1].decomposition if steps else self.sample[index]


def _name(g: MultiGraph) -> str:
    from .census import canonical_form
    return canonical_form(g)


# -- duality -----------------------------------------------------------------
def check_duality(facts: GraphFacts, res: PropertyResult):
    r = verify_duality(facts.g)
    res.record(r.passed, f"{_name(facts.g)}: {r}")


# -- smoothing ---------------------------------------------------------------
def check_smoothing(facts: GraphFacts, thetas, res: PropertyResult):
    """Refinement terminates, strictly lowers the signature and ends smooth."""
    g = facts.g
    for i, d in enumerate(facts.sample):
        for theta in thetas:
            try:
                steps = facts.refinement(i, theta)
            except RuntimeError as exc:
                res.record(False, f"{_name(g)} sample {i} theta {theta}: {exc}")
                continue
            prev = signature(d, theta)
            ok = True
            for s in steps:
                ok &= s.signature < prev and s.signature == signature(s.decomposition, theta)
                prev = s.signature
            out = facts.smooth(i, theta)
            ok &= bool(validate(out)) and is_theta_smooth(out, theta) is None
            if facts.mu < theta:
                # with no tangle of order θ no cell is fat, so torsos stay small
                ok &= all(torso_at(out, t).graph.m <= 3 * theta - 3 for t in out.nodes)
            res.record(ok, f"{_name(g)} sample {i} theta {theta}")


def check_min_width_shape(facts: GraphFacts, thetas, res: PropertyResult):
    """A least torso-width decomposition has no k-cell for w < k <= θ, and
    stays so (with the same torso-width) after refinement."""
    g = facts.g
    w, d = min_torso_width_decomposition(g)
    for theta in thetas:
        ok = all(not cells(d, k) for k in range(w + 1, theta + 1))
        out = d
        for step in smooth_refine_steps(d, theta):
            out = step.decomposition
        ok &= is_theta_smooth(out, theta) is None
        ok &= torso_width(out) == w
        ok &= all(not cells(out, k) for k in range(w + 1, theta + 1))
        res.record(ok, f"{_name(g)} theta {theta} width {w}")


# -- tangles -----------------------------------------------------------------
def check_closure(facts: GraphFacts, res: PropertyResult):
    """Union-closure below θ and closure under shrinking the A-side."""
    g = facts.g
    table = g.cut_table
    for theta in range(1, facts.mu + 1):
        masks = cut_masks_below(g, theta)
        for t in facts.tangles(theta):
            ok = True
            for a in t.members:
                for c in t.members:
                    u = a | c
                    if table[u] < theta and u not in t.members:
                        ok = False
                for sub in masks:
                    if sub & ~a == 0 and sub not in t.members:
                        ok = False
            res.record(ok, f"{_name(g)} theta {theta}")


def check_fat_cell_tangles(facts: GraphFacts, res: PropertyResult):
    """Every fat θ-cell of a θ-smooth decomposition defines an enumerated tangle."""
    g = facts.g
    for theta in range(1, max(4, facts.mu) + 1):
        listed = {t.members for t in facts.tangles(theta)}
        for i in range(len(facts.sample)):
            d = facts.smooth(i, theta)
            for c in cells(d, theta):
                if c.fat:
                    t = tangle_from_fat_cell(d, c)
                    res.record(t.members in listed, f"{_name(g)} theta {theta} sample {i}")


def _membership(t, d, cell) -> bool:
    full = d.graph.full_mask
    for i, (x, y) in enumerate(d.tree_edges):
        if x in cell.nodes and y in cell.nodes:
            continue
        if d.adhesion_sizes[i] >= t.order:
            continue
        bits = d.node_bits(cell.nodes)
        near, _ = d.side_containing_nodes(i, bits)
        if full & ~near not in t.members:
            return False
    return True


def check_location(facts: GraphFacts, res: PropertyResult, smooth_too: bool = True):
    """Each tangle has a unique sink cell, it is a θ-cell, and every
    low-adhesion tree edge off it points the tangle's way."""
    g = facts.g
    for theta in range(1, facts.mu + 1):
        decs = list(facts.sample)
        if smooth_too:
            decs += [facts.smooth(i, theta) for i in range(len(facts.sample))]
        for t in facts.tangles(theta):
            for d in decs:
                try:
                    c = locate_cell(t, d)
                except RuntimeError as exc:
                    res.record(False, f"{_name(g)} theta {theta}: {exc}")
                    continue
                sinks_ok = _unique_sink_brute(t, d)
                res.record(c.is_cell and _membership(t, d, c) and sinks_ok == c.nodes,
                           f"{_name(g)} theta {theta}")


def _unique_sink_brute(t, d):
    """The only pseudo-θ-cell satisfying the membership property, if unique."""
    hits = [c.nodes for c in pseudo_cells(d, t.order) if _membership(t, d, c)]
    return hits[0] if len(hits) == 1 else None


# -- separators ---------------------------------------------------------------
def check_separator_nesting(facts: GraphFacts, res: PropertyResult):
    """For a minimum (C,E)-separator [A,B] and each E' in C there is a
    minimum (E',E)-separator whose A-side contains A."""
    g = facts.g
    for theta in range(1, facts.mu + 1):
        ts = facts.tangles(theta)
        if len(ts) < 2:
            continue
        for e in ts:
            others = [x for x in ts if x is not e]
            for r in range(1, len(others) + 1):
                for left in combinations(others, r):
                    mins = minimum_separator_masks(g, left, e)
                    for a in mins:
                        ok = all(any(a & ~c == 0 for c in minimum_separator_masks(g, [x], e))
                                 for x in left)
                        res.record(ok, f"{_name(g)} theta {theta}")


def _path_edge_toward(d, nodes, target_nodes):
    """Boundary edge of ``nodes`` on the tree path toward ``target_nodes``."""
    bits = d.node_bits(target_nodes)
    for i, _, outer in boundary(d, nodes):
        _, nm = d.side_masks(i, outer)
        if nm & bits:
            return i, outer
    return None


def check_cell_statements(facts: GraphFacts, res: PropertyResult):
    """On θ-smooth decompositions of a connected graph: located cells satisfy
    membership, fat-cell tangles locate at their own cell, and boundary edges
    separating a fat cell from the others bound every minimum separator."""
    g = facts.g
    if not g.is_connected():
        return
    full = g.full_mask
    for theta in range(1, facts.mu + 1):
        ts = facts.tangles(theta)
        for i in range(len(facts.sample)):
            d = facts.smooth(i, theta)
            where = {}
            for t in ts:
                c = locate_cell(t, d)
                where[t.members] = c
                res.record(_membership(t, d, c), f"{_name(g)} theta {theta}", "membership")
            fat = []
            for c in cells(d, theta):
                if c.fat:
                    t = tangle_from_fat_cell(d, c)
                    res.record(where[t.members].nodes == c.nodes,
                               f"{_name(g)} theta {theta}", "fat-cell")
                    fat.append((t, c))
            for k, (e, ce) in enumerate(fat):
                rest = fat[:k] + fat[k + 1:]
                for r in range(1, len(rest) + 1):
                    for group in combinations(rest, r):
                        left = [x for x, _ in group]
                        taken = 0
                        for _, cx in group:
                            taken |= d.node_bits(cx.nodes)
                        mins = minimum_separator_masks(g, left, e)
                        for j, inner, outer in boundary(d, ce.nodes):
                            near_v, near_n = d.side_masks(j, inner)
                            if near_n & taken:
                                continue
                            ok = is_separator(near_v, left, e, full)
                            for a in mins:
                                ok &= near_v & ~a == 0
                                b = full & ~a
                                for _, cx in group:
                                    j2, _ = _path_edge_toward(d, cx.nodes, ce.nodes)
                                    side, _ = d.side_containing_nodes(j2, d.node_bits(cx.nodes))
                                    ok &= side & ~b == 0
                            res.record(ok, f"{_name(g)} theta {theta}", "separator")


def check_uncrossing(facts: GraphFacts, res: PropertyResult, found: list | None = None):
    """Take all minimum separators between one tangle and each of a set of
    others; whenever that family crosses, uncrossing must give a cross-free
    segregator with the same union of A-sides."""
    g = facts.g
    for theta in range(1, facts.mu + 1):
        ts = facts.tangles(theta)
        if len(ts) < 2:
            continue
        for e in ts:
            others = [x for x in ts if x is not e]
            for r in range(1, len(others) + 1):
                for right in combinations(others, r):
                    fam = sorted({a for x in right for a in minimum_separator_masks(g, [e], x)})
                    if is_cross_free(fam) or not is_segregator(g, [e], right, fam):
                        continue
                    if found is not None:
                        found.append((_name(g), theta))
                    out = uncross_segregator(g, [e], right, fam)
                    union = 0
                    for a in fam:
                        union |= a
                    ok = is_cross_free(out.masks) and out.union() == union \
                        and is_segregator(g, [e], right, out.masks)
                    res.record(ok, f"{_name(g)} theta {theta}")


# -- decompositions ------------------------------------------------------------
def check_reconstruction(facts: GraphFacts, res: PropertyResult):
    for i, d in enumerate(facts.sample):
        res.record(same_graph(reconstruct_from_torsos(d), facts.g), f"{_name(facts.g)} sample {i}")


def _no_cut_of_order(g: MultiGraph, orders) -> bool:
    return all(g.cut_table[a] not in orders for a in range(1 << g.n))


def check_two_cut_split(facts: GraphFacts, res: PropertyResult):
    """Splitting along an order-2 cut conserves vertices and edges and keeps
    graphs free of order-1 and order-3 cuts."""
    g = facts.g
    clean = _no_cut_of_order(g, (1, 3))
    for a in range(1, g.full_mask):
        if g.cut_table[a] != 2:
            continue
        s = split_two_cut(g, (g.vertex_set(a), g.vertex_set(g.full_mask & ~a)))
        ok = set(s.first.vertices) | set(s.second.vertices) == set(g.vertices)
        ok &= not set(s.first.vertices) & set(s.second.vertices)
        ok &= s.first.m + s.second.m == g.m
        kept = (set(s.first.edge_ids) | set(s.second.edge_ids)) - set(s.new_edges)
        ok &= kept == set(g.edge_ids) - g.crossing_ids(a)
        if clean:
            ok &= _no_cut_of_order(s.first, (1, 3)) and _no_cut_of_order(s.second, (1, 3))
        res.record(ok, f"{_name(g)} cut {g.vertex_list(a)}",
                   kind="no-odd-cuts" if clean else "")


def check_refine_and_attach(facts: GraphFacts, res: PropertyResult):
    """Refinement outputs validate, bags only shrink, and every new adhesion
    set lies inside an old one plus the crossing edges of the cut; leaf
    splits validate and give each new leaf edge the torso degree of its
    vertex, loops excluded."""
    g = facts.g
    for d in facts.sample:
        old = [adhesion_set(d, i) for i in range(len(d.tree_edges))] + [frozenset()]
        old_bags = [d.bags[t] for t in d.nodes]
        for t in d.nodes:
            for a in range(1 << g.n):
                cut = (g.vertex_set(a), g.vertex_set(g.full_mask & ~a))
                try:
                    out = refine_along_cut(d, t, cut)
                except AlignmentError:
                    continue
                crossing = g.crossing_ids(_realign(d, frozenset([t]), a))
                ok = bool(validate(out))
                ok &= all(any(b <= ob for ob in old_bags) for b in out.bags.values())
                ok &= all(any(adhesion_set(out, i) <= s | crossing for s in old)
                          for i in range(len(out.tree_edges)))
                res.record(ok, f"{_name(g)} refine node {t} cut {g.vertex_list(a)}")
            bag = sorted(d.bags[t], key=g.index.get)
            torso = torso_at(d, t).graph
            for r in range(len(bag) + 1):
                for s in combinations(bag, r):
                    out = attach_leaf_split(d, t, s)
                    ok = bool(validate(out)) and len(out.nodes) == len(d.nodes) + r
                    for v in s:
                        leaf = next(x for x in out.nodes
                                    if out.bags[x] == frozenset([v]) and out.is_leaf(x))
                        (_, i), = out.adjacency[leaf]
                        ok &= out.adhesion_sizes[i] == torso.degree(v) - 2 * torso.loop_count(v)
                    res.record(ok, f"{_name(g)} attach node {t} {s}")


def check_balanced_split(facts: GraphFacts, res: PropertyResult, xis=(1, 2, 3, 4, 5, 6)):
    g = facts.g
    m = g.m
    for i, d in enumerate(facts.sample):
        for xi in xis:
            if not decomposition_is_xi_nice(d, xi):
                continue
            s = balanced_split(d)
            if s.kind == "edge":
                j = d.edge_index(s.tree_edge)
                sa = d.side_masks(j, s.tree_edge[0])[0]
                sb = g.full_mask & ~sa
                ok = 3 * g.incident_count(sa) >= m and 3 * g.incident_count(sb) >= m
                ok &= 3 * g.inside_count(sa) >= m - 3 * xi and 3 * g.inside_count(sb) >= m - 3 * xi
                ok &= is_xi_nice(g.induced(g.vertex_set(sa)), xi)
                ok &= is_xi_nice(g.induced(g.vertex_set(sb)), xi)
            elif s.kind == "bag":
                ok = 9 * g.inside_count(d.bag_mask[s.node]) >= m
            else:
                u1 = g.mask(branch_vertices(d, s.node, s.first))
                u2 = g.mask(branch_vertices(d, s.node, s.second))
                ok = u1 & u2 == 0 and u1 | u2 == g.full_mask & ~d.bag_mask[s.node]
                ok &= 9 * g.incident_count(u1) >= 2 * m and 9 * g.incident_count(u2) >= 2 * m
                ok &= bool(s.first) and bool(s.second)
            res.record(ok, f"{_name(g)} sample {i} xi {xi} kind {s.kind}")


def check_restrict_family(graphs, res: PropertyResult, instances: int = 1000, seed: int = 0):
    """Random cross-free families and cuts: flagged images number at most
    twice the cut order, unflagged images do not grow, flagged ones grow by
    at most the cut order."""
    import random
    rng = random.Random(seed)
    graphs = [g for g in graphs if g.n >= 1]
    for k in range(instances):
        g = graphs[rng.randrange(len(graphs))]
        local = graph_rng(g, rng.randrange(1 << 30))
        masks = random_cross_free_masks(g, local, local.randint(1, 4))
        fam = CrossFreeFamily(g, masks)
        a_star = local.randrange(1 << g.n)
        out, flagged = restrict_family(fam, a_star)
        order_star = g.cut_table[a_star]
        ok = out.masks[0] == a_star and len(flagged) <= 2 * order_star
        for j, a in enumerate(masks):
            img = out.masks[j + 1]
            bound = g.cut_table[a] + (order_star if j + 1 in flagged else 0)
            ok &= g.cut_table[img] <= bound
        res.record(ok, f"instance {k} on {_name(g)}")


def check_loop_family(max_loops: int, res: PropertyResult):
    """One vertex with L loops: tctw = L, cw = 0, mu = L."""
    for loops in range(1, max_loops + 1):
        g = MultiGraph.from_pairs(1, [(0, 0)] * loops)
        r = verify_duality(g)
        res.record(r.passed and (r.tctw, r.cw, r.mu) == (loops, 0, loops),
                   f"{loops} loops: {r}")


def check_immersion_degrees(hosts, patterns, res: PropertyResult):
    """Every witness found verifies and the degree condition holds for it."""
    from .immersion import degree_condition, find_immersion, verify_witness
    for g in hosts:
        for h in patterns:
            w = find_immersion(g, h)
            if w is not None:
                res.record(verify_witness(g, h, w) and degree_condition(g, h) is None,
                           f"{_name(h)} into {_name(g)}")


PROPERTY_NAMES = ("duality", "loop-family", "smoothing", "min-width-shape", "tangle-closure",
                  "fat-cell-tangles", "cell-location", "separator-nesting", "cell-separators",
                  "uncrossing", "reconstruction", "two-cut-split", "refine-and-attach",
                  "balanced-split", "restrict-family", "immersion-degrees")


def run_battery(graphs, *, thetas=(1, 2, 3, 4), xis=(1, 2, 3, 4, 5, 6), max_loops: int = 6, restrict_instances: int = 1000,
                patterns=(), seed: int = 0, samples: int = 4) -> list:
    """Run every property over ``graphs`` and return one result per property."""
    res = {name: PropertyResult(name) for name in PROPERTY_NAMES}
    graphs = list(graphs)
    check_loop_family(max_loops, res["loop-family"])
    for g in graphs:
        facts = GraphFacts(g, samples, seed)
        check_duality(facts, res["duality"])
        check_smoothing(facts, thetas, res["smoothing"])
        check_min_width_shape(facts, thetas, res["min-width-shape"])
        check_closure(facts, res["tangle-closure"])
        check_fat_cell_tangles(facts, res["fat-cell-tangles"])
        check_location(facts, res["cell-location"])
        check_separator_nesting(facts, res["separator-nesting"])
        check_cell_statements(facts, res["cell-separators"])
        check_uncrossing(facts, res["uncrossing"])
        check_reconstruction(facts, res["reconstruction"])
        check_two_cut_split(facts, res["two-cut-split"])
        check_refine_and_attach(facts, res["refine-and-attach"])
        check_balanced_split(facts, res["balanced-split"], xis)
    if graphs and restrict_instances:
        check_restrict_family(graphs, res["restrict-family"], restrict_instances, seed)
    if patterns:
        check_immersion_degrees(graphs, patterns, res["immersion-degrees"])
    return [res[name] for name in PROPERTY_NAMES]
