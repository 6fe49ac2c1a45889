"""Plain-text formats for graphs, decompositions, tangles and certificates.

Graph file::

    # comment
    3 3
    0 1
    1 2
    2 0

Decomposition file::

    tree 2
    node 0 bag 0 1
    node 1 bag 2
    tedge 0 1
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .graph import MultiGraph
from .treecut import TreeCutDecomposition


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(tokens, no):
    try:
        return [int(x) for x in tokens]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from exc


def parse_graph(text: str) -> MultiGraph:
    """Header ``n m`` then ``m`` lines ``u v`` with 0-based vertex indices."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", no)
    n, m = _ints(parts, no)
    if n < 0 or m < 0:
        raise ParseError("negative size in header", no)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges but {len(body)} edge lines follow",
                         body[-1][0] if body else no)
    pairs = []
    for no, line in body:
        toks = line.split()
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", no)
        u, v = _ints(toks, no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range 0..{n - 1}", no)
        pairs.append((u, v))
    return MultiGraph.from_pairs(n, pairs)


def format_graph(g: MultiGraph) -> str:
    ix = g.index
    out = [f"{g.n} {g.m}"]
    out += [f"{ix[u]} {ix[v]}" for _, u, v in g.edges]
    return "\n".join(out) + "\n"


def read_graph(path) -> MultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


@dataclass
class Certificate:
    """A decomposition with the per-node data of a structural certificate."""

    decomposition: TreeCutDecomposition
    zsets: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    usets: dict = field(default_factory=dict)
    eta: int | None = None
    xi: int | None = None


def _parse_tree(g: MultiGraph, text: str, extra=None) -> TreeCutDecomposition:
    expected = None
    nodes, bags, edges = [], {}, []
    for no, line in _lines(text):
        toks = line.split()
        kw = toks[0]
        if kw == "tree":
            if len(toks) != 2:
                raise ParseError("expected 'tree p'", no)
            expected = _ints(toks[1:], no)[0]
        elif kw == "node":
            if len(toks) < 3 or toks[2] != "bag":
                raise ParseError("expected 'node <id> bag v1 v2 ...'", no)
            t = _ints(toks[1:2], no)[0]
            if t in bags:
                raise ParseError(f"node {t} declared twice", no)
            verts = _ints(toks[3:], no)
            for v in verts:
                if not 0 <= v < g.n:
                    raise ParseError(f"vertex {v} out of range", no)
            nodes.append(t)
            bags[t] = frozenset(g.vertices[v] for v in verts)
        elif kw == "tedge":
            if len(toks) != 3:
                raise ParseError("expected 'tedge <id1> <id2>'", no)
            a, b = _ints(toks[1:], no)
            edges.append((a, b, no))
        elif extra is not None and extra(kw, toks, no):
            continue
        else:
            raise ParseError(f"unknown keyword {kw!r}", no)
    if expected is None:
        raise ParseError("missing 'tree p' line")
    if expected != len(nodes):
        raise ParseError(f"'tree {expected}' but {len(nodes)} node lines")
    for a, b, no in edges:
        if a not in bags or b not in bags:
            raise ParseError("tree edge uses an undeclared node", no)
    return TreeCutDecomposition(g, tuple(nodes), tuple((a, b) for a, b, _ in edges), bags)


def parse_decomposition(g: MultiGraph, text: str) -> TreeCutDecomposition:
    return _parse_tree(g, text)


def format_decomposition(d: TreeCutDecomposition) -> str:
    ix = d.graph.index
    out = [f"tree {len(d.nodes)}"]
    ren = d.node_index
    for t in d.nodes:
        verts = sorted(ix[v] for v in d.bags[t])
        out.append(" ".join(["node", str(ren[t]), "bag", *map(str, verts)]))
    for a, b in d.tree_edges:
        out.append(f"tedge {ren[a]} {ren[b]}")
    return "\n".join(out) + "\n"


def parse_certificate(g: MultiGraph, text: str) -> Certificate:
    """Decomposition format plus ``zset t: ids``, ``kt t: int``,
    ``uset t: vertices`` and ``bounds eta xi`` lines."""
    cert = Certificate(decomposition=None)  # type: ignore[arg-type]

    def extra(kw, toks, no):
        if kw in ("zset", "kt", "uset"):
            line = " ".join(toks[1:])
            head, sep, rest = line.partition(":")
            if not sep:
                raise ParseError(f"expected '{kw} <node>: ...'", no)
            t = _ints([head.strip()], no)[0]
            vals = _ints(rest.split(), no)
            if kw == "zset":
                cert.zsets[t] = frozenset(vals)
            elif kw == "uset":
                cert.usets[t] = frozenset(g.vertices[v] for v in vals)
            else:
                if len(vals) != 1:
                    raise ParseError("kt takes one integer", no)
                cert.thresholds[t] = vals[0]
            return True
        if kw == "bounds":
            if len(toks) != 3:
                raise ParseError("expected 'bounds eta xi'", no)
            cert.eta, cert.xi = _ints(toks[1:], no)
            return True
        return False

    cert.decomposition = _parse_tree(g, text, extra)
    return cert


def format_tangle(tangle) -> str:
    """One member per line: sorted A-side vertex list, a colon, the order."""
    g = tangle.graph
    rows = []
    for a in sorted(tangle.members, key=lambda a: (bin(a).count("1"), a)):
        verts = " ".join(str(g.index[v]) for v in g.vertex_list(a))
        rows.append(f"{verts} : {g.cut_order_mask(a)}".strip())
    return "\n".join(rows) + "\n"
