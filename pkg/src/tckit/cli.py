"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 parse error, 3 capacity exceeded.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass

import click

from .carving import verify_duality
from .census import canonical_form, census, immersion_free_counts
from .errors import CapacityError, InvalidArgument, ParseError
from .graph import MultiGraph
from .immersion import degree_condition, find_immersion, format_immersion
from .io import format_decomposition, parse_decomposition, read_graph
from .search import graph_tree_cut_width
from .smoothing import smooth_refine_steps, signature
from .treecut import single_bag, torso_width
from .verify import run_battery

EXIT_OK, EXIT_FAILURE, EXIT_PARSE, EXIT_CAPACITY = 0, 1, 2, 3


@dataclass
class RunConfig:
    fmt: str = "human"
    seed: int = 0


def _flag(name: str):
    return f"TCKIT_{name}"


format_option = click.option("--format", "fmt", type=click.Choice(["human", "machine"]),
                             default="human", envvar=_flag("FORMAT"), show_default=True)
seed_option = click.option("--seed", type=int, default=0, envvar=_flag("SEED"), show_default=True,
                           help="Seed for sampled decompositions and families.")


def bound_options(max_vertices: int, max_edges: int, loops: int, parallel: int):
    def wrap(f):
        f = click.option("--parallel-cap", type=click.IntRange(min=1), default=parallel,
                         envvar=_flag("PARALLEL_CAP"), show_default=True,
                         help="Most edges between one pair of vertices.")(f)
        f = click.option("--loops", type=click.IntRange(min=0), default=loops,
                         envvar=_flag("LOOPS"), show_default=True,
                         help="Most loops at one vertex (0 forbids loops).")(f)
        f = click.option("--max-edges", type=click.IntRange(min=0), default=max_edges,
                         envvar=_flag("MAX_EDGES"), show_default=True)(f)
        f = click.option("--max-vertices", type=click.IntRange(min=1), default=max_vertices,
                         envvar=_flag("MAX_VERTICES"), show_default=True)(f)
        return f
    return wrap


def _verdict(ok: bool | None) -> str:
    return "SKIP" if ok is None else ("PASS" if ok else "FAIL")


@click.group()
def cli():
    """Tree-cut decompositions, edge-tangles, carvings and immersions."""


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@format_option
def width(graph_file, fmt):
    """Print tree-cut torso-width, carving width, tree-cut width and the
    largest tangle order, and check the inequalities between them."""
    g = read_graph(graph_file)
    r = verify_duality(g)
    if fmt == "machine":
        click.echo(" ".join([canonical_form(g), str(r.tctw), str(r.cw), str(r.mu),
                             _verdict(r.carving_below_torso), _verdict(r.torso_vs_carving),
                             _verdict(r.tangle_sandwich)]))
    else:
        tcw = graph_tree_cut_width(g)
        click.echo(f"tctw={r.tctw} cw={r.cw} tcw={tcw} mu={r.mu} "
                   f"duality={_verdict(r.passed)}")
    sys.exit(EXIT_OK if r.passed else EXIT_FAILURE)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--theta", type=click.IntRange(min=1), required=True, envvar=_flag("THETA"))
@click.option("--start", "start_file", type=click.Path(exists=True, dir_okay=False),
              help="Starting decomposition (default: a single bag).")
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              help="Write the decomposition here instead of standard output.")
@format_option
def smooth(graph_file, theta, start_file, output, fmt):
    """Refine a decomposition until it is θ-smooth."""
    g = read_graph(graph_file)
    d = single_bag(g)
    if start_file:
        with open(start_file, encoding="utf-8") as fh:
            d = parse_decomposition(g, fh.read())
    steps = 0
    for step in smooth_refine_steps(d, theta):
        d = step.decomposition
        steps += 1
    sig = signature(d, theta)
    nonzero = " ".join(f"{i}:{j}={sig.count(i, j)}" for i in range(theta, 0, -1)
                       for j in range(g.m, 0, -1) if sig.count(i, j))
    if fmt == "machine":
        summary = f"# {steps} {len(d.nodes)} {torso_width(d)} {nonzero or '-'}"
    else:
        summary = (f"# iterations={steps} nodes={len(d.nodes)} torso-width={torso_width(d)} "
                   f"signature={nonzero or 'empty'}")
    text = format_decomposition(d)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(summary)
    else:
        click.echo(summary)
        click.echo(text, nl=False)


@cli.command()
@click.argument("host_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("pattern_file", type=click.Path(exists=True, dir_okay=False))
def immerse(host_file, pattern_file):
    """Search for an immersion of the pattern graph in the host graph."""
    g = read_graph(host_file)
    h = read_graph(pattern_file)
    k = degree_condition(g, h)
    if k is not None:
        click.echo("NO IMMERSION")
        click.echo(f"# degree condition fails: the host has fewer vertices of degree >= {k} "
                   "than the pattern")
        return
    click.echo(format_immersion(g, h, find_immersion(g, h)), nl=False)


@cli.command("verify-all")
@bound_options(4, 6, 3, 3)
@click.option("--theta", type=click.IntRange(min=1), default=4, envvar=_flag("THETA"),
              show_default=True, help="Largest θ used for smoothing.")
@click.option("--xi", type=click.IntRange(min=1), default=6, envvar=_flag("XI"),
              show_default=True, help="Largest ξ used for balanced splits.")
@click.option("--instances", type=click.IntRange(min=0), default=1000, show_default=True,
              help="Random family restrictions to check.")
@format_option
@seed_option
def verify_all(max_vertices, max_edges, loops, parallel_cap, theta, xi, instances, fmt, seed):
    """Run the property battery over every connected census graph."""
    started = time.perf_counter()
    graphs = census(max_vertices, max_edges, connected=True, loop_cap=loops,
                    parallel_cap=parallel_cap)
    patterns = census(min(3, max_vertices), min(4, max_edges), loop_cap=min(2, loops),
                      parallel_cap=min(2, parallel_cap))
    results = run_battery(graphs, thetas=tuple(range(1, theta + 1)), xis=tuple(range(1, xi + 1)),
                          restrict_instances=instances, patterns=patterns, seed=seed)
    elapsed = time.perf_counter() - started
    for r in results:
        if fmt == "machine":
            click.echo(f"{r.name} {r.checked} {len(r.failures)}")
        else:
            click.echo(r.line())
    failed = [r for r in results if not r.passed]
    for r in failed:
        click.echo(f"counterexample {r.name}: {r.failures[0]}")
    if fmt == "human":
        click.echo(f"graphs={len(graphs)} runtime={elapsed:.1f}s")
    sys.exit(EXIT_FAILURE if failed else EXIT_OK)


@cli.command("census-count")
@bound_options(4, 5, 1, 2)
@click.option("--pattern", "pattern_file", type=click.Path(exists=True, dir_okay=False),
              help="Excluded immersion (default: the triangle).")
@click.option("-d", "--connectivity", type=click.IntRange(min=1), default=4, show_default=True,
              help="Required edge-connectivity of every maximal 2-edge-connected subgraph.")
@format_option
def census_count(max_vertices, max_edges, loops, parallel_cap, pattern_file, connectivity, fmt):
    """Count unlabelled graphs without isolated vertices that exclude the
    pattern as an immersion and whose 2-edge-connected pieces are highly
    connected, per edge count."""
    h = read_graph(pattern_file) if pattern_file else \
        MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    counts = immersion_free_counts(h, connectivity, max_vertices, max_edges,
                                   loop_cap=loops, parallel_cap=parallel_cap)
    for m, c in counts.items():
        click.echo(f"{m} {c}" if fmt == "machine" else f"m={m} count={c}")


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="tckit", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_PARSE)
    except click.exceptions.Abort:
        sys.exit(EXIT_FAILURE)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    except CapacityError as exc:
        click.echo(f"capacity exceeded: {exc}", err=True)
        sys.exit(EXIT_CAPACITY)
    except InvalidArgument as exc:
        click.echo(f"invalid argument: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
