"""Command-line front end: build trees, query and verify them, run benches,
and emit structure reports.

Exit codes: 0 success, 2 verification failure, 3 randomized abort,
4 input error.
"""

from __future__ import annotations

import csv
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click

from . import families
from .analysis import analyze_report
from .build import RandomizedAbort, build_deterministic, build_randomized
from .classic import classic_gomory_hu, gusfield, gusfield_projection
from .flow import FLOW_CALLS, MaxFlowSolver
from .graph import Graph, GraphError, parse_graph, subdivide
from .partition import TreeError, parse_tree, to_node_tree
from .single_source import EngineConfig
from .weights import from_scaled

EXIT_VERIFY_FAIL = 2
EXIT_ABORT = 3
EXIT_INPUT = 4

ALGOS = ("classic", "gusfield", "randomized", "deterministic")


def _seed_option(seed):
    if seed is not None:
        return seed
    env = os.environ.get("GHT_SEED")
    return int(env) if env else None


def _load_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            return parse_graph(fh.read())
    except (OSError, GraphError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)


def _build_tree(g: Graph, algo: str, seed, config: EngineConfig, report: dict):
    if algo == "classic":
        return classic_gomory_hu(g)
    if algo == "gusfield":
        return gusfield(g)
    if algo == "randomized":
        return build_randomized(g, seed=seed, config=config, report=report)
    if algo == "deterministic":
        return build_deterministic(g, config=config, report=report)
    raise ValueError(algo)


@click.group()
def main():
    """Cut-equivalent (Gomory-Hu) tree toolkit."""


@main.command()
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--algo", type=click.Choice(ALGOS), default="deterministic")
@click.option("--seed", type=int, default=None, help="randomness seed (env GHT_SEED as fallback)")
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.option("--via-subdivision", is_flag=True,
              help="accept multigraphs: subdivide, build, project back")
@click.option("--phi-exp", type=float, default=None,
              help="expansion parameter override (enables the elimination loop)")
@click.option("--stage-from-zero", is_flag=True, help="stage range starts at w=1")
@click.option("--oracle-limit", type=int, default=64)
def build(input_path, algo, seed, out_path, report_path, via_subdivision,
          phi_exp, stage_from_zero, oracle_limit):
    """Build a cut-equivalent tree of a graph file."""
    g = _load_graph(input_path)
    seed = _seed_option(seed)
    config = EngineConfig(stage_from_zero=stage_from_zero)
    if phi_exp is not None:
        config.loop_enabled = True
        config.phi = phi_exp
    if seed is not None:
        config.seed = seed
    report: dict = {"algo": algo, "n": g.n, "m": g.edge_instances, "seed": seed}
    FLOW_CALLS.reset()
    t0 = time.perf_counter()
    try:
        if via_subdivision and algo in ("randomized", "deterministic"):
            simple, records = subdivide(g)
            inner = _build_tree(simple, algo, seed, config, report)
            tree = gusfield_projection(g, to_node_tree(inner))
            report["subdivided_nodes"] = simple.n
        else:
            if algo in ("randomized", "deterministic") and not g.simple:
                click.echo("error: input is a multigraph; use --via-subdivision", err=True)
                sys.exit(EXIT_INPUT)
            tree = _build_tree(g, algo, seed, config, report)
    except RandomizedAbort as exc:
        click.echo(f"abort: {exc}", err=True)
        sys.exit(EXIT_ABORT)
    except (GraphError, TreeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    report["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    report["maxflow_calls"] = FLOW_CALLS.value
    node_tree = to_node_tree(tree)
    with open(out_path, "w") as fh:
        fh.write(node_tree.serialize())
    if report_path:
        with open(report_path, "w") as fh:
            json.dump(report, fh, indent=2, default=str)
    click.echo(f"tree written to {out_path} ({report['maxflow_calls']} max-flow calls)")


@main.command()
@click.argument("tree_path", type=click.Path(exists=True))
@click.argument("u", type=int)
@click.argument("v", type=int)
def query(tree_path, u, v):
    """Minimum u,v-cut value and u's side from a tree file (1-indexed)."""
    try:
        with open(tree_path) as fh:
            tree = parse_tree(fh.read())
        value, side = tree.query(u - 1, v - 1)
    except (OSError, TreeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(f"value {value}")
    click.echo("side " + " ".join(str(x + 1) for x in sorted(side)))


@main.command()
@click.argument("graph_path", type=click.Path(exists=True))
@click.argument("tree_path", type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["full-oracle", "sampled"]), default="full-oracle")
@click.option("--samples", type=int, default=200)
@click.option("--seed", type=int, default=None)
@click.option("--oracle-limit", type=int, default=64)
def verify(graph_path, tree_path, mode, samples, seed, oracle_limit):
    """Check a tree against direct max-flow computations."""
    g = _load_graph(graph_path)
    try:
        with open(tree_path) as fh:
            tree = parse_tree(fh.read())
    except (OSError, TreeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if tree.n != g.n:
        click.echo("error: node counts differ", err=True)
        sys.exit(EXIT_INPUT)
    if mode == "full-oracle":
        if g.n > oracle_limit:
            click.echo(f"error: full-oracle limited to {oracle_limit} nodes", err=True)
            sys.exit(EXIT_INPUT)
        pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    else:
        rng = random.Random(_seed_option(seed))
        pairs = []
        seen = set()
        while len(pairs) < min(samples, g.n * (g.n - 1) // 2):
            u, v = rng.sample(range(g.n), 2)
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                pairs.append(key)
    sol = MaxFlowSolver(g)
    for u, v in pairs:
        tree_val, side = tree.query(u, v)
        direct = from_scaled(sol.solve(u, v), g.unit)
        recomputed = g.cut_weight(side)
        if tree_val.base != direct.base or recomputed.base != tree_val.base:
            click.echo(
                f"FAIL pair ({u + 1},{v + 1}): tree {tree_val}, "
                f"flow {direct}, bipartition {recomputed}")
            sys.exit(EXIT_VERIFY_FAIL)
    click.echo(f"pass: {len(pairs)} pairs verified")


@main.command()
@click.option("--family", type=click.Choice(["er"]), default="er")
@click.option("--sizes", default="128,256,512", help="comma-separated node counts")
@click.option("--p", "prob", type=float, default=0.05)
@click.option("--algos", default="classic,deterministic")
@click.option("--seed", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--jobs", type=int, default=1)
def bench(family, sizes, prob, algos, seed, out_path, jobs):
    """Benchmark builders over a graph family; CSV out."""
    seed = _seed_option(seed) or 0
    size_list = [int(s) for s in sizes.split(",") if s]
    algo_list = [a.strip() for a in algos.split(",") if a.strip()]
    for a in algo_list:
        if a not in ALGOS:
            click.echo(f"error: unknown algo {a}", err=True)
            sys.exit(EXIT_INPUT)

    def cell(args):
        n, algo = args
        g = families.er_connected(n, prob, seed=seed + n)
        config = EngineConfig(seed=seed)
        report: dict = {}
        t0 = time.perf_counter()
        tree = _build_tree(g, algo, seed, config, report)
        wall = round(1000 * (time.perf_counter() - t0), 3)
        # classic/gusfield make exactly n-1 solves on connected inputs; the
        # other builders report their own counts, so cells stay lock-free
        calls = report.get("flow_calls", g.n - 1)
        increments = 0
        for stage in report.get("stages", []):
            for rnd in stage.get("rounds", []):
                increments += rnd.get("lefty_increments", 0)
        return {
            "n": n, "m": g.edge_instances, "algo": algo,
            "maxflow_calls": calls, "lefty_increments": increments,
            "wall_ms": wall, "depth": report.get("depth", ""),
            "seed": seed,
        }

    cells = [(n, a) for n in size_list for a in algo_list]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(cell, cells))
    else:
        rows = [cell(c) for c in cells]
    fields = ["n", "m", "algo", "maxflow_calls", "lefty_increments",
              "wall_ms", "depth", "seed"]
    with open(out_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    click.echo(f"bench written to {out_path} ({len(rows)} cells, seed {seed})")


@main.command()
@click.argument("graph_path", type=click.Path(exists=True))
@click.argument("tree_path", type=click.Path(exists=True))
@click.option("--pivot", type=int, required=True, help="1-indexed pivot node")
@click.option("--w", "w_values", default=None, help="comma-separated thresholds")
@click.option("--out", "out_path", type=click.Path(), default=None)
def analyze(graph_path, tree_path, pivot, w_values, out_path):
    """Bag structure of the tree's cut-membership coarsening."""
    g = _load_graph(graph_path)
    try:
        with open(tree_path) as fh:
            tree = parse_tree(fh.read())
    except (OSError, TreeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    ws = [int(x) for x in w_values.split(",")] if w_values else None
    report = analyze_report(g, tree, pivot - 1, ws)
    text = json.dumps(report, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"report written to {out_path}")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
