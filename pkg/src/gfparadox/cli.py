"""Command-line interface.

Every subcommand writes its data files plus ``manifest.json`` (config,
seed, input checksums, library version, timestamp) into ``--out``.  Data
files depend only on the inputs and flags; the timestamp lives in the
manifest alone.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import platform
import re
import secrets
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import GFPError
from .formats import (ensure_dir, read_attributes, read_edge_list, write_attributes,
                      write_ccdf_csv, write_edge_list, write_grid_csv, write_groups_csv,
                      write_report_json, write_summary_csv)
from .graph import build_graph, degree_table, induced_subgraph, validate
from .ingest import load_records, project_coauthorship
from .metrics import evaluate_nodes, gfp_report, paradox_probability_grid
from .sampling import group_summary, sample_groups, snowball_sample
from .synthesis import SynthesisSpec, attribute_name, generate_graph, synthesize_correlated

RANDOMIZED = {"sample", "snowball", "synth", "gen"}


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


class Run:
    """Bookkeeping shared by all subcommands."""

    def __init__(self, args):
        self.args = args
        self.out = ensure_dir(args.out)
        self.inputs = {}
        self.outputs = []

    def input(self, path):
        self.inputs[str(path)] = _sha256(path)
        return path

    def output(self, name) -> Path:
        self.outputs.append(name)
        return self.out / name

    def load_graph(self):
        return build_graph(read_edge_list(self.input(self.args.edges)))

    def load_attrs(self, graph):
        tables = {"degree": degree_table(graph)}
        if getattr(self.args, "attrs", None):
            tables.update(read_attributes(self.input(self.args.attrs), graph))
        validate(graph, tables)
        return tables

    def write_manifest(self):
        config = {k: v for k, v in vars(self.args).items() if k != "func"}
        manifest = {
            "command": self.args.command,
            "config": config,
            "seed": getattr(self.args, "seed", None),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "version": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
            "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        with open(self.out / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")


def _select(tables, names, default_all=True):
    if not names:
        return list(tables.values()) if default_all else []
    missing = [n for n in names if n not in tables]
    if missing:
        raise GFPError(f"unknown characteristic(s): {', '.join(missing)}; "
                       f"available: {', '.join(tables)}")
    return [tables[n] for n in names]


def cmd_build(run: Run):
    rejected = []
    records = load_records(run.input(run.args.records), rejected=rejected)
    net = project_coauthorship(records)
    write_edge_list(run.output("edges.txt"), net.graph)
    write_attributes(run.output("attributes.txt"), net.graph, net.attributes.values())
    write_report_json(run.output("build_report.json"), {
        "n_records": len(records),
        "n_rejected_lines": len(rejected),
        "rejected_lines": [ln for ln, _ in rejected],
        "n_skipped_records": net.n_skipped,
        "node_count": net.graph.node_count,
        "edge_count": net.graph.edge_count,
        "n_isolated": net.graph.n_isolated,
    })


def _graph_extra(graph):
    return {"edge_count": graph.edge_count, "n_self_loops_dropped": graph.n_self_loops,
            "n_duplicates_dropped": graph.n_duplicates}


def cmd_metrics(run: Run):
    graph = run.load_graph()
    tables = run.load_attrs(graph)
    for x in _select(tables, run.args.x):
        report = gfp_report(graph, x, threads=run.args.threads)
        write_report_json(run.output(f"report_{_safe(x.name)}.json"), report,
                          **_graph_extra(graph))


def cmd_grid(run: Run):
    graph = run.load_graph()
    tables = run.load_attrs(graph)
    for x in _select(tables, run.args.x):
        ev = evaluate_nodes(graph, x, threads=run.args.threads)
        grid = paradox_probability_grid(graph, x, run.args.bins, run.args.bins, evaluation=ev)
        write_grid_csv(run.output(f"grid_{_safe(x.name)}.csv"), grid)


def cmd_sample(run: Run):
    graph = run.load_graph()
    tables = run.load_attrs(graph)
    for x in _select(tables, run.args.x):
        groups = sample_groups(graph, x, run.args.size, run.args.seed)
        tag = _safe(x.name)
        write_groups_csv(run.output(f"groups_{tag}.csv"), graph, groups, x)
        summaries = group_summary(groups, x, include_population=True)
        write_summary_csv(run.output(f"summary_{tag}.csv"), summaries)
        write_ccdf_csv(run.output(f"ccdf_{tag}.csv"), summaries)


def cmd_snowball(run: Run):
    graph = run.load_graph()
    start = graph.index_of(run.args.start)
    nodes = snowball_sample(graph, start, run.args.size, seed=run.args.seed)
    sub = induced_subgraph(graph, nodes)
    write_edge_list(run.output("snowball_edges.txt"), sub)
    with open(run.output("snowball_nodes.txt"), "w", encoding="utf-8") as fh:
        fh.writelines(f"{v}\n" for v in graph.node_ids[nodes].tolist())


def cmd_synth(run: Run):
    graph = run.load_graph()
    tables = run.load_attrs(graph)
    spec = SynthesisSpec(run.args.rho, run.args.seed, run.args.source)
    x = synthesize_correlated(graph, spec, tables)
    write_attributes(run.output(f"{attribute_name(spec)}.txt"), graph, [x])


def cmd_gen(run: Run):
    a = run.args
    params = {"n": a.n, "m": a.m, "p": a.p, "k": a.k}
    if a.model in ("configuration", "config"):
        if not a.degrees_from:
            raise GFPError("configuration model needs --degrees-from EDGEFILE")
        source = build_graph(read_edge_list(run.input(a.degrees_from)))
        params["degrees"] = source.degrees
    params = {k: v for k, v in params.items() if v is not None}
    graph = generate_graph(a.model, params, a.seed)
    write_edge_list(run.output("edges.txt"), graph)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfparadox",
        description="Generalized friendship paradox statistics and sampling.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker cap")
        if name in RANDOMIZED:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (generated and recorded if omitted)")
        return p

    p = add("build", cmd_build, "project publication records onto a coauthorship network")
    p.add_argument("--records", required=True)

    for name, func, help_ in (("metrics", cmd_metrics, "paradox report per characteristic"),
                              ("grid", cmd_grid, "binned h(k, x) table")):
        p = add(name, func, help_)
        p.add_argument("--edges", required=True)
        p.add_argument("--attrs")
        p.add_argument("--x", action="append", help="characteristic (repeatable); "
                       "'degree' is always available")
        if name == "grid":
            p.add_argument("--bins", choices=("log2", "unit"), default="log2")

    p = add("sample", cmd_sample, "control / friend / biased groups")
    p.add_argument("--edges", required=True)
    p.add_argument("--attrs")
    p.add_argument("--x", action="append")
    p.add_argument("--size", type=int, required=True)

    p = add("snowball", cmd_snowball, "breadth-first subgraph sample")
    p.add_argument("--edges", required=True)
    p.add_argument("--start", type=int, required=True, help="original id of the seed node")
    p.add_argument("--size", type=int, required=True, help="maximum number of nodes")

    p = add("synth", cmd_synth, "characteristic with controlled degree correlation")
    p.add_argument("--edges", required=True)
    p.add_argument("--attrs")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--source", default="degree")

    p = add("gen", cmd_gen, "random graph")
    p.add_argument("--model", required=True,
                   choices=("erdos_renyi", "er", "barabasi_albert", "ba",
                            "configuration", "config", "ring"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--degrees-from", help="edge file whose degree sequence to reuse")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.command in RANDOMIZED and args.seed is None:
        args.seed = secrets.randbits(32)
    try:
        run = Run(args)
        args.func(run)
        run.write_manifest()
    except (GFPError, OSError) as exc:
        print(f"gfparadox {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
