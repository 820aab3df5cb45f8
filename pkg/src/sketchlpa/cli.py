"""Command-line front end: run, bench, and convert subcommands.

``run`` executes one label-propagation pass over a graph file and reports
quality, convergence, and memory figures as JSON, CSV, or text. ``bench``
repeats runs across selector variants and reports means plus the
modularity ratio against the exact baseline. ``convert`` rewrites a graph
file in canonical edge-list or MatrixMarket form.

Exit codes: 0 on success, 1 on usage or configuration errors, 2 on
runtime failures such as unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from .graph import Graph, GraphLoadError, load_graph, write_edgelist, write_matrix_market
from .lpa import LpaConfig, aux_memory_estimate, lpa_run
from .metrics import community_stats, modularity

SCHEMA_VERSION = 1

_CLI_FORMATS = {"mm": "matrix-market", "edgelist": "edge-list"}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this front end reserves
    2 for runtime failures, so usage errors are remapped to 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_engine_flags(p):
    p.add_argument("--k", type=int, default=8, metavar="SLOTS",
                   help="sketch slots per partial sketch (default 8)")
    p.add_argument("--rho", type=int, default=8, metavar="GAP",
                   help="gap between symmetry-breaking iterations (default 8)")
    p.add_argument("--tau", type=float, default=0.05, metavar="FRAC",
                   help="convergence tolerance on the changed fraction (default 0.05)")
    p.add_argument("--max-iters", type=int, default=20, metavar="ITERS",
                   help="iteration cap (default 20)")
    p.add_argument("--degree-threshold", type=int, default=128, metavar="DEG",
                   help="degree at which chunked processing starts (default 128)")
    p.add_argument("--groups", type=int, default=32, metavar="CHUNKS",
                   help="adjacency chunks per high-degree vertex (default 32)")
    p.add_argument("--scan", choices=["single", "double"], default="single",
                   help="take the sketch maximum directly, or re-count candidates exactly")
    p.add_argument("--workers", type=int, default=0, metavar="COUNT",
                   help="worker threads; 0 means sequential deterministic (default)")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sketchlpa",
                     description="Community detection by label propagation "
                                 "with bounded-memory label selection.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[], help="detect communities on one graph")
    run.add_argument("input", help="graph file")
    run.add_argument("--format", choices=sorted(_CLI_FORMATS),
                     help="input format (sniffed when omitted)")
    run.add_argument("--variant", choices=["exact", "bm", "mg"], default="mg")
    _add_engine_flags(run)
    run.add_argument("--out-labels", metavar="PATH",
                     help="write one 'vertex<TAB>label' line per vertex")
    run.add_argument("--report", choices=["json", "csv", "text"], default="text")
    run.add_argument("--seed-order", default="ascending", metavar="ORDER",
                     help="'ascending' or 'shuffled:SEED' vertex evaluation order")
    run.set_defaults(func=_cmd_run)

    bench = sub.add_parser("bench", help="compare variants on one graph")
    bench.add_argument("input", help="graph file")
    bench.add_argument("--format", choices=sorted(_CLI_FORMATS))
    bench.add_argument("--variants", default="exact,bm,mg", metavar="LIST",
                       help="comma-separated variants (default exact,bm,mg)")
    bench.add_argument("--repeats", type=int, default=5, metavar="COUNT")
    _add_engine_flags(bench)
    bench.add_argument("--report", choices=["json", "csv"], default="json")
    bench.set_defaults(func=_cmd_bench)

    conv = sub.add_parser("convert", help="rewrite a graph file canonically")
    conv.add_argument("input", help="graph file")
    conv.add_argument("--format", choices=sorted(_CLI_FORMATS),
                      help="input format (sniffed when omitted)")
    conv.add_argument("--to", choices=["edgelist", "mm"], required=True)
    conv.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    conv.set_defaults(func=_cmd_convert)
    return parser


def _engine_config(args) -> LpaConfig:
    return LpaConfig(
        variant=getattr(args, "variant", "mg"),
        scan_mode=args.scan,
        sketch_slots=args.k,
        pickless_gap=args.rho,
        tolerance=args.tau,
        max_iterations=args.max_iters,
        degree_threshold=args.degree_threshold,
        partial_groups=args.groups,
        worker_count=args.workers,
    )


def _parse_seed_order(text: str):
    """Returns None for ascending order or the RNG seed for shuffling."""
    if text == "ascending":
        return None
    if text.startswith("shuffled:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise ValueError(f"--seed-order must be 'ascending' or 'shuffled:SEED', got {text!r}")


def _load(args) -> Graph:
    fmt = _CLI_FORMATS[args.format] if args.format else None
    return load_graph(args.input, fmt)


def _config_dict(cfg: LpaConfig) -> dict:
    return {
        "variant": cfg.variant,
        "scan_mode": cfg.scan_mode,
        "sketch_slots": cfg.sketch_slots,
        "pickless_gap": cfg.pickless_gap,
        "tolerance": cfg.tolerance,
        "max_iterations": cfg.max_iterations,
        "degree_threshold": cfg.degree_threshold,
        "partial_groups": cfg.partial_groups,
        "worker_count": cfg.worker_count,
        "shared_sketch": cfg.shared_sketch,
    }


def _emit_run_report(report: dict, kind: str) -> str:
    if kind == "json":
        return json.dumps(report, indent=2) + "\n"
    if kind == "csv":
        flat = dict(report)
        flat["config"] = json.dumps(report["config"], sort_keys=True)
        flat["delta_history"] = ";".join(str(d) for d in report["delta_history"])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(flat))
        writer.writeheader()
        writer.writerow(flat)
        return buf.getvalue()
    lines = [f"graph: {report['graph_name']} "
             f"({report['num_vertices']} vertices, {report['num_arcs']} arcs)"]
    for key in ("variant", "iterations", "converged", "modularity",
                "num_communities", "wall_time_ms", "aux_bytes"):
        lines.append(f"{key}: {report[key]}")
    lines.append("delta_history: " + " ".join(str(d) for d in report["delta_history"]))
    lines.append("config: " + json.dumps(report["config"], sort_keys=True))
    lines.append(f"schema_version: {report['schema_version']}")
    return "\n".join(lines) + "\n"


def _cmd_run(args) -> int:
    cfg = _engine_config(args)
    try:
        cfg.validate()
        seed = _parse_seed_order(args.seed_order)
    except ValueError as exc:
        print(f"sketchlpa run: {exc}", file=sys.stderr)
        return 1
    try:
        g = _load(args)
        order = None
        if seed is not None:
            order = np.random.default_rng(seed).permutation(g.num_vertices)
        start = time.perf_counter()
        result = lpa_run(g, cfg, order=order)
        wall_ms = (time.perf_counter() - start) * 1e3
        q = modularity(g, result.labels)
        stats = community_stats(g, result.labels)
        if args.out_labels:
            with open(args.out_labels, "w") as f:
                for v, lab in enumerate(result.labels.tolist()):
                    f.write(f"{v}\t{lab}\n")
        report = {
            "schema_version": SCHEMA_VERSION,
            "graph_name": os.path.basename(args.input),
            "num_vertices": g.num_vertices,
            "num_arcs": g.num_arcs,
            "variant": cfg.variant,
            "config": _config_dict(cfg),
            "iterations": result.iterations,
            "converged": result.converged,
            "delta_history": list(result.delta_history),
            "modularity": q,
            "num_communities": stats.num_communities,
            "wall_time_ms": wall_ms,
            "aux_bytes": result.aux_bytes,
        }
        sys.stdout.write(_emit_run_report(report, args.report))
        return 0
    except (GraphLoadError, OSError, ValueError) as exc:
        print(f"sketchlpa run: {exc}", file=sys.stderr)
        return 2


def _cmd_bench(args) -> int:
    variants = [v.strip() for v in args.variants.split(",") if v.strip()]
    base = _engine_config(args)
    try:
        if not variants:
            raise ValueError("--variants must name at least one variant")
        if args.repeats < 1:
            raise ValueError("--repeats must be at least 1")
        configs = []
        for v in variants:
            cfg = LpaConfig(**{**_config_dict(base), "variant": v})
            cfg.validate()
            configs.append(cfg)
    except ValueError as exc:
        print(f"sketchlpa bench: {exc}", file=sys.stderr)
        return 1
    try:
        g = _load(args)
        results = []
        for cfg in configs:
            times, mods, iters, histories = [], [], [], []
            for _ in range(args.repeats):
                start = time.perf_counter()
                res = lpa_run(g, cfg)
                times.append((time.perf_counter() - start) * 1e3)
                mods.append(modularity(g, res.labels))
                iters.append(res.iterations)
                histories.append(list(res.delta_history))
            results.append({
                "variant": cfg.variant,
                "aux_bytes": aux_memory_estimate(g, cfg),
                "mean_wall_time_ms": sum(times) / len(times),
                "mean_modularity": sum(mods) / len(mods),
                "wall_times_ms": times,
                "modularities": mods,
                "iterations": iters,
                "delta_histories": histories,
            })
        exact = next((r for r in results if r["variant"] == "exact"), None)
        for r in results:
            if exact is None:
                ratio = None
            elif exact["mean_modularity"] != 0.0:
                ratio = r["mean_modularity"] / exact["mean_modularity"]
            elif r["mean_modularity"] == exact["mean_modularity"]:
                ratio = 1.0
            else:
                ratio = None
            r["modularity_ratio_vs_exact"] = ratio
        report = {
            "schema_version": SCHEMA_VERSION,
            "graph_name": os.path.basename(args.input),
            "num_vertices": g.num_vertices,
            "num_arcs": g.num_arcs,
            "repeats": args.repeats,
            "results": results,
        }
        if args.report == "json":
            sys.stdout.write(json.dumps(report, indent=2) + "\n")
        else:
            buf = io.StringIO()
            fields = ["graph_name", "num_vertices", "num_arcs", "repeats", "variant",
                      "aux_bytes", "mean_wall_time_ms", "mean_modularity",
                      "modularity_ratio_vs_exact", "wall_times_ms", "modularities",
                      "iterations", "delta_histories", "schema_version"]
            writer = csv.DictWriter(buf, fieldnames=fields)
            writer.writeheader()
            for r in results:
                row = dict(r)
                row["wall_times_ms"] = ";".join(f"{t:.6g}" for t in r["wall_times_ms"])
                row["modularities"] = ";".join(repr(m) for m in r["modularities"])
                row["iterations"] = ";".join(str(i) for i in r["iterations"])
                row["delta_histories"] = "|".join(
                    ",".join(str(d) for d in h) for h in r["delta_histories"]
                )
                row.update(graph_name=report["graph_name"],
                           num_vertices=g.num_vertices, num_arcs=g.num_arcs,
                           repeats=args.repeats, schema_version=SCHEMA_VERSION)
                writer.writerow(row)
            sys.stdout.write(buf.getvalue())
        return 0
    except (GraphLoadError, OSError, ValueError) as exc:
        print(f"sketchlpa bench: {exc}", file=sys.stderr)
        return 2


def _cmd_convert(args) -> int:
    try:
        g = _load(args)
        writer = write_edgelist if args.to == "edgelist" else write_matrix_market
        if args.out:
            with open(args.out, "w") as f:
                writer(g, f)
        else:
            writer(g, sys.stdout)
        return 0
    except (GraphLoadError, OSError, ValueError) as exc:
        print(f"sketchlpa convert: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
