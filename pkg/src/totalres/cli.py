"""Command line front end: ``totalres construct | layout | metrics | bench``.

Angles are printed in degrees. Exit status is 0 on success, 2 for
invalid input or parameters and 3 when a layout run diverges.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional

from .bench import BENCH_MODES, load_graph_dir, records_to_csv, run_bench
from .constructions import circular_complete, grid_snap, two_layer_bipartite
from .forces import MODES, ForceConfig, NumericalBlowupError, initial_layout, run
from .graph import (
    Graph,
    GraphParseError,
    Layout,
    LayoutError,
    parse_edge_list,
    parse_layout,
    random_layout,
    write_edge_list,
    write_layout,
)
from .metrics import find_overlaps, total_resolution
from .render import render_svg


class CliError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], data: bytes) -> None:
    if path:
        Path(path).write_bytes(data)


def _json(obj) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()


def _emit(graph: Graph, layout: Layout, args) -> dict:
    report = total_resolution(graph, layout)
    _write(args.out, write_layout(layout))
    _write(getattr(args, "edges_out", None), write_edge_list(graph))
    _write(args.svg, render_svg(graph, layout, report=report))
    payload = report.to_json()
    _write(args.metrics_out, _json(payload))
    return payload


def cmd_construct(args) -> int:
    if args.kind == "complete":
        if args.n is None or args.n < 3:
            raise CliError("complete drawings need --n >= 3")
        graph, layout = circular_complete(args.n, args.radius)
    else:
        if args.m is None or args.n is None:
            raise CliError("bipartite drawings need --m and --n")
        if min(args.m, args.n) < 2:
            raise CliError(
                "bipartite drawings need both sides >= 2; for a star use "
                "'construct complete' or run 'layout' on its edge list"
            )
        if args.grid:
            graph, grid = grid_snap(args.m, args.n)
            layout = grid.to_layout(graph)
        else:
            graph, layout, _ = two_layer_bipartite(args.m, args.n, args.height)
    sys.stdout.buffer.write(_json(_emit(graph, layout, args)))
    return 0


def _config(args) -> ForceConfig:
    overrides = {}
    for key in ("max_iters", "eps_deg", "step", "l_spring"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    overrides["jitter_seed"] = args.seed
    try:
        if args.config:
            text = _read(args.config).decode()
            if args.mode:
                overrides["mode"] = args.mode
            return ForceConfig.from_text(text, **overrides)
        return ForceConfig.for_mode(args.mode or "mixed", **overrides)
    except ValueError as exc:
        raise CliError(f"bad force configuration: {exc}") from None


def _history_csv(history) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["iteration", "angular_deg", "crossing_deg"])
    for it, ang, cr in history:
        w.writerow([it, "" if ang is None else round(ang, 4), "" if cr is None else round(cr, 4)])
    return buf.getvalue().encode()


def cmd_layout(args) -> int:
    graph = parse_edge_list(_read(args.input))
    cfg = _config(args)
    if args.init:
        start = parse_layout(_read(args.init), graph)
    elif args.init_method == "random":
        start = random_layout(graph, args.seed)
    else:
        start = initial_layout(graph, args.seed)
    result = run(graph, start, cfg)
    _write(args.history_out, _history_csv(result.history))
    payload = _emit(graph, result.final_layout, args)
    sys.stdout.buffer.write(_json(payload))
    print(
        f"{result.iterations} iterations, {'converged' if result.converged else 'stopped at the cap'}",
        file=sys.stderr,
    )
    return 0


def cmd_metrics(args) -> int:
    graph = parse_edge_list(_read(args.input))
    layout = parse_layout(_read(args.layout), graph)
    overlaps = find_overlaps(graph, layout)
    if overlaps:
        (a, b), (c, d) = overlaps[0]
        raise CliError(f"degenerate drawing: edges {a}-{b} and {c}-{d} overlap collinearly")
    payload = total_resolution(graph, layout).to_json()
    _write(args.metrics_out, _json(payload))
    sys.stdout.buffer.write(_json(payload))
    return 0


def cmd_bench(args) -> int:
    directory = Path(args.input)
    if not directory.is_dir():
        raise CliError(f"{directory} is not a directory")
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    bad = [m for m in modes if m not in BENCH_MODES]
    if bad:
        raise CliError(f"unknown mode(s) {', '.join(bad)}; choose from {', '.join(BENCH_MODES)}")
    records = run_bench(
        load_graph_dir(directory), modes, seed=args.seed, max_iters=args.max_iters, timing=not args.no_timing
    )
    text = records_to_csv(records)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="totalres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--out", help="write the final layout (id x y per line)")
        p.add_argument("--svg", help="write an SVG rendering")
        p.add_argument("--metrics-out", help="write the JSON resolution report")

    p = sub.add_parser("construct", help="closed-form optimal drawings")
    p.add_argument("kind", choices=("complete", "bipartite"))
    p.add_argument("--n", type=int, help="K_n size, or second side of K_{m,n}")
    p.add_argument("--m", type=int, help="first side of K_{m,n}")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--height", type=float, default=1.0, help="square side of the two-layer drawing")
    p.add_argument("--grid", action="store_true", help="snap the bipartite drawing to the integer grid")
    p.add_argument("--edges-out", help="write the graph as an edge list")
    outputs(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("layout", help="force-directed total-resolution layout")
    p.add_argument("--input", required=True, help="edge list file")
    p.add_argument("--init", help="starting layout file")
    p.add_argument(
        "--init-method", choices=("eades", "random"), default="eades",
        help="start used without --init: seeded random positions, optionally relaxed by the Eades model",
    )
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--eps-deg", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--l-spring", type=float)
    p.add_argument("--config", help="key=value force configuration file")
    p.add_argument("--history-out", help="write per-iteration resolutions as CSV")
    outputs(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("metrics", help="resolution report of an existing drawing")
    p.add_argument("--input", required=True, help="edge list file")
    p.add_argument("--layout", required=True, help="layout file")
    p.add_argument("--metrics-out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="run every graph in a directory under several modes")
    p.add_argument("--input", required=True, help="directory of *.txt edge lists")
    p.add_argument("--modes", default="initial,mixed,crossing-only,angular-only")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--no-timing", action="store_true", help="write runtime_ms as 0 for reproducible output")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphParseError, LayoutError) as exc:
        print(f"totalres: error: {exc}", file=sys.stderr)
        return 2
    except NumericalBlowupError as exc:
        print(f"totalres: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
