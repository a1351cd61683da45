"""Benchmark harness: every graph under every mode from one shared start."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .forces import MODES, ForceConfig, initial_layout, run
from .graph import Graph, parse_edge_list
from .metrics import min_defined, resolution_degrees

# ``initial`` is not a force mode: it records the shared starting drawing.
BENCH_MODES = ("initial",) + MODES


@dataclass
class BenchRecord:
    graph: str
    nodes: int
    edges: int
    mode: str
    iterations: int = 0
    runtime_ms: float = 0.0
    angular_deg: Optional[float] = None
    crossing_deg: Optional[float] = None
    total_deg: Optional[float] = None
    converged: bool = False
    error: str = ""


# graph,nodes,edges,mode,iterations,runtime_ms,angular_deg,crossing_deg,total_deg,converged,error
CSV_HEADER = tuple(f.name for f in fields(BenchRecord))


def _round(v: Optional[float]) -> Optional[float]:
    return None if v is None else round(v, 4)


def bench_graph(
    name: str,
    graph: Graph,
    modes: Sequence[str],
    seed: int = 42,
    max_iters: int = 5000,
    timing: bool = True,
    **overrides,
) -> List[BenchRecord]:
    """One record per mode, all runs starting from ``initial_layout(graph, seed)``."""
    records = []
    try:
        start = initial_layout(graph, seed)
    except Exception as exc:  # recorded, the bench keeps going
        return [BenchRecord(name, graph.n_nodes, graph.n_edges, m, error=f"init: {exc}") for m in modes]
    for mode in modes:
        rec = BenchRecord(name, graph.n_nodes, graph.n_edges, mode)
        t0 = time.perf_counter()
        try:
            if mode == "initial":
                coords = start.coords
            else:
                cfg = ForceConfig.for_mode(mode, max_iters=max_iters, jitter_seed=seed, **overrides)
                result = run(graph, start, cfg)
                coords = result.final_layout.coords
                rec.iterations = result.iterations
                rec.converged = result.converged
            ang, cr, _ = resolution_degrees(graph, coords)
            rec.angular_deg, rec.crossing_deg = _round(ang), _round(cr)
            rec.total_deg = _round(min_defined(ang, cr))
        except Exception as exc:
            rec.error = f"{type(exc).__name__}: {exc}"
        if timing:
            rec.runtime_ms = round((time.perf_counter() - t0) * 1000.0, 3)
        records.append(rec)
    return records


def load_graph_dir(directory: Union[str, Path]) -> List[Tuple[str, Union[Graph, Exception]]]:
    """``(name, graph)`` for every ``*.txt`` file, sorted; unparseable files yield the error."""
    out = []
    for p in sorted(Path(directory).glob("*.txt")):
        try:
            out.append((p.stem, parse_edge_list(p.read_bytes())))
        except Exception as exc:
            out.append((p.stem, exc))
    return out


def run_bench(
    graphs: Iterable[Tuple[str, Union[Graph, Exception]]],
    modes: Sequence[str] = ("initial", "mixed", "crossing-only", "angular-only"),
    seed: int = 42,
    max_iters: int = 5000,
    timing: bool = True,
    **overrides,
) -> List[BenchRecord]:
    for m in modes:
        if m not in BENCH_MODES:
            raise ValueError(f"unknown bench mode {m!r}; expected one of {', '.join(BENCH_MODES)}")
    records: List[BenchRecord] = []
    for name, graph in graphs:
        if isinstance(graph, Exception):
            records.extend(BenchRecord(name, 0, 0, m, error=f"parse: {graph}") for m in modes)
            continue
        records.extend(bench_graph(name, graph, modes, seed, max_iters, timing, **overrides))
    return records


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([_cell(v) for v in astuple(r)])
    return buf.getvalue()
