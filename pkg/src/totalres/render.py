"""Deterministic SVG output for drawings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .graph import Graph, Layout
from .metrics import ResolutionReport, total_resolution


@dataclass(frozen=True)
class SvgStyle:
    width_px: int = 600
    edge_color: str = "#444444"
    node_color: str = "#d62728"
    # Node radius and stroke width relative to the larger bounding-box side.
    node_radius: float = 0.012
    edge_width: float = 0.004
    annotate: bool = True


def _num(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _caption(report: Optional[ResolutionReport]) -> str:
    if report is None:
        return "angular resolution n/a, crossing resolution n/a, total resolution n/a"
    deg = report.to_json()

    def fmt(v):
        return "n/a" if v is None else f"{v:.2f}°"

    return (
        f"angular resolution {fmt(deg['angular_deg'])}, "
        f"crossing resolution {fmt(deg['crossing_deg'])}, "
        f"total resolution {fmt(deg['total_deg'])}"
    )


def render_svg(
    graph: Graph,
    layout: Layout,
    style: SvgStyle = SvgStyle(),
    report: Optional[ResolutionReport] = None,
) -> bytes:
    """Edges as ``line`` elements, nodes as ``circle`` elements, y axis pointing up.

    The viewBox is the bounding box grown by 5% of its larger side on
    every edge. ``report`` defaults to the drawing's own resolutions.
    """
    coords = np.asarray(layout.coords, dtype=float)
    if len(coords):
        # SVG's y axis points down; flip so counter-clockwise stays counter-clockwise.
        pts = np.column_stack([coords[:, 0], -coords[:, 1]])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1])) or 1.0
    else:
        pts = np.zeros((0, 2))
        lo, hi, span = np.zeros(2), np.ones(2), 1.0
    margin = 0.05 * span
    vx, vy = lo[0] - margin, lo[1] - margin
    vw = float(hi[0] - lo[0]) + 2 * margin
    vh = float(hi[1] - lo[1]) + 2 * margin
    height_px = max(1, round(style.width_px * vh / vw))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width_px}" height="{height_px}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">',
    ]
    if graph.n_edges:
        out.append(
            f'<g stroke="{style.edge_color}" stroke-width="{_num(style.edge_width * span)}" '
            'stroke-linecap="round">'
        )
        for a, b in graph.edges:
            out.append(
                f'<line x1="{_num(pts[a, 0])}" y1="{_num(pts[a, 1])}" '
                f'x2="{_num(pts[b, 0])}" y2="{_num(pts[b, 1])}"/>'
            )
        out.append("</g>")
    if graph.n_nodes:
        out.append(f'<g fill="{style.node_color}">')
        r = _num(style.node_radius * span)
        for u, (x, y) in zip(graph.nodes, pts):
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{r}"><title>{escape(u)}</title></circle>')
        out.append("</g>")
    if style.annotate:
        if report is None and graph.n_nodes:
            report = total_resolution(graph, layout)
        out.append(
            f'<text x="{_num(vx + 0.2 * margin)}" y="{_num(vy + vh - 0.25 * margin)}" '
            f'font-size="{_num(0.5 * margin)}" font-family="sans-serif">{escape(_caption(report))}</text>'
        )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
