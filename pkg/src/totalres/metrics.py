"""Angular, crossing and total resolution of straight-line drawings.

All angles are radians here; conversion to degrees happens at the CLI
and report-serialization boundary only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from .graph import Graph, Layout, check_layout

TWO_PI = 2.0 * math.pi

EdgeId = Tuple[str, str]

# Edge pairs handled per vectorized block.
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Crossing:
    edge_a: EdgeId
    edge_b: EdgeId
    point: Tuple[float, float]
    acute_angle: float


@dataclass(frozen=True)
class ResolutionReport:
    angular: Optional[float]
    crossing: Optional[float]
    total: Optional[float]
    angular_witness: Optional[Tuple[str, Tuple[EdgeId, EdgeId]]]
    crossing_witness: Optional[Crossing]
    crossing_count: int

    def to_json(self) -> dict:
        """Degrees rounded to 4 decimals; absent resolutions become ``None``."""
        return {
            "angular_deg": to_degrees(self.angular),
            "crossing_deg": to_degrees(self.crossing),
            "total_deg": to_degrees(self.total),
            "crossings": self.crossing_count,
        }


def to_degrees(rad: Optional[float], ndigits: int = 4) -> Optional[float]:
    if rad is None:
        return None
    return round(math.degrees(rad), ndigits)


def min_defined(*values: Optional[float]) -> Optional[float]:
    defined = [v for v in values if v is not None]
    return min(defined) if defined else None


class Topology:
    """Index arrays derived once per graph and reused on every layout."""

    def __init__(self, graph: Graph):
        self.n = graph.n_nodes
        self.edges = graph.edge_array()
        m = len(self.edges)
        ii, jj = _disjoint_pairs(self.edges)
        self.pair_a = ii
        self.pair_b = jj
        e32 = self.edges.astype(np.int32)
        self.pa0, self.pa1 = e32[ii, 0], e32[ii, 1]
        self.pb0, self.pb1 = e32[jj, 0], e32[jj, 1]
        # Directed incidences (u, v), one per edge end.
        self.inc_u = np.concatenate([self.edges[:, 0], self.edges[:, 1]]) if m else np.zeros(0, np.intp)
        self.inc_v = np.concatenate([self.edges[:, 1], self.edges[:, 0]]) if m else np.zeros(0, np.intp)
        self.inc_edge = np.concatenate([np.arange(m), np.arange(m)]) if m else np.zeros(0, np.intp)
        self.degree = np.bincount(self.inc_u, minlength=self.n)
        self.start = np.concatenate([[0], np.cumsum(self.degree)[:-1]]) if self.n else np.zeros(0, np.intp)


def _disjoint_pairs(edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` of edges without a shared endpoint, built in row blocks."""
    m = len(edges)
    out_i, out_j = [np.zeros(0, np.intp)], [np.zeros(0, np.intp)]
    rows = max(1, _CHUNK // max(m, 1))
    for lo in range(0, m, rows):
        ii, jj = np.nonzero(np.arange(lo, min(lo + rows, m))[:, None] < np.arange(m)[None, :])
        ii += lo
        ea, eb = edges[ii], edges[jj]
        disjoint = (
            (ea[:, 0] != eb[:, 0])
            & (ea[:, 0] != eb[:, 1])
            & (ea[:, 1] != eb[:, 0])
            & (ea[:, 1] != eb[:, 1])
        )
        out_i.append(ii[disjoint])
        out_j.append(jj[disjoint])
    # int32 halves the footprint of the pair arrays, the largest per-graph cost.
    return np.concatenate(out_i).astype(np.int32), np.concatenate(out_j).astype(np.int32)


@lru_cache(maxsize=128)
def topology(graph: Graph) -> Topology:
    return Topology(graph)


def _orient(px, py, qx, qy, rx, ry):
    return np.sign((qx - px) * (ry - py) - (qy - py) * (rx - px))


def crossing_arrays(topo: Topology, coords: np.ndarray):
    """Vectorized proper-crossing scan over all non-adjacent edge pairs.

    Returns ``(edge_a, edge_b, points, acute)`` for the crossing pairs in
    lexicographic edge-index order.
    """
    x = np.ascontiguousarray(coords[:, 0])
    y = np.ascontiguousarray(coords[:, 1])
    total = len(topo.pair_a)
    if total <= _CHUNK:
        return _scan(topo, x, y, slice(None))
    # Large graphs: bound the temporaries by scanning in blocks.
    parts = [_scan(topo, x, y, slice(k, k + _CHUNK)) for k in range(0, total, _CHUNK)]
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(4))


def _scan(topo: Topology, x: np.ndarray, y: np.ndarray, sl: slice):
    pa0, pa1, pb0, pb1 = topo.pa0[sl], topo.pa1[sl], topo.pb0[sl], topo.pb1[sl]
    p1x, p1y, p2x, p2y = x[pa0], y[pa0], x[pa1], y[pa1]
    q1x, q1y, q2x, q2y = x[pb0], y[pb0], x[pb1], y[pb1]
    o1 = _orient(p1x, p1y, p2x, p2y, q1x, q1y)
    o2 = _orient(p1x, p1y, p2x, p2y, q2x, q2y)
    hit = np.nonzero(o1 * o2 < 0)[0]
    p1x, p1y, p2x, p2y = p1x[hit], p1y[hit], p2x[hit], p2y[hit]
    q1x, q1y, q2x, q2y = q1x[hit], q1y[hit], q2x[hit], q2y[hit]
    o3 = _orient(q1x, q1y, q2x, q2y, p1x, p1y)
    o4 = _orient(q1x, q1y, q2x, q2y, p2x, p2y)
    keep = o3 * o4 < 0
    hit = hit[keep]
    p1x, p1y, p2x, p2y = p1x[keep], p1y[keep], p2x[keep], p2y[keep]
    q1x, q1y, q2x, q2y = q1x[keep], q1y[keep], q2x[keep], q2y[keep]
    rx, ry = p2x - p1x, p2y - p1y
    sx, sy = q2x - q1x, q2y - q1y
    denom = rx * sy - ry * sx
    t = ((q1x - p1x) * sy - (q1y - p1y) * sx) / denom
    t = np.clip(t, 0.0, 1.0)
    points = np.stack([p1x + t * rx, p1y + t * ry], axis=1)
    theta = np.arctan2(np.abs(denom), rx * sx + ry * sy)
    acute = np.minimum(theta, math.pi - theta)
    return topo.pair_a[sl][hit], topo.pair_b[sl][hit], points, acute


def cyclic_order(topo: Topology, coords: np.ndarray):
    """Sort every node's incident edges counter-clockwise.

    Returns ``(order, nxt, gaps)``: ``order`` permutes the incidence arrays
    so each node's incidences are contiguous and sorted by direction angle;
    ``nxt[k]`` is the position of the counter-clockwise successor of
    position ``k``; ``gaps[k]`` is the angle from ``k`` to ``nxt[k]``.
    Only positions at nodes of degree >= 2 are meaningful.
    """
    d = coords[topo.inc_v] - coords[topo.inc_u]
    ang = np.arctan2(d[:, 1], d[:, 0])
    order = np.lexsort((ang, topo.inc_u))
    u_sorted = topo.inc_u[order]
    start = topo.start[u_sorted]
    size = topo.degree[u_sorted]
    k = np.arange(len(order))
    nxt = start + (k - start + 1) % np.maximum(size, 1)
    ang_sorted = ang[order]
    gaps = np.mod(ang_sorted[nxt] - ang_sorted, TWO_PI)
    return order, nxt, gaps


def find_crossings(graph: Graph, layout: Layout) -> List[Crossing]:
    """All proper crossings between non-adjacent edges, ordered by edge indices."""
    check_layout(graph, layout)
    ia, ib, pts, acute = crossing_arrays(topology(graph), layout.coords)
    ids = graph.edge_ids()
    return [
        Crossing(ids[a], ids[b], (float(p[0]), float(p[1])), float(t))
        for a, b, p, t in zip(ia.tolist(), ib.tolist(), pts, acute.tolist())
    ]


def _angular(graph: Graph, coords: np.ndarray):
    topo = topology(graph)
    if not len(topo.inc_u):
        return None, None
    order, nxt, gaps = cyclic_order(topo, coords)
    valid = topo.degree[topo.inc_u[order]] >= 2
    if not valid.any():
        return None, None
    k = int(np.argmin(np.where(valid, gaps, np.inf)))
    ids = graph.edge_ids()
    u = graph.nodes[int(topo.inc_u[order[k]])]
    witness = (u, (ids[int(topo.inc_edge[order[k]])], ids[int(topo.inc_edge[order[nxt[k]]])]))
    return float(gaps[k]), witness


def angular_resolution(graph: Graph, layout: Layout) -> Optional[float]:
    """Smallest angle between cyclically consecutive edges at any node of degree >= 2."""
    check_layout(graph, layout)
    return _angular(graph, layout.coords)[0]


def crossing_resolution(graph: Graph, layout: Layout) -> Optional[float]:
    """Smallest acute crossing angle, or ``None`` for a plane drawing."""
    check_layout(graph, layout)
    acute = crossing_arrays(topology(graph), layout.coords)[3]
    return float(acute.min()) if len(acute) else None


def resolution_degrees(graph: Graph, coords: np.ndarray) -> Tuple[Optional[float], Optional[float], int]:
    """Fast ``(angular_deg, crossing_deg, crossing_count)`` without witnesses or validation."""
    topo = topology(graph)
    ang = None
    if len(topo.inc_u):
        order, _, gaps = cyclic_order(topo, coords)
        valid = topo.degree[topo.inc_u[order]] >= 2
        if valid.any():
            ang = math.degrees(float(gaps[valid].min()))
    acute = crossing_arrays(topo, coords)[3]
    cr = math.degrees(float(acute.min())) if len(acute) else None
    return ang, cr, len(acute)


def total_resolution(graph: Graph, layout: Layout) -> ResolutionReport:
    check_layout(graph, layout)
    angular, a_witness = _angular(graph, layout.coords)
    crossings = find_crossings(graph, layout)
    c_witness = min(crossings, key=lambda c: c.acute_angle) if crossings else None
    crossing = c_witness.acute_angle if c_witness else None
    return ResolutionReport(
        angular=angular,
        crossing=crossing,
        total=min_defined(angular, crossing),
        angular_witness=a_witness,
        crossing_witness=c_witness,
        crossing_count=len(crossings),
    )


def find_overlaps(graph: Graph, layout: Layout) -> List[Tuple[EdgeId, EdgeId]]:
    """Edge pairs that are collinear and share more than a single point."""
    coords = layout.coords
    ids = graph.edge_ids()
    out = []
    edges = graph.edges
    for i in range(len(edges)):
        p1, p2 = coords[edges[i][0]], coords[edges[i][1]]
        r = p2 - p1
        rr = float(r @ r)
        for j in range(i + 1, len(edges)):
            q1, q2 = coords[edges[j][0]], coords[edges[j][1]]
            if (r[0] * (q1[1] - p1[1]) - r[1] * (q1[0] - p1[0])) != 0:
                continue
            if (r[0] * (q2[1] - p1[1]) - r[1] * (q2[0] - p1[0])) != 0:
                continue
            t1, t2 = sorted((float((q1 - p1) @ r) / rr, float((q2 - p1) @ r) / rr))
            if min(t2, 1.0) - max(t1, 0.0) > 0.0:
                out.append((ids[i], ids[j]))
    return out
