"""Closed-form drawings of complete and complete bipartite graphs.

``circular_complete`` places K_n on a regular polygon. ``two_layer_bipartite``
draws K_{m,n} inside an axis-aligned square of side ``H`` with one class
on the top side and the other on the bottom side, node positions fixed by
fans of rays that split a 45 degree corner angle evenly.
``grid_snap`` moves that drawing onto the integer grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .graph import Graph, GridLayout, Layout

# Float noise tolerated before a coordinate is treated as the nearby integer.
_SNAP_TOL = 1e-9


@dataclass(frozen=True)
class BipartiteConstructionTrace:
    """Quantities of the top-side fan, for checking the construction.

    ``fan_step`` is the angle between consecutive rays of the fan that
    places the top nodes and ``side`` is the square's side length.
    ``gaps[i]`` is the horizontal distance between top nodes ``i+1`` and
    ``i+2`` (1-based, counted from the top-right corner); ``fan_angles[i]``
    is the angle at the bottom-left corner between the rays to consecutive
    top nodes, starting from the left end.
    """

    fan_step: float
    side: float
    gaps: Tuple[float, ...]
    fan_angles: Tuple[float, ...]
    swapped: bool = False


def circular_complete(n: int, r: float = 1.0) -> Tuple[Graph, Layout]:
    """K_n with node ``k`` at angle ``2*pi*k/n`` on a circle of radius ``r``."""
    if n < 3:
        raise ValueError(f"circular_complete needs n >= 3, got {n}")
    if not r > 0:
        raise ValueError("radius must be positive")
    nodes = tuple(f"u{k}" for k in range(n))
    edges = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    coords = [(r * math.cos(2 * math.pi * k / n), r * math.sin(2 * math.pi * k / n)) for k in range(n)]
    return Graph(nodes, edges), Layout(nodes, coords)


def _top_offsets(k: int, H: float) -> List[float]:
    """x-coordinates of ``k`` top nodes, right to left, for a fan of angle pi/(4(k-1))."""
    phi = math.pi / (4 * (k - 1))
    xs = [H - H * math.tan(i * phi) for i in range(k)]
    # tan(pi/4) is not exactly 1 in floating point.
    xs[-1] = 0.0
    return xs


def _bottom_offsets(k: int, H: float) -> List[float]:
    psi = math.pi / (4 * (k - 1))
    xs = [H * math.tan(j * psi) for j in range(k)]
    xs[-1] = H
    return xs


def two_layer_bipartite(m: int, n: int, H: float = 1.0) -> Tuple[Graph, Layout, BipartiteConstructionTrace]:
    """Two-layer drawing of K_{m,n} with total resolution Theta(1/max(m, n)).

    Nodes ``a1..am`` form the first class and ``b1..bn`` the second. The
    larger class goes on the top side; when ``m < n`` the classes swap
    sides and ``trace.swapped`` is set.
    """
    if m < 2 or n < 2:
        raise ValueError(
            f"two_layer_bipartite needs both sides >= 2, got m={m}, n={n}; "
            "draw stars with circular_complete or the force engine instead"
        )
    if not H > 0:
        raise ValueError("H must be positive")
    swapped = m < n
    big, small = (n, m) if swapped else (m, n)
    top_x = _top_offsets(big, H)
    bottom_x = _bottom_offsets(small, H)

    a_ids = [f"a{i}" for i in range(1, m + 1)]
    b_ids = [f"b{j}" for j in range(1, n + 1)]
    top_ids, bottom_ids = (b_ids, a_ids) if swapped else (a_ids, b_ids)
    pos = {u: (x, H) for u, x in zip(top_ids, top_x)}
    pos.update({u: (x, 0.0) for u, x in zip(bottom_ids, bottom_x)})

    nodes = tuple(a_ids + b_ids)
    edges = tuple((i, m + j) for i in range(m) for j in range(n))
    graph = Graph(nodes, edges)
    layout = Layout.from_mapping(graph, pos)

    phi = math.pi / (4 * (big - 1))
    gaps = tuple(top_x[i] - top_x[i + 1] for i in range(big - 1))
    # Ray angles from the bottom-left corner, measured from the vertical,
    # walking the top nodes left to right.
    ray = [math.atan2(x, H) for x in reversed(top_x)]
    fan = tuple(ray[i + 1] - ray[i] for i in range(big - 1))
    return graph, layout, BipartiteConstructionTrace(phi, H, gaps, fan, swapped)


def _snap_floor(v: float) -> int:
    r = round(v)
    if abs(v - r) <= _SNAP_TOL:
        return int(r)
    return math.floor(v)


def _snap_ceil(v: float) -> int:
    r = round(v)
    if abs(v - r) <= _SNAP_TOL:
        return int(r)
    return math.ceil(v)


def grid_snap(m: int, n: int) -> Tuple[Graph, GridLayout]:
    """Integer-coordinate variant with area O(max(m, n)^2).

    The two-layer drawing is built with side ``1/tan(fan_step)`` so the first
    top gap is exactly one unit, the top layer is lifted to ``ceil(H)``
    and every x-coordinate is floored.
    """
    big = max(m, n)
    if min(m, n) < 2:
        raise ValueError(f"grid_snap needs both sides >= 2, got m={m}, n={n}")
    H = 1.0 / math.tan(math.pi / (4 * (big - 1)))
    graph, layout, _ = two_layer_bipartite(m, n, H)
    top = _snap_ceil(H)
    positions = {}
    for u, (x, y) in layout.items():
        positions[u] = (_snap_floor(x), top if y > 0 else 0)
    return graph, GridLayout(positions)
