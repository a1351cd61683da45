"""Plain 2-D vector and segment primitives.

Points and vectors are ``Vec2`` named tuples; every function also accepts
any length-2 sequence of floats.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Sequence

TWO_PI = 2.0 * math.pi


class DegenerateGeometryError(ValueError):
    """Raised when a primitive is asked about a zero-length or undefined direction."""


class Vec2(NamedTuple):
    x: float
    y: float


# A point is just a position vector.
Point2 = Vec2


def _norm(x: float, y: float) -> float:
    return math.hypot(x, y)


def unit(v: Sequence[float]) -> Vec2:
    n = _norm(v[0], v[1])
    if n == 0.0:
        raise DegenerateGeometryError("cannot normalize the zero vector")
    return Vec2(v[0] / n, v[1] / n)


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    return _norm(b[0] - a[0], b[1] - a[1])


def unit_from_to(a: Sequence[float], b: Sequence[float]) -> Vec2:
    """Unit vector pointing from ``a`` to ``b``."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0.0 and dy == 0.0:
        raise DegenerateGeometryError(f"coincident points {tuple(a)}")
    return unit((dx, dy))


def bisector(a: Sequence[float], c: Sequence[float]) -> Vec2:
    """Unit vector along ``a/|a| + c/|c|``.

    For two directions less than pi apart this halves the angle between
    them. Exactly opposite directions have no bisector and raise
    ``DegenerateGeometryError``.
    """
    ua, uc = unit(a), unit(c)
    sx, sy = ua.x + uc.x, ua.y + uc.y
    if _norm(sx, sy) <= 1e-15:
        raise DegenerateGeometryError("bisector of opposite directions is undefined")
    return unit((sx, sy))


def perp(b: Sequence[float]) -> Vec2:
    """Unit vector obtained by a counter-clockwise quarter turn of ``b``."""
    ub = unit(b)
    return Vec2(-ub.y, ub.x)


def cross(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[0] + a[1] * b[1]


def orientation(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> int:
    """Sign of the turn p -> q -> r: +1 left, -1 right, 0 collinear."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def segment_intersection(
    s1: Sequence[Sequence[float]], s2: Sequence[Sequence[float]]
) -> Optional[Vec2]:
    """Proper crossing point of two segments, or ``None``.

    Only transversal crossings of the open segments count: touching,
    shared endpoints and collinear overlap all return ``None``.
    """
    (p1, p2), (q1, q2) = s1, s2
    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)
    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)
    if o1 * o2 >= 0 or o3 * o4 >= 0:
        return None
    # Solve p1 + t (p2 - p1) = q1 + s (q2 - q1).
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    denom = rx * sy - ry * sx
    t = ((q1[0] - p1[0]) * sy - (q1[1] - p1[1]) * sx) / denom
    t = min(max(t, 0.0), 1.0)
    return Vec2(p1[0] + t * rx, p1[1] + t * ry)


def ccw_angle(frm: Sequence[float], to: Sequence[float]) -> float:
    """Counter-clockwise rotation in ``[0, 2*pi)`` taking ``frm`` onto ``to``."""
    if (frm[0] == 0.0 and frm[1] == 0.0) or (to[0] == 0.0 and to[1] == 0.0):
        raise DegenerateGeometryError("angle with the zero vector")
    ang = math.atan2(cross(frm, to), dot(frm, to))
    if ang < 0.0:
        ang += TWO_PI
    if ang >= TWO_PI:
        ang = 0.0
    return ang


def acute_between_lines(a: Sequence[float], b: Sequence[float]) -> float:
    """Angle in ``[0, pi/2]`` between the undirected lines spanned by ``a`` and ``b``."""
    if (a[0] == 0.0 and a[1] == 0.0) or (b[0] == 0.0 and b[1] == 0.0):
        raise DegenerateGeometryError("angle with the zero vector")
    theta = math.atan2(abs(cross(a, b)), dot(a, b))
    return min(theta, math.pi - theta)
