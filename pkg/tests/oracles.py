"""Reference computations that share no code with the package.

Crossings are decided in exact rational arithmetic and angles are
computed one pair at a time with ``math``, so agreement with the
vectorized implementation is a genuine cross-check.
"""

import itertools
import math
from fractions import Fraction


def _orient(p, q, r):
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def exact_crossing_pairs(edges, coords):
    """Set of index pairs ``(i, j)``, ``i < j``, of edges that cross properly."""
    pts = [(Fraction(x), Fraction(y)) for x, y in coords]
    found = set()
    for i, j in itertools.combinations(range(len(edges)), 2):
        a, b = edges[i]
        c, d = edges[j]
        if len({a, b, c, d}) < 4:
            continue
        p1, p2, q1, q2 = pts[a], pts[b], pts[c], pts[d]
        if _orient(p1, p2, q1) * _orient(p1, p2, q2) < 0 and _orient(q1, q2, p1) * _orient(q1, q2, p2) < 0:
            found.add((i, j))
    return found


def acute_angle(u, v):
    a1 = math.atan2(u[1], u[0])
    a2 = math.atan2(v[1], v[0])
    t = abs(a1 - a2) % math.pi
    return min(t, math.pi - t)


def brute_crossing_resolution(edges, coords):
    best = None
    for i, j in exact_crossing_pairs(edges, coords):
        (a, b), (c, d) = edges[i], edges[j]
        u = (coords[b][0] - coords[a][0], coords[b][1] - coords[a][1])
        v = (coords[d][0] - coords[c][0], coords[d][1] - coords[c][1])
        ang = acute_angle(u, v)
        best = ang if best is None else min(best, ang)
    return best


def brute_angular_resolution(edges, coords):
    """Smallest angle between two edges at a common endpoint, over every pair."""
    incident = {}
    for a, b in edges:
        incident.setdefault(a, []).append(b)
        incident.setdefault(b, []).append(a)
    best = None
    for u, nbrs in incident.items():
        for v, w in itertools.combinations(nbrs, 2):
            d1 = math.atan2(coords[v][1] - coords[u][1], coords[v][0] - coords[u][0])
            d2 = math.atan2(coords[w][1] - coords[u][1], coords[w][0] - coords[u][0])
            t = abs(d1 - d2) % (2 * math.pi)
            t = min(t, 2 * math.pi - t)
            best = t if best is None else min(best, t)
    return best


def angle_at(center, p, q):
    """Counter-clockwise angle from ``p`` to ``q`` seen from ``center``, in [0, 2pi)."""
    a1 = math.atan2(p[1] - center[1], p[0] - center[0])
    a2 = math.atan2(q[1] - center[1], q[0] - center[0])
    return (a2 - a1) % (2 * math.pi)
