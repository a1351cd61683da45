"""Force-directed refinement towards high angular and crossing resolution.

Three force families act on a drawing:

* edge springs with logarithmic strength pulling every edge to a natural
  length;
* crossing forces: for every proper crossing, springs and angle forces
  between the four edge endpoints that are consecutive around the
  crossing point, pushing the crossing towards a right angle;
* angular forces: for every node of degree d > 1, springs and angle
  forces between the far ends of cyclically consecutive incident edges,
  pushing each gap towards 2*pi/d.

Angle forces act perpendicular to the bisector of the angle they
correct, with magnitude ``|target - theta| / theta`` clamped at
``MAGNITUDE_CAP``.

The scalar functions (``spring_force`` and friends) document the force
laws one pair at a time. ``accumulate_forces`` / ``step`` / ``run``
evaluate the same laws vectorized over the whole graph.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import TWO_PI, Vec2, bisector, ccw_angle, cross, distance, perp, unit_from_to
from .graph import Graph, Layout, check_layout, coincident_pairs, random_layout
from .metrics import Topology, crossing_arrays, cyclic_order, topology

HALF_PI = 0.5 * math.pi
MAGNITUDE_CAP = 1e3

MODES = ("mixed", "crossing-only", "angular-only", "eades", "edge-repulsion-baseline")

# Families each mode may use; constants still switch individual forces off.
_FAMILIES = {
    "mixed": {"crossing", "angular_spring", "angular_angle"},
    "crossing-only": {"crossing"},
    "angular-only": {"angular_spring", "angular_angle"},
    "eades": {"repulsion"},
    "edge-repulsion-baseline": {"angular_angle"},
}


class NumericalBlowupError(RuntimeError):
    """Positions became non-finite (or overflow-sized) during a run."""

    def __init__(self, iteration: int):
        self.iteration = iteration
        super().__init__(f"positions diverged after iteration {iteration}; try a smaller step")


@dataclass(frozen=True)
class ForceConfig:
    """Constants of the force model.

    ``l_spring`` and ``step`` may be left as ``None``: ``resolved`` then
    takes the mean edge length of the starting layout as natural length
    and ``0.001 * l_spring`` as step.
    """

    c_spring: float = 2.0
    l_spring: Optional[float] = None
    c_spring_cros: float = 1.0
    c_ang_cros: float = 1.0
    c_spring_ang: float = 1.0
    c_ang_ang: float = 1.0
    step: Optional[float] = None
    eps_deg: float = 0.001
    max_iters: int = 100_000
    mode: str = "mixed"
    c_rep: float = 1.0
    jitter_seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if not self.c_spring > 0:
            raise ValueError("c_spring must be positive")
        for name in ("c_spring_cros", "c_ang_cros", "c_spring_ang", "c_ang_ang", "c_rep"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.l_spring is not None and not self.l_spring > 0:
            raise ValueError("l_spring must be positive")
        if self.step is not None and not self.step > 0:
            raise ValueError("step must be positive")
        if not self.eps_deg > 0:
            raise ValueError("eps_deg must be positive")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError("max_iters must be a positive integer")
        if self.mode == "crossing-only" and (self.c_spring_ang or self.c_ang_ang):
            raise ValueError("crossing-only mode requires c_spring_ang = c_ang_ang = 0")
        if self.mode == "angular-only" and (self.c_spring_cros or self.c_ang_cros):
            raise ValueError("angular-only mode requires c_spring_cros = c_ang_cros = 0")

    @classmethod
    def for_mode(cls, mode: str = "mixed", **overrides) -> "ForceConfig":
        """Config for ``mode`` with the constants of disabled families zeroed."""
        base = {}
        if mode == "crossing-only":
            base = dict(c_spring_ang=0.0, c_ang_ang=0.0)
        elif mode == "angular-only":
            base = dict(c_spring_cros=0.0, c_ang_cros=0.0)
        base.update(overrides)
        return cls(mode=mode, **base)

    def uses(self, family: str) -> bool:
        return family in _FAMILIES[self.mode]

    def resolved(self, graph: Graph, coords: np.ndarray) -> "ForceConfig":
        """Fill ``l_spring`` and ``step`` from the starting positions when unset."""
        l_spring = self.l_spring
        if l_spring is None:
            l_spring = mean_edge_length(graph, coords) or 1.0
        step = self.step if self.step is not None else 0.001 * l_spring
        return replace(self, l_spring=float(l_spring), step=float(step))

    def to_text(self) -> str:
        return "".join(f"{k}={'' if v is None else v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_text(cls, text: str, **overrides) -> "ForceConfig":
        """Parse a flat ``key=value`` file whose keys are field names."""
        kinds = {f.name: f.type for f in fields(cls)}
        values: Dict[str, object] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in kinds:
                raise ValueError(f"config line {lineno}: unknown key {key!r}")
            values[key] = _coerce(kinds[key], val, key)
        values.update(overrides)
        return cls(**values)


def _coerce(kind: str, val: str, key: str):
    if val == "" or val.lower() == "none":
        if "Optional" not in kind:
            raise ValueError(f"config key {key!r} needs a value")
        return None
    if kind == "str":
        return val
    if kind == "int":
        return int(val)
    return float(val)


def mean_edge_length(graph: Graph, coords: np.ndarray) -> Optional[float]:
    if not graph.n_edges:
        return None
    e = graph.edge_array()
    return float(np.linalg.norm(coords[e[:, 1]] - coords[e[:, 0]], axis=1).mean())


# -- force laws, one pair at a time ---------------------------------------


def crossing_magnitude(theta: float) -> float:
    """Unclamped ``|pi/2 - theta| / theta``."""
    return abs(HALF_PI - theta) / theta


def angular_magnitude(theta: float, degree: int) -> float:
    """Unclamped ``|2*pi/degree - theta| / theta``."""
    return abs(TWO_PI / degree - theta) / theta


def _log_spring(p: Sequence[float], q: Sequence[float], natural: float, c: float) -> Vec2:
    dist = distance(p, q)
    if dist == 0.0 or natural <= 0.0:
        return Vec2(0.0, 0.0)
    u = unit_from_to(p, q)
    s = c * math.log(dist / natural)
    return Vec2(s * u.x, s * u.y)


def spring_force(pu: Sequence[float], pv: Sequence[float], cfg: ForceConfig) -> Vec2:
    """Force on ``u`` from the edge spring to ``v``; zero for coincident points."""
    return _log_spring(pu, pv, cfg.l_spring, cfg.c_spring)


def crossing_spring_force(pa, pb, pc, cfg: ForceConfig) -> Vec2:
    """Force on ``a`` from the spring to ``b`` across crossing point ``pc``.

    The natural length is the distance ``a``-``b`` would have if the two
    arms met at a right angle.
    """
    la, lb = distance(pa, pc), distance(pb, pc)
    if la == 0.0 or lb == 0.0:
        return Vec2(0.0, 0.0)
    return _log_spring(pa, pb, math.hypot(la, lb), cfg.c_spring_cros)


def _angle_pair_force(pa, pb, center, theta: float, target: float, magnitude: float, c: float) -> Vec2:
    # Force on the first member of a pair whose second member lies
    # counter-clockwise by ``theta``; the second member gets the negation.
    try:
        direction = perp(bisector(unit_from_to(center, pa), unit_from_to(center, pb)))
    except ValueError:
        return Vec2(0.0, 0.0)
    diff = theta - target
    sgn = (diff > 0) - (diff < 0)
    s = c * sgn * min(magnitude, MAGNITUDE_CAP)
    return Vec2(s * direction.x, s * direction.y)


def crossing_angle_force(pa, pb, pc, cfg: ForceConfig) -> Vec2:
    """Force on ``a`` pushing the angle ``a``-``pc``-``b`` towards pi/2.

    Works for either orientation of the pair; the force on ``b`` is
    ``crossing_angle_force(pb, pa, pc, cfg)``.
    """
    if distance(pa, pc) == 0.0 or distance(pb, pc) == 0.0:
        return Vec2(0.0, 0.0)
    ra = (pa[0] - pc[0], pa[1] - pc[1])
    rb = (pb[0] - pc[0], pb[1] - pc[1])
    turn = cross(ra, rb)
    if turn == 0.0:
        return Vec2(0.0, 0.0)
    theta = ccw_angle(ra, rb) if turn > 0 else ccw_angle(rb, ra)
    f = _angle_pair_force(pa, pb, pc, theta, HALF_PI, crossing_magnitude(theta), cfg.c_ang_cros)
    return f if turn > 0 else Vec2(-f.x, -f.y)


def angular_natural_length(len_i: float, len_j: float, degree: int) -> float:
    """Distance between the far ends of two edges meeting at angle 2*pi/degree."""
    sq = len_i * len_i + len_j * len_j - 2.0 * len_i * len_j * math.cos(TWO_PI / degree)
    return math.sqrt(max(sq, 0.0))


def angular_spring_force(pvi, pvj, u, du: int, cfg: ForceConfig) -> Vec2:
    """Force on ``v_i`` from the spring to the next neighbour ``v_j`` around ``u``."""
    li, lj = distance(u, pvi), distance(u, pvj)
    if li == 0.0 or lj == 0.0:
        return Vec2(0.0, 0.0)
    return _log_spring(pvi, pvj, angular_natural_length(li, lj, du), cfg.c_spring_ang)


def angular_angle_force(pvi, pvj, u, du: int, cfg: ForceConfig) -> Vec2:
    """Force on ``v_i`` pushing the counter-clockwise gap ``v_i -> v_j`` at ``u`` towards 2*pi/du.

    The companion force on ``v_j`` is the negation.
    """
    if distance(u, pvi) == 0.0 or distance(u, pvj) == 0.0:
        return Vec2(0.0, 0.0)
    theta = ccw_angle((pvi[0] - u[0], pvi[1] - u[1]), (pvj[0] - u[0], pvj[1] - u[1]))
    if theta == 0.0:
        return Vec2(0.0, 0.0)
    return _angle_pair_force(
        pvi, pvj, u, theta, TWO_PI / du, angular_magnitude(theta, du), cfg.c_ang_ang
    )


# -- vectorized evaluation -------------------------------------------------


def _spring_kernel(p: np.ndarray, q: np.ndarray, natural, c: float) -> np.ndarray:
    """Row-wise log-spring force on ``p`` towards ``q``; invalid rows give zero."""
    d = q - p
    dist = np.hypot(d[:, 0], d[:, 1])
    natural = np.broadcast_to(natural, dist.shape)
    ok = (dist > 0) & (natural > 0)
    out = np.zeros_like(d)
    s = c * np.log(dist[ok] / natural[ok]) / dist[ok]
    out[ok] = s[:, None] * d[ok]
    return out


def _angle_kernel(center, p, q, theta, target, c: float) -> np.ndarray:
    """Row-wise angle force on ``p``; ``q`` lies counter-clockwise of ``p`` by ``theta``."""
    a = p - center
    b = q - center
    la = np.hypot(a[:, 0], a[:, 1])
    lb = np.hypot(b[:, 0], b[:, 1])
    ok = (la > 0) & (lb > 0) & (theta > 0)
    out = np.zeros_like(a)
    if not ok.any():
        return out
    a, b, la, lb = a[ok], b[ok], la[ok], lb[ok]
    th = theta[ok]
    tg = np.broadcast_to(target, theta.shape)[ok]
    s = a / la[:, None] + b / lb[:, None]
    ls = np.hypot(s[:, 0], s[:, 1])
    good = ls > 1e-15
    mag = c * np.sign(th - tg) * np.minimum(np.abs(tg - th) / th, MAGNITUDE_CAP)
    mag = np.where(good, mag / np.where(good, ls, 1.0), 0.0)
    res = np.empty_like(a)
    res[:, 0] = -s[:, 1] * mag
    res[:, 1] = s[:, 0] * mag
    out[ok] = res
    return out


class _Snapshot:
    """Positions plus the crossing scan and cyclic order derived from them."""

    __slots__ = ("coords", "crossings", "cyclic")

    def __init__(self, topo: Topology, coords: np.ndarray):
        self.coords = coords
        self.crossings = crossing_arrays(topo, coords)
        self.cyclic = cyclic_order(topo, coords) if len(topo.inc_u) else None

    def degrees(self, topo: Topology) -> Tuple[Optional[float], Optional[float]]:
        ang = None
        if self.cyclic is not None:
            order, _, gaps = self.cyclic
            valid = topo.degree[topo.inc_u[order]] >= 2
            if valid.any():
                ang = math.degrees(float(gaps[valid].min()))
        acute = self.crossings[3]
        cr = math.degrees(float(acute.min())) if len(acute) else None
        return ang, cr


def _net_forces(topo: Topology, snap: _Snapshot, cfg: ForceConfig) -> np.ndarray:
    coords = snap.coords
    force = np.zeros_like(coords)
    e = topo.edges
    if len(e):
        f = _spring_kernel(coords[e[:, 0]], coords[e[:, 1]], cfg.l_spring, cfg.c_spring)
        _scatter(force, e[:, 0], f)
        _scatter(force, e[:, 1], -f)

    ia, ib, pc, _ = snap.crossings
    if cfg.uses("crossing") and len(ia) and (cfg.c_spring_cros or cfg.c_ang_cros):
        a0, a1 = e[ia, 0], e[ia, 1]
        b0, b1 = e[ib, 0], e[ib, 1]
        ra = coords[a0] - pc
        rb = coords[b0] - pc
        ccw = ra[:, 0] * rb[:, 1] - ra[:, 1] * rb[:, 0] > 0
        # Endpoints in counter-clockwise order around the crossing point.
        ring = np.stack([a0, np.where(ccw, b0, b1), a1, np.where(ccw, b1, b0)], axis=1)
        first = ring.reshape(-1)
        second = np.roll(ring, -1, axis=1).reshape(-1)
        centre = np.repeat(pc, 4, axis=0)
        p, q = coords[first], coords[second]
        if cfg.c_spring_cros:
            dp = p - centre
            dq = q - centre
            natural = np.sqrt(np.einsum("ij,ij->i", dp, dp) + np.einsum("ij,ij->i", dq, dq))
            f = _spring_kernel(p, q, natural, cfg.c_spring_cros)
            _scatter(force, first, f)
            _scatter(force, second, -f)
        if cfg.c_ang_cros:
            a = p - centre
            b = q - centre
            theta = np.mod(np.arctan2(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0], np.einsum("ij,ij->i", a, b)), TWO_PI)
            f = _angle_kernel(centre, p, q, theta, HALF_PI, cfg.c_ang_cros)
            _scatter(force, first, f)
            _scatter(force, second, -f)

    want_spring = cfg.uses("angular_spring") and cfg.c_spring_ang
    want_angle = cfg.uses("angular_angle") and cfg.c_ang_ang
    if snap.cyclic is not None and (want_spring or want_angle):
        order, nxt, gaps = snap.cyclic
        u = topo.inc_u[order]
        deg = topo.degree[u]
        keep = deg >= 2
        vi = topo.inc_v[order][keep]
        vj = topo.inc_v[order][nxt][keep]
        u, deg, theta = u[keep], deg[keep], gaps[keep]
        pu, pi_, pj = coords[u], coords[vi], coords[vj]
        target = TWO_PI / deg
        if want_spring:
            li = np.hypot(*(pi_ - pu).T)
            lj = np.hypot(*(pj - pu).T)
            natural = np.sqrt(np.maximum(li * li + lj * lj - 2.0 * li * lj * np.cos(target), 0.0))
            f = _spring_kernel(pi_, pj, natural, cfg.c_spring_ang)
            _scatter(force, vi, f)
            _scatter(force, vj, -f)
        if want_angle:
            f = _angle_kernel(pu, pi_, pj, theta, target, cfg.c_ang_ang)
            _scatter(force, vi, f)
            _scatter(force, vj, -f)

    if cfg.uses("repulsion") and cfg.c_rep and topo.n > 1:
        d = coords[:, None, :] - coords[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", d, d)
        np.fill_diagonal(d2, np.inf)
        d2[d2 == 0] = np.inf
        # Inverse-square repulsion in units of the natural length.
        w = cfg.c_rep * cfg.l_spring ** 2 / (d2 * np.sqrt(d2))
        force += np.einsum("ij,ijk->ik", w, d)
    return force


def _scatter(force: np.ndarray, idx: np.ndarray, f: np.ndarray) -> None:
    n = force.shape[0]
    force[:, 0] += np.bincount(idx, weights=f[:, 0], minlength=n)
    force[:, 1] += np.bincount(idx, weights=f[:, 1], minlength=n)


def _prepare(graph: Graph, layout: Layout, cfg: ForceConfig) -> Tuple[Topology, ForceConfig]:
    check_layout(graph, layout)
    return topology(graph), cfg.resolved(graph, layout.coords)


def accumulate_forces(graph: Graph, layout: Layout, cfg: ForceConfig) -> Dict[str, Vec2]:
    """Net force on every node, keyed by node id."""
    topo, cfg = _prepare(graph, layout, cfg)
    force = _net_forces(topo, _Snapshot(topo, layout.coords), cfg)
    return {u: Vec2(float(x), float(y)) for u, (x, y) in zip(graph.nodes, force)}


def force_array(graph: Graph, layout: Layout, cfg: ForceConfig) -> np.ndarray:
    """Net forces as an ``(n, 2)`` array in graph node order."""
    topo, cfg = _prepare(graph, layout, cfg)
    return _net_forces(topo, _Snapshot(topo, layout.coords), cfg)


def _jitter(coords: np.ndarray, cfg: ForceConfig) -> np.ndarray:
    tol = max(1e-9, 1e-9 * cfg.l_spring)
    pairs = coincident_pairs(coords, tol)
    if not pairs:
        return coords
    coords = coords.copy()
    for _, j in pairs:
        rng = np.random.default_rng((cfg.jitter_seed, j))
        angle = rng.uniform(0.0, TWO_PI)
        coords[j] += 1e-6 * cfg.l_spring * np.array([math.cos(angle), math.sin(angle)])
    return coords


def _advance(topo: Topology, snap: _Snapshot, cfg: ForceConfig) -> np.ndarray:
    coords = snap.coords + cfg.step * _net_forces(topo, snap, cfg)
    if _diverged(coords):
        return coords  # the caller reports the blow-up
    return _jitter(coords, cfg)


def _diverged(coords: np.ndarray) -> bool:
    # Beyond ~1e150 squared distances overflow, so treat that as divergence too.
    return not np.all(np.abs(coords) < 1e150)


def step(graph: Graph, layout: Layout, cfg: ForceConfig) -> Layout:
    """One displacement ``p <- p + step * F`` for every node."""
    topo, cfg = _prepare(graph, layout, cfg)
    coords = _advance(topo, _Snapshot(topo, layout.coords), cfg)
    return Layout(graph.nodes, coords)


@dataclass
class RunResult:
    final_layout: Layout
    iterations: int
    history: List[Tuple[int, Optional[float], Optional[float]]] = field(default_factory=list)
    converged: bool = False
    config: Optional[ForceConfig] = None


def _settled(prev: Optional[float], cur: Optional[float], eps: float) -> bool:
    if prev is None or cur is None:
        return prev is None and cur is None
    return abs(cur - prev) < eps


def run(
    graph: Graph,
    init: Layout,
    cfg: ForceConfig,
    callback: Optional[Callable[[int, np.ndarray], None]] = None,
) -> RunResult:
    """Iterate ``step`` until both resolutions settle or ``max_iters`` is hit.

    After every iteration the angular and crossing resolution (degrees)
    are recorded; the run has converged once both moved by less than
    ``eps_deg`` since the previous iteration.
    """
    topo, cfg = _prepare(graph, init, cfg)
    snap = _Snapshot(topo, init.coords)
    prev = snap.degrees(topo)
    history = []
    converged = False
    it = 0
    while it < cfg.max_iters:
        coords = _advance(topo, snap, cfg)
        it += 1
        if _diverged(coords):
            raise NumericalBlowupError(it)
        snap = _Snapshot(topo, coords)
        cur = snap.degrees(topo)
        history.append((it, cur[0], cur[1]))
        if callback is not None:
            callback(it, coords)
        if _settled(prev[0], cur[0], cfg.eps_deg) and _settled(prev[1], cur[1], cfg.eps_deg):
            converged = True
            break
        prev = cur
    return RunResult(Layout(graph.nodes, snap.coords), it, history, converged, cfg)


def initial_layout(graph: Graph, seed: int, box: float = 1.0, max_iters: int = 5000) -> Layout:
    """Seeded starting drawing: uniform random positions relaxed by the ``eades`` model.

    The relaxation uses the larger classic step ``0.05 * l_spring`` so it
    untangles quickly; refinement runs then start from a reasonable
    drawing rather than from noise.
    """
    start = random_layout(graph, seed, box)
    if not graph.n_edges:
        return start
    l_spring = mean_edge_length(graph, start.coords)
    cfg = ForceConfig(mode="eades", l_spring=l_spring, step=0.05 * l_spring, max_iters=max_iters, jitter_seed=seed)
    return run(graph, start, cfg).final_layout
