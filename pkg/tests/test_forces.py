import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import angle_at
from totalres.constructions import circular_complete
from totalres.forces import (
    MAGNITUDE_CAP,
    ForceConfig,
    NumericalBlowupError,
    accumulate_forces,
    angular_angle_force,
    angular_natural_length,
    angular_spring_force,
    crossing_angle_force,
    crossing_spring_force,
    force_array,
    initial_layout,
    run,
    spring_force,
    step,
)
from totalres.graph import Graph, Layout, random_layout
from totalres.metrics import find_crossings, total_resolution

CFG = ForceConfig(l_spring=1.0, step=0.01)


def norm(v):
    return math.hypot(v[0], v[1])


def test_spring_force_examples():
    assert spring_force((0, 0), (1, 0), CFG) == (0.0, 0.0)
    f = spring_force((0, 0), (math.e, 0), CFG)
    assert f == pytest.approx((CFG.c_spring, 0.0))
    f = spring_force((0, 0), (1 / math.e, 0), CFG)
    assert f == pytest.approx((-CFG.c_spring, 0.0))


def test_crossing_spring_examples():
    assert crossing_spring_force((3, 0), (0, 4), (0, 0), CFG) == pytest.approx((0.0, 0.0), abs=1e-15)
    # |a - b| = 1 but the right-angle length is sqrt(1 + 2): pushed apart.
    f = crossing_spring_force((1, 0), (1, 1), (0, 0), CFG)
    assert f[1] < 0 and norm(f) == pytest.approx(math.log(math.sqrt(3)))


def test_crossing_springs_vanish_at_right_angle():
    ring = [(2, 0), (0, 1), (-2, 0), (0, -1)]
    for k in range(4):
        f = crossing_spring_force(ring[k], ring[(k + 1) % 4], (0, 0), CFG)
        assert norm(f) < 1e-15


def _ray(theta, r=1.0):
    return (r * math.cos(theta), r * math.sin(theta))


def test_crossing_angle_examples():
    assert norm(crossing_angle_force(_ray(0), _ray(math.pi / 2), (0, 0), CFG)) < 1e-15
    f = crossing_angle_force(_ray(0), _ray(math.pi / 4), (0, 0), CFG)
    assert norm(f) == pytest.approx(CFG.c_ang_cros)
    # Repulsive: ``a`` turns clockwise, away from ``b``.
    assert f[1] < 0
    f = crossing_angle_force(_ray(0), _ray(math.pi / 6), (0, 0), CFG)
    assert norm(f) == pytest.approx(2 * CFG.c_ang_cros)


def test_crossing_angle_force_is_capped():
    f = crossing_angle_force(_ray(0), _ray(1e-9), (0, 0), CFG)
    assert norm(f) == pytest.approx(MAGNITUDE_CAP * CFG.c_ang_cros)


def test_crossing_angle_pair_is_opposite():
    a, b = _ray(0.3, 2.0), _ray(1.1, 0.5)
    fa = crossing_angle_force(a, b, (0, 0), CFG)
    fb = crossing_angle_force(b, a, (0, 0), CFG)
    assert fa == pytest.approx((-fb[0], -fb[1]))


def test_angular_natural_length_examples():
    assert angular_natural_length(1, 1, 4) == pytest.approx(math.sqrt(2))
    assert angular_natural_length(1.5, 2.5, 2) == pytest.approx(4.0)
    assert angular_natural_length(1, 1, 3) == pytest.approx(math.sqrt(3))
    assert norm(angular_spring_force(_ray(0), _ray(math.pi / 2), (0, 0), 4, CFG)) < 1e-15


def test_angular_angle_examples():
    assert norm(angular_angle_force(_ray(0), _ray(math.pi / 2), (0, 0), 4, CFG)) < 1e-15
    f = angular_angle_force(_ray(0), _ray(math.pi / 4), (0, 0), 4, CFG)
    assert norm(f) == pytest.approx(CFG.c_ang_ang) and f[1] < 0
    assert norm(angular_angle_force(_ray(0), _ray(math.pi), (0, 0), 2, CFG)) == 0.0


positive_angle = st.floats(0.05, math.pi - 0.05)


@given(positive_angle, positive_angle)
def test_crossing_magnitude_monotone(t1, t2):
    # Farther from the right angle on the same side means a stronger push.
    f1 = norm(crossing_angle_force(_ray(0), _ray(t1), (0, 0), CFG))
    f2 = norm(crossing_angle_force(_ray(0), _ray(t2), (0, 0), CFG))
    if t1 < t2 <= math.pi / 2:
        assert f1 >= f2
    if math.pi / 2 <= t1 < t2:
        assert f1 <= f2


@settings(max_examples=200)
@given(
    st.floats(0, 2 * math.pi),
    st.floats(0.05, 2 * math.pi - 0.05),
    st.floats(0.2, 5),
    st.floats(0.2, 5),
    st.integers(2, 9),
)
def test_angular_force_is_rotation_equivariant(rot, gap, r1, r2, degree):
    f = angular_angle_force(_ray(0, r1), _ray(gap, r2), (0, 0), degree, CFG)
    g = angular_angle_force(_ray(rot, r1), _ray(rot + gap, r2), (0, 0), degree, CFG)
    c, s = math.cos(rot), math.sin(rot)
    assert g == pytest.approx((c * f[0] - s * f[1], s * f[0] + c * f[1]), abs=1e-9)


# -- whole-graph accumulation against a scalar reference ----------------------


def reference_forces(graph, coords, cfg):
    """Net forces assembled pair by pair from the scalar force laws."""
    pts = [tuple(p) for p in coords]
    net = np.zeros((graph.n_nodes, 2))

    def add(i, f, sign=1.0):
        net[i] += sign * np.asarray(f)

    for a, b in graph.edges:
        f = spring_force(pts[a], pts[b], cfg)
        add(a, f)
        add(b, f, -1)

    if cfg.uses("crossing"):
        lay = Layout(graph.nodes, coords)
        for c in find_crossings(graph, lay):
            ends = [graph.index[u] for u in c.edge_a + c.edge_b]
            pc = c.point
            ends.sort(key=lambda i: math.atan2(pts[i][1] - pc[1], pts[i][0] - pc[0]))
            for k in range(4):
                p, q = ends[k], ends[(k + 1) % 4]
                f = crossing_spring_force(pts[p], pts[q], pc, cfg)
                add(p, f)
                add(q, f, -1)
                add(p, crossing_angle_force(pts[p], pts[q], pc, cfg))
                add(q, crossing_angle_force(pts[q], pts[p], pc, cfg))

    for u, nbrs in enumerate(graph.adjacency):
        d = len(nbrs)
        if d < 2:
            continue
        ring = sorted(nbrs, key=lambda v: math.atan2(pts[v][1] - pts[u][1], pts[v][0] - pts[u][0]))
        for k in range(d):
            vi, vj = ring[k], ring[(k + 1) % d]
            if cfg.uses("angular_spring"):
                f = angular_spring_force(pts[vi], pts[vj], pts[u], d, cfg)
                add(vi, f)
                add(vj, f, -1)
            if cfg.uses("angular_angle"):
                f = angular_angle_force(pts[vi], pts[vj], pts[u], d, cfg)
                add(vi, f)
                add(vj, f, -1)
    return net


@pytest.mark.parametrize("mode", ["mixed", "crossing-only", "angular-only", "edge-repulsion-baseline"])
@pytest.mark.parametrize("seed", range(6))
def test_vectorized_matches_scalar_reference(mode, seed):
    rng = np.random.default_rng(seed)
    n = 9
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35]
    g = Graph(tuple(f"v{i}" for i in range(n)), tuple(pairs))
    lay = random_layout(g, seed)
    cfg = ForceConfig.for_mode(mode, l_spring=0.4, step=0.01)
    assert force_array(g, lay, cfg) == pytest.approx(reference_forces(g, lay.coords, cfg), abs=1e-9)


def test_right_angle_crossing_has_no_crossing_forces():
    g = Graph.from_edges([("a", "b"), ("c", "d")])
    lay = Layout(g.nodes, [(-1, 0), (1, 0), (0, -1), (0, 1)])
    cfg = ForceConfig.for_mode("crossing-only", l_spring=2.0, step=0.01)
    for f in accumulate_forces(g, lay, cfg).values():
        assert norm(f) < 1e-12


def test_regular_star_has_no_angular_forces():
    g = Graph.from_edges([("c", f"l{k}") for k in range(4)])
    lay = Layout(g.nodes, [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)])
    cfg = ForceConfig.for_mode("angular-only", l_spring=1.0, step=0.01)
    for f in accumulate_forces(g, lay, cfg).values():
        assert norm(f) < 1e-12


def test_plane_drawing_crossing_only_reduces_to_edge_springs():
    g = Graph.from_edges([("a", "b"), ("b", "c")])
    lay = Layout(g.nodes, [(0, 0), (2, 0), (2, 3)])
    cfg = ForceConfig.for_mode("crossing-only", l_spring=1.0, step=0.01)
    got = force_array(g, lay, cfg)
    springs = reference_forces(g, lay.coords, ForceConfig.for_mode("eades", l_spring=1.0, step=0.01, c_rep=0))
    assert got == pytest.approx(springs)


def test_step_examples():
    g = Graph.from_edges([("a", "b")])
    rest = Layout(g.nodes, [(0, 0), (1, 0)])
    cfg = ForceConfig(l_spring=1.0, step=0.1)
    assert step(g, rest, cfg) == rest
    lay = Layout(g.nodes, [(0, 0), (math.e, 0)])
    moved = step(g, lay, cfg)
    # Each endpoint is pulled by exactly C_spring.
    assert moved["a"] == pytest.approx((0.1 * cfg.c_spring, 0.0))
    assert moved["b"] == pytest.approx((math.e - 0.1 * cfg.c_spring, 0.0))
    assert step(g, lay, cfg) == moved


def test_run_single_iteration_and_history():
    g, lay = circular_complete(5)
    res = run(g, random_layout(g, 3), ForceConfig(max_iters=1))
    assert res.iterations == 1 and len(res.history) == 1
    res = run(g, lay, ForceConfig(max_iters=50))
    assert [h[0] for h in res.history] == list(range(1, res.iterations + 1))


def test_run_is_deterministic():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("a", "d"), ("b", "e")])
    start = random_layout(g, 11)
    r1 = run(g, start, ForceConfig(max_iters=300))
    r2 = run(g, start, ForceConfig(max_iters=300))
    assert r1.final_layout == r2.final_layout and r1.history == r2.history


def test_two_edge_crossing_reaches_right_angle():
    g = Graph.from_edges([("a", "b"), ("c", "d")])
    start = Layout(g.nodes, [(0, 0), (1, 0.3), (0.5, -0.4), (0.6, 0.5)])
    res = run(g, start, ForceConfig.for_mode("crossing-only"))
    assert res.converged
    assert math.degrees(total_resolution(g, res.final_layout).crossing) >= 85.0


def test_k15_star_gaps():
    g = Graph.from_edges([("c", f"l{k}") for k in range(5)])
    res = run(g, random_layout(g, 5), ForceConfig.for_mode("angular-only"))
    assert res.converged
    centre = res.final_layout["c"]
    angles = sorted(math.atan2(y - centre[1], x - centre[0]) for x, y in
                    (res.final_layout[f"l{k}"] for k in range(5)))
    gaps = [angle_at((0, 0), _ray(a), _ray(b)) for a, b in zip(angles, angles[1:] + angles[:1])]
    assert all(abs(math.degrees(t) - 72) <= 2 for t in gaps)


def test_blowup_is_reported():
    g = Graph.from_edges([("a", "b"), ("c", "d")])
    start = Layout(g.nodes, [(0, 0), (1, 0.01), (0.5, -1), (0.51, 1)])
    with pytest.raises(NumericalBlowupError):
        run(g, start, ForceConfig.for_mode("crossing-only", step=1e300, max_iters=5))


def test_initial_layout_is_seeded():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d")])
    assert initial_layout(g, 4) == initial_layout(g, 4)
    assert initial_layout(g, 4) != initial_layout(g, 5)


def test_config_validation_and_text_round_trip():
    with pytest.raises(ValueError):
        ForceConfig(mode="crossing-only")
    with pytest.raises(ValueError):
        ForceConfig(mode="nope")
    with pytest.raises(ValueError):
        ForceConfig(step=-1)
    cfg = ForceConfig.for_mode("angular-only", l_spring=0.5, max_iters=7)
    assert ForceConfig.from_text(cfg.to_text()) == cfg
    with pytest.raises(ValueError):
        ForceConfig.from_text("bogus=1\n")


def test_default_step_scales_with_edge_length():
    g = Graph.from_edges([("a", "b")])
    lay = Layout(g.nodes, [(0, 0), (10, 0)])
    cfg = ForceConfig().resolved(g, lay.coords)
    assert cfg.l_spring == 10.0 and cfg.step == pytest.approx(0.01)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 2 * math.pi), st.floats(-3, 3), st.floats(-3, 3))
def test_accumulated_forces_are_isometry_equivariant(seed, angle, dx, dy):
    g = Graph.from_edges([("a", "b"), ("c", "d"), ("a", "c"), ("b", "e"), ("a", "e"), ("d", "e")])
    lay = random_layout(g, seed)
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    moved = Layout(g.nodes, lay.coords @ rot.T + (dx, dy))
    cfg = ForceConfig(l_spring=0.5, step=0.01)
    assert force_array(g, moved, cfg) == pytest.approx(force_array(g, lay, cfg) @ rot.T, abs=1e-9)


@pytest.mark.parametrize("seed", range(4))
def test_mode_reduction(seed):
    g = Graph.from_edges([("a", "b"), ("c", "d"), ("a", "c"), ("b", "d"), ("a", "d"), ("b", "e")])
    lay = random_layout(g, seed)
    mixed = ForceConfig(l_spring=0.5, step=0.01, c_spring_ang=0, c_ang_ang=0)
    only = ForceConfig.for_mode("crossing-only", l_spring=0.5, step=0.01)
    assert np.array_equal(force_array(g, lay, mixed), force_array(g, lay, only))
    mixed = ForceConfig(l_spring=0.5, step=0.01, c_spring_cros=0, c_ang_cros=0)
    only = ForceConfig.for_mode("angular-only", l_spring=0.5, step=0.01)
    assert np.array_equal(force_array(g, lay, mixed), force_array(g, lay, only))


@given(st.integers(2, 10), st.floats(0.01, 1), st.floats(0.01, 1))
def test_angular_magnitude_decreasing_below_target(degree, s1, s2):
    target = 2 * math.pi / degree
    t1, t2 = sorted((s1 * target, s2 * target))
    f1 = norm(angular_angle_force(_ray(0), _ray(t1), (0, 0), degree, CFG))
    f2 = norm(angular_angle_force(_ray(0), _ray(t2), (0, 0), degree, CFG))
    assert f1 >= f2
