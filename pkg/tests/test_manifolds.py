"""Geometry primitives against independent numerical oracles.

The closed-form exp/log/transport implementations are validated against
(a) brute-force integration of the ambient geodesic equation,
(b) Schild's ladder for parallel transport,
(c) exp/log round trips, which are their own oracle.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_accel.manifolds import (
    AntipodalError,
    GeometryError,
    InjectivityRadiusError,
    ManifoldKind,
    Point,
    TangentVector,
    distance,
    exp_map,
    inner,
    log_map,
    norm,
    parallel_transport,
    project_to_tangent,
    random_point,
)

from conftest import euclidean, hyperboloid, origin, rand_pt, rand_tangent, sphere

ALL_SPECS = [euclidean(), sphere(), hyperboloid()]
CURVED_SPECS = [sphere(), hyperboloid()]


# ---------------------------------------------------------------------------
# Oracles


def integrate_ambient_geodesic(x: Point, v: TangentVector, step=1e-6):
    """Forward-Euler integration of the ambient geodesic ODE over t in [0,1].

    On both curved models the geodesic satisfies gamma'' = sign * (|v|^2/R^2) * gamma
    with sign -1 on the sphere and +1 on the hyperboloid; every step re-projects
    onto the manifold.  Plain floats keep the million-step loop fast.
    """
    spec = x.spec
    R = spec.radius
    speed2 = inner(v, v)
    sign = -1.0 if spec.kind is ManifoldKind.SPHERE else 1.0
    coef = sign * speed2 / R**2

    pos = [float(c) for c in x.coords]
    vel = [float(c) for c in v.vec]
    n = len(pos)
    steps = round(1.0 / step)
    for _ in range(steps):
        acc = [coef * p for p in pos]
        pos = [p + step * w for p, w in zip(pos, vel)]
        vel = [w + step * a for w, a in zip(vel, acc)]
        if spec.kind is ManifoldKind.SPHERE:
            r = math.sqrt(sum(p * p for p in pos))
            pos = [p * (R / r) for p in pos]
        else:
            x0 = math.sqrt(R**2 + sum(p * p for p in pos[1:]))
            pos = [x0] + pos[1:]
    return np.array(pos)


def schilds_ladder(x: Point, y: Point, u: TangentVector, rungs=10_000):
    """Numeric parallel transport using only exp/log (first-principles oracle)."""
    base = log_map(x, y)
    d = distance(x, y)
    if d == 0.0:
        return u
    a_vec = u
    p = x
    rung_len = d / rungs
    for i in range(rungs):
        p_next = exp_map(x, base.scaled((i + 1) / rungs))
        s = rung_len / max(norm(a_vec), 1e-12)
        tip = exp_map(p, a_vec.scaled(s))
        mid = exp_map(tip, log_map(tip, p_next).scaled(0.5))
        doubled = exp_map(p, log_map(p, mid).scaled(2.0))
        a_vec = log_map(p_next, doubled).scaled(1.0 / s)
        p = p_next
    return a_vec


# ---------------------------------------------------------------------------
# exp_map


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_exp_zero_vector_is_identity(spec):
    x = rand_pt(spec, seed=1)
    y = exp_map(x, TangentVector(x, np.zeros(spec.ambient_dim)))
    np.testing.assert_allclose(y.coords, x.coords, atol=1e-15)


def test_exp_quarter_great_circle():
    spec = sphere(dim=2)
    e1 = Point(spec, [1.0, 0.0, 0.0])
    e3 = Point(spec, [0.0, 0.0, 1.0])
    v = TangentVector(e3, [math.pi / 2, 0.0, 0.0])
    np.testing.assert_allclose(exp_map(e3, v).coords, e1.coords, atol=1e-12)


def test_exp_hyperboloid_closed_form_matches_integration_oracle():
    spec = hyperboloid(dim=2)
    x = Point(spec, [1.0, 0.0, 0.0])
    v = TangentVector(x, [0.0, 1.0, 0.0])
    got = exp_map(x, v)
    np.testing.assert_allclose(
        got.coords, [math.cosh(1.0), math.sinh(1.0), 0.0], atol=1e-12
    )
    oracle = integrate_ambient_geodesic(x, v, step=1e-6)
    np.testing.assert_allclose(got.coords, oracle, atol=5e-6)


def test_exp_sphere_closed_form_matches_integration_oracle():
    spec = sphere(dim=2)
    x = origin(spec)
    v = rand_tangent(spec, x, seed=7, scale=1.3)
    got = exp_map(x, v)
    oracle = integrate_ambient_geodesic(x, v, step=1e-6)
    np.testing.assert_allclose(got.coords, oracle, atol=5e-6)


def test_exp_rejects_beyond_injectivity_radius():
    spec = sphere(dim=2)
    x = origin(spec)
    v = rand_tangent(spec, x, seed=0, scale=math.pi + 0.01)
    with pytest.raises(InjectivityRadiusError):
        exp_map(x, v)


def test_exp_rejects_base_mismatch():
    spec = sphere(dim=2)
    x, y = rand_pt(spec, 1), rand_pt(spec, 2)
    v = rand_tangent(spec, y, seed=3)
    with pytest.raises(GeometryError):
        exp_map(x, v)


def test_exp_preserves_distance_from_base():
    for spec in ALL_SPECS:
        for seed in range(20):
            x = rand_pt(spec, seed)
            v = rand_tangent(spec, x, seed + 100, scale=0.3 + 0.05 * seed % 1.0)
            y = exp_map(x, v)
            assert abs(distance(x, y) - norm(v)) < 1e-9


# ---------------------------------------------------------------------------
# log_map / distance


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_log_at_base_is_zero(spec):
    x = rand_pt(spec, seed=4)
    assert norm(log_map(x, x)) == 0.0
    assert distance(x, x) == 0.0


def test_log_quarter_great_circle():
    spec = sphere(dim=2)
    e1 = Point(spec, [1.0, 0.0, 0.0])
    e3 = Point(spec, [0.0, 0.0, 1.0])
    v = log_map(e3, e1)
    np.testing.assert_allclose(v.vec, [math.pi / 2, 0.0, 0.0], atol=1e-12)
    assert abs(distance(e3, e1) - math.pi / 2) < 1e-14


def test_distance_hyperboloid_unit_geodesic():
    spec = hyperboloid(dim=2)
    x = Point(spec, [1.0, 0.0, 0.0])
    y = Point(spec, [math.cosh(1.0), math.sinh(1.0), 0.0])
    assert abs(distance(x, y) - 1.0) < 1e-12


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_round_trip_500_pairs(spec):
    for seed in range(500):
        x = rand_pt(spec, 2 * seed)
        y = rand_pt(spec, 2 * seed + 1)
        v = log_map(x, y)
        assert distance(exp_map(x, v), y) < 1e-9
        assert abs(norm(v) - distance(x, y)) < 1e-10


def test_log_rejects_antipodal():
    spec = sphere(dim=2)
    x = origin(spec)
    y = Point(spec, -x.coords)
    with pytest.raises(AntipodalError):
        log_map(x, y)


def test_distance_symmetry():
    for spec in ALL_SPECS:
        x, y = rand_pt(spec, 11), rand_pt(spec, 12)
        assert abs(distance(x, y) - distance(y, x)) < 1e-14


# ---------------------------------------------------------------------------
# parallel_transport


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_transport_to_same_point_is_identity(spec):
    x = rand_pt(spec, 5)
    u = rand_tangent(spec, x, 6)
    out = parallel_transport(x, x, u)
    np.testing.assert_allclose(out.vec, u.vec, atol=1e-12)


def test_transport_normal_vector_fixed_on_sphere():
    spec = sphere(dim=2)
    e1 = Point(spec, [1.0, 0.0, 0.0])
    e3 = Point(spec, [0.0, 0.0, 1.0])
    u = TangentVector(e3, [0.0, 1.0, 0.0])
    out = parallel_transport(e3, e1, u)
    np.testing.assert_allclose(out.vec, [0.0, 1.0, 0.0], atol=1e-12)


@pytest.mark.parametrize("spec", CURVED_SPECS, ids=lambda s: s.kind.value)
def test_transport_matches_schilds_ladder(spec):
    # The ladder's accuracy is ~ (scale)^3 / rungs, so keep the configuration
    # at moderate scale to make 1e4 rungs resolve well below the tolerance.
    for seed in range(3):
        x = rand_pt(spec, 30 + seed, radius=0.2)
        y = rand_pt(spec, 60 + seed, radius=0.2)
        u = rand_tangent(spec, x, 90 + seed, scale=0.3)
        got = parallel_transport(x, y, u)
        oracle = schilds_ladder(x, y, u, rungs=10_000)
        assert np.linalg.norm(got.vec - oracle.vec) < 1e-5


def test_transport_isometry_and_angle():
    for spec in ALL_SPECS:
        for seed in range(40):
            x = rand_pt(spec, seed)
            y = rand_pt(spec, seed + 1000)
            u = rand_tangent(spec, x, seed + 2000, scale=1.7)
            w = rand_tangent(spec, x, seed + 3000, scale=0.4)
            gu = parallel_transport(x, y, u)
            gw = parallel_transport(x, y, w)
            assert abs(norm(gu) - norm(u)) < 1e-10
            assert abs(inner(gu, gw) - inner(u, w)) < 1e-10
            if distance(x, y) > 1e-6:
                # angle with the geodesic is preserved (reversed orientation)
                lhs = inner(gu, log_map(y, x))
                rhs = -inner(u, log_map(x, y))
                assert abs(lhs - rhs) < 1e-9


# ---------------------------------------------------------------------------
# project_to_tangent


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_projection_of_tangent_is_identity(spec):
    x = rand_pt(spec, 8)
    u = rand_tangent(spec, x, 9)
    np.testing.assert_allclose(project_to_tangent(x, u.vec).vec, u.vec, atol=1e-12)


def test_projection_of_radial_direction_is_zero_on_sphere():
    spec = sphere(dim=2)
    x = rand_pt(spec, 10)
    np.testing.assert_allclose(project_to_tangent(x, x.coords).vec, 0.0, atol=1e-12)


@pytest.mark.parametrize("spec", CURVED_SPECS, ids=lambda s: s.kind.value)
def test_projection_idempotent_and_tangent(spec):
    from riemann_accel.manifolds import ambient_inner

    rng = np.random.default_rng(123)
    x = rand_pt(spec, 11)
    for _ in range(50):
        w = rng.standard_normal(spec.ambient_dim)
        p1 = project_to_tangent(x, w)
        p2 = project_to_tangent(x, p1.vec)
        assert abs(ambient_inner(spec, x.coords, p1.vec)) < 1e-12
        np.testing.assert_allclose(p2.vec, p1.vec, atol=1e-12)


# ---------------------------------------------------------------------------
# random_point


def test_random_point_zero_radius_returns_center():
    spec = hyperboloid()
    c = rand_pt(spec, 3)
    np.testing.assert_allclose(random_point(spec, c, 0.0, 99).coords, c.coords)


def test_random_point_deterministic():
    spec = sphere()
    c = origin(spec)
    a = random_point(spec, c, 1.0, seed=42)
    b = random_point(spec, c, 1.0, seed=42)
    np.testing.assert_array_equal(a.coords, b.coords)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_random_point_stays_in_ball(spec):
    c = origin(spec)
    for seed in range(1000):
        assert distance(c, random_point(spec, c, spec.D / 2, seed)) <= spec.D / 2 + 1e-12


def test_random_point_radius_guard():
    spec = hyperboloid(D=1.0)
    with pytest.raises(GeometryError):
        random_point(spec, origin(spec), 0.51, 0)


# ---------------------------------------------------------------------------
# Geodesic / invariant properties


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_geodesic_constant_speed(spec):
    x = rand_pt(spec, 21)
    v = rand_tangent(spec, x, 22, scale=0.9)
    for t, s in [(0.0, 1.0), (0.25, 0.75), (0.1, 0.9), (0.5, 0.55)]:
        a = exp_map(x, v.scaled(t))
        b = exp_map(x, v.scaled(s))
        assert abs(distance(a, b) - abs(t - s) * norm(v)) < 1e-9


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_squared_distance_derivative_identity(spec):
    # d/dt d(X(t), p)^2 == 2 <log_X(p), -Xdot> along geodesic curves.
    p = rand_pt(spec, 31)
    x = rand_pt(spec, 32)
    v = rand_tangent(spec, x, 33, scale=0.7)
    fd = 1e-5
    for t in (0.2, 0.5, 0.8):
        xt = exp_map(x, v.scaled(t))
        xdot = parallel_transport(x, xt, v)
        plus = distance(exp_map(x, v.scaled(t + fd)), p) ** 2
        minus = distance(exp_map(x, v.scaled(t - fd)), p) ** 2
        numeric = (plus - minus) / (2 * fd)
        analytic = 2 * inner(log_map(xt, p), xdot.scaled(-1.0))
        assert abs(numeric - analytic) < 1e-6


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(["sphere", "hyperboloid"]))
def test_round_trip_property(seed, kind):
    spec = sphere() if kind == "sphere" else hyperboloid()
    x = rand_pt(spec, seed % 100_000)
    y = rand_pt(spec, seed % 100_000 + 7)
    assert distance(exp_map(x, log_map(x, y)), y) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_transport_isometry_property(seed):
    spec = hyperboloid()
    x = rand_pt(spec, seed % 100_000)
    y = rand_pt(spec, seed % 100_000 + 3)
    u = rand_tangent(spec, x, seed % 100_000 + 11, scale=2.0)
    assert abs(norm(parallel_transport(x, y, u)) - norm(u)) < 1e-10


def test_small_vector_exp_stability():
    for spec in CURVED_SPECS:
        x = rand_pt(spec, 77)
        u = rand_tangent(spec, x, 78, scale=1e-9)
        y = exp_map(x, u)
        assert distance(x, y) < 2e-9
        assert abs(distance(x, y) - 1e-9) < 1e-15
