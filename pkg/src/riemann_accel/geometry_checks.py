"""Numeric verification of the differential-geometric inequalities.

Everything here is built from exp/log/transport alone: covariant derivatives
are transport-difference quotients (with one Richardson level), so the checks
exercise the library's own primitives rather than separate curvature
machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constants import delta, zeta
from .manifolds import (
    GeometryError,
    ManifoldKind,
    ManifoldSpec,
    Point,
    TangentVector,
    ambient_inner,
    distance,
    exp_map,
    inner,
    log_map,
    norm,
    parallel_transport,
    project_to_tangent,
    random_point,
)

FD_STEP_MIN, FD_STEP_MAX = 1e-7, 1e-3


@dataclass
class CurveSample:
    """A curve, its velocity field, an evaluation time and an fd step."""

    curve: Callable[[float], Point]
    velocity: Callable[[float], TangentVector]
    t: float
    fd_step: float = 1e-5

    def __post_init__(self):
        if not FD_STEP_MIN <= self.fd_step <= FD_STEP_MAX:
            raise ValueError(
                f"fd_step must be in [{FD_STEP_MIN}, {FD_STEP_MAX}], got {self.fd_step}"
            )


def geodesic_curve(x: Point, v: TangentVector, t: float = 0.0, fd_step: float = 1e-5) -> CurveSample:
    """The geodesic through x with velocity v, as a sampled curve."""
    return CurveSample(
        curve=lambda s: exp_map(x, v.scaled(s)),
        velocity=lambda s: parallel_transport(x, exp_map(x, v.scaled(s)), v),
        t=t,
        fd_step=fd_step,
    )


def _covariant_quotient(
    curve: Callable[[float], Point],
    field_fn: Callable[[float, Point], TangentVector],
    t: float,
    s: float,
) -> np.ndarray:
    """(transport-back of A(t+s) minus A(t)) / s, as an ambient vector at X(t)."""
    x_t = curve(t)
    x_s = curve(t + s)
    a_t = field_fn(t, x_t)
    a_s = field_fn(t + s, x_s)
    return (parallel_transport(x_s, x_t, a_s).vec - a_t.vec) / s


def covariant_field_derivative(
    curve: Callable[[float], Point],
    field_fn: Callable[[float, Point], TangentVector],
    t: float,
    fd_step: float,
) -> TangentVector:
    """Richardson-extrapolated covariant derivative of a field along a curve."""
    d1 = _covariant_quotient(curve, field_fn, t, fd_step)
    d2 = _covariant_quotient(curve, field_fn, t, fd_step / 2)
    return TangentVector(curve(t), 2.0 * d2 - d1)


def covariant_log_pairing(X: CurveSample, p: Point) -> float:
    """<nabla_{Xdot} log_X(p), -Xdot> at X.t, by finite differences."""
    x_t = X.curve(X.t)
    if distance(x_t, p) < 1e-9:
        raise GeometryError("p coincides with the curve point; log is singular")
    nabla = covariant_field_derivative(
        X.curve, lambda s, pt: log_map(pt, p), X.t, X.fd_step
    )
    xdot = X.velocity(X.t)
    return -inner(nabla, xdot)


@dataclass(frozen=True)
class CosineLawResult:
    lhs: float
    rhs: float
    ok: bool
    delta_star: float


def cosine_law_check(a: Point, b: Point, c: Point, edge_samples: int = 100) -> CosineLawResult:
    """Curved law of cosines for the triangle (a, b, c), angle at b.

    The inequality asserts existence of a point q on the edge bc at which the
    lower Hessian constant makes d(a,c)^2 >= delta(q)*d(b,c)^2 + d(a,b)^2
    - 2 d(a,b) d(b,c) cos(B) hold; numerically that is equivalent to checking
    against the minimum of delta over the (discretized) edge.
    """
    spec = a.spec
    ab = distance(b, a)
    bc = distance(b, c)
    lhs = distance(a, c) ** 2

    if ab < 1e-14 or bc < 1e-14:
        cos_term = 0.0  # degenerate: the angle term is multiplied by 0 anyway
    else:
        cos_term = inner(log_map(b, a), log_map(b, c)) / (ab * bc)

    if spec.kind is ManifoldKind.SPHERE and bc > 1e-14:
        v = log_map(b, c)
        delta_star = min(
            delta(spec.K, distance(exp_map(b, v.scaled(s)), a))
            for s in np.linspace(0.0, 1.0, edge_samples)
        )
    else:
        delta_star = delta(spec.K, distance(b, a))

    rhs = delta_star * bc**2 + ab**2 - 2.0 * ab * bc * cos_term
    return CosineLawResult(lhs=lhs, rhs=rhs, ok=lhs >= rhs - 1e-9, delta_star=delta_star)


def ftc_vector_field_check(
    x: Point,
    v: TangentVector,
    field_fn: Callable[[float, Point], TangentVector],
    n_grid: int = 100,
    fd_step: float = 1e-4,
) -> tuple[float, float]:
    """Residual of the transport fundamental-theorem identity along a geodesic.

    For X(t) = exp_x(t v), t in [0, 1], compares the transported endpoint
    difference of the field against the trapezoid quadrature of its
    transported covariant derivative.  Returns (residual, grid_step).
    The field must be evaluable slightly beyond t = 1 (forward quotients).
    """
    if n_grid < 2:
        raise ValueError("need at least two grid points")
    curve = lambda t: exp_map(x, v.scaled(t))
    x_a = curve(0.0)
    x_b = curve(1.0)

    lhs = parallel_transport(x_b, x_a, field_fn(1.0, x_b)).vec - field_fn(0.0, x_a).vec

    ts = np.linspace(0.0, 1.0, n_grid)
    integrand = []
    for t in ts:
        nabla = covariant_field_derivative(curve, field_fn, float(t), fd_step)
        integrand.append(parallel_transport(curve(float(t)), x_a, nabla).vec)
    rhs = np.trapezoid(np.array(integrand), ts, axis=0)

    resid_vec = lhs - rhs
    residual = math.sqrt(max(ambient_inner(x.spec, resid_vec, resid_vec), 0.0))
    return residual, float(ts[1] - ts[0])


# ---------------------------------------------------------------------------
# Check suites (counts and worst margins, for the CLI and acceptance runs).


@dataclass
class SuiteSummary:
    name: str
    total: int
    failures: int
    worst_margin: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_text(self) -> str:
        lines = [
            f"suite: {self.name}",
            f"checks: {self.total}",
            f"failures: {self.failures}",
            f"worst_margin: {self.worst_margin:.6e}",
        ]
        for k, v in self.details.items():
            lines.append(f"{k}: {v:.6e}" if isinstance(v, float) else f"{k}: {v}")
        return "\n".join(lines)


def _random_config(spec: ManifoldSpec, center: Point, seed: int):
    """A (curve point, velocity, target) triple with the target kept away from
    the curve point."""
    rng = np.random.default_rng(seed)
    x = random_point(spec, center, spec.D / 2, seed)
    for bump in range(100):
        p = random_point(spec, center, spec.D / 2, seed + 100_000 + bump)
        if distance(x, p) >= 0.05:
            break
    speed = 0.2 + 1.3 * rng.random()
    direction = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
    while norm(direction) < 1e-9:
        direction = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
    v = direction.scaled(speed / norm(direction))
    return x, v, p


def lemma1_bracket_suite(
    spec: ManifoldSpec, center: Point, n_configs: int, seed: int = 0, tol: float = 1e-5
) -> SuiteSummary:
    """Pointwise bracket delta*|Xdot|^2 <= <nabla log, -Xdot> <= zeta*|Xdot|^2."""
    failures = 0
    worst = math.inf
    for i in range(n_configs):
        x, v, p = _random_config(spec, center, seed + i)
        d = distance(x, p)
        pairing = covariant_log_pairing(geodesic_curve(x, v), p)
        speed2 = inner(v, v)
        lo = delta(spec.K, d) * speed2
        hi = zeta(spec.K, d) * speed2
        margin = min(pairing - (lo - tol), (hi + tol) - pairing)
        worst = min(worst, margin)
        if margin < 0:
            failures += 1
    return SuiteSummary("lemma1_bracket", n_configs, failures, worst)


def spherical_tightness_suite(
    spec: ManifoldSpec, center: Point, n_configs: int, seed: int = 0, tol: float = 1e-5
) -> SuiteSummary:
    """With log_X(p) orthogonal to Xdot on the sphere, the pairing attains the
    lower constant delta(d) exactly."""
    if spec.kind is not ManifoldKind.SPHERE:
        raise GeometryError("tightness configurations are spherical")
    rng = np.random.default_rng(seed)
    failures = 0
    worst = math.inf
    for i in range(n_configs):
        x = random_point(spec, center, spec.D / 2, seed + i)
        radial = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
        radial = radial.scaled(1.0 / norm(radial))
        d = 0.2 + (spec.D - 0.4) * rng.random()
        p = exp_map(x, radial.scaled(d))
        # velocity orthogonal to the radial direction
        w = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
        w_vec = w.vec - inner(w, radial) * radial.vec
        w = TangentVector(x, w_vec)
        if norm(w) < 1e-9:
            continue
        v = w.scaled(1.0 / norm(w))
        pairing = covariant_log_pairing(geodesic_curve(x, v), p)
        err = abs(pairing - delta(spec.K, d) * inner(v, v))
        worst = min(worst, tol - err)
        if err > tol:
            failures += 1
    return SuiteSummary("spherical_tightness", n_configs, failures, worst)


def cosine_law_suite(
    spec: ManifoldSpec, center: Point, n_triangles: int, seed: int = 0
) -> SuiteSummary:
    failures = 0
    worst = math.inf
    for i in range(n_triangles):
        a = random_point(spec, center, spec.D / 2, seed + 3 * i)
        b = random_point(spec, center, spec.D / 2, seed + 3 * i + 1)
        c = random_point(spec, center, spec.D / 2, seed + 3 * i + 2)
        res = cosine_law_check(a, b, c)
        margin = res.lhs - res.rhs
        worst = min(worst, margin)
        if not res.ok:
            failures += 1
    return SuiteSummary("cosine_law", n_triangles, failures, worst)
