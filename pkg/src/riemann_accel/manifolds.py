"""Exact geometry of the three constant-curvature model spaces.

Euclidean space, the round sphere and the hyperboloid (upper sheet of a
two-sheeted hyperboloid in Minkowski space) are represented in ambient
coordinates, chosen so that every geodesic operation has a closed form:

* Sphere of curvature K > 0: radius ``R = 1/sqrt(K)`` in ``R^{n+1}``,
  Euclidean ambient metric, on-manifold constraint ``<x,x> = 1/K``.
* Hyperboloid of curvature K < 0: upper sheet in ``R^{n,1}`` with the
  Minkowski form ``<x,y>_L = -x0*y0 + sum_i xi*yi``, constraint
  ``<x,x>_L = 1/K`` (note ``1/K < 0``) and ``x0 > 0``.

All operations are pure functions; nothing here holds mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Drift beyond this is a hard error; below it we silently re-project.
HARD_DRIFT_TOL = 1e-6
# Margin subtracted from pi*R when rejecting near-antipodal sphere inputs.
ANTIPODAL_MARGIN = 1e-8
# Geodesic parameters below this go through the Taylor branches.
SMALL_ANGLE = 1e-6


class GeometryError(ValueError):
    """Violation of a geometric contract (wrong manifold, off-manifold point...)."""


class InjectivityRadiusError(GeometryError):
    """Requested geodesic leaves the ball where exp is a diffeomorphism."""


class AntipodalError(GeometryError):
    """log/transport requested at (or too close to) the spherical cut locus."""


class ManifoldKind(Enum):
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    HYPERBOLOID = "hyperboloid"


@dataclass(frozen=True)
class ManifoldSpec:
    """Which model space, its dimension, curvature and working-diameter bound.

    ``D`` is the a-priori bound on the diameter of the working domain; it is
    configuration, not something adapted from trajectories.  On the sphere it
    must stay strictly below the injectivity diameter ``pi/sqrt(K)``.
    """

    kind: ManifoldKind
    dim: int
    K: float
    D: float

    def __post_init__(self):
        if self.dim < 1:
            raise GeometryError(f"dim must be >= 1, got {self.dim}")
        if self.D <= 0:
            raise GeometryError(f"D must be > 0, got {self.D}")
        if self.kind is ManifoldKind.EUCLIDEAN and self.K != 0.0:
            raise GeometryError("Euclidean space requires K = 0")
        if self.kind is ManifoldKind.SPHERE:
            if self.K <= 0:
                raise GeometryError("sphere requires K > 0")
            if self.D >= math.pi / math.sqrt(self.K):
                raise GeometryError(
                    f"sphere working diameter D={self.D} must be < pi/sqrt(K)"
                )
        if self.kind is ManifoldKind.HYPERBOLOID and self.K >= 0:
            raise GeometryError("hyperboloid requires K < 0")

    @property
    def ambient_dim(self) -> int:
        return self.dim if self.kind is ManifoldKind.EUCLIDEAN else self.dim + 1

    @property
    def radius(self) -> float:
        """Embedding radius 1/sqrt(|K|); infinite for the flat case."""
        if self.kind is ManifoldKind.EUCLIDEAN:
            return math.inf
        return 1.0 / math.sqrt(abs(self.K))

    @property
    def injectivity_diameter(self) -> float:
        return math.pi * self.radius if self.kind is ManifoldKind.SPHERE else math.inf


def ambient_inner(spec: ManifoldSpec, a: np.ndarray, b: np.ndarray) -> float:
    """Ambient metric pairing: Euclidean dot, or the Minkowski form."""
    if spec.kind is ManifoldKind.HYPERBOLOID:
        return float(-a[0] * b[0] + a[1:] @ b[1:])
    return float(a @ b)


@dataclass(slots=True)
class Point:
    """A point on the model space, in ambient coordinates."""

    spec: ManifoldSpec
    coords: np.ndarray

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=float)
        if self.coords.shape != (self.spec.ambient_dim,):
            raise GeometryError(
                f"expected coords of shape ({self.spec.ambient_dim},), "
                f"got {self.coords.shape}"
            )
        drift = _on_manifold_drift(self.spec, self.coords)
        if drift > HARD_DRIFT_TOL:
            raise GeometryError(f"point is off-manifold by {drift:.3e}")
        if self.spec.kind is ManifoldKind.HYPERBOLOID and self.coords[0] <= 0:
            raise GeometryError("hyperboloid point must lie on the upper sheet")


@dataclass(slots=True)
class TangentVector:
    """An ambient vector constrained to the tangent space at its base point."""

    base: Point
    vec: np.ndarray

    def __post_init__(self):
        self.vec = np.asarray(self.vec, dtype=float)
        if self.vec.shape != self.base.coords.shape:
            raise GeometryError("tangent vector has wrong ambient dimension")
        drift = _tangency_drift(self.base, self.vec)
        if drift > HARD_DRIFT_TOL:
            raise GeometryError(f"vector is non-tangent by {drift:.3e}")

    def scaled(self, c: float) -> "TangentVector":
        return TangentVector(self.base, c * self.vec)


def _on_manifold_drift(spec: ManifoldSpec, coords: np.ndarray) -> float:
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return 0.0
    return abs(ambient_inner(spec, coords, coords) - 1.0 / spec.K)


def _tangency_drift(base: Point, vec: np.ndarray) -> float:
    if base.spec.kind is ManifoldKind.EUCLIDEAN:
        return 0.0
    return abs(ambient_inner(base.spec, base.coords, vec))


def _reproject_coords(spec: ManifoldSpec, coords: np.ndarray) -> np.ndarray:
    """Snap ambient coordinates back onto the manifold (cheap drift repair)."""
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return coords
    if spec.kind is ManifoldKind.SPHERE:
        return coords * (spec.radius / np.linalg.norm(coords))
    spatial = coords[1:]
    x0 = math.sqrt(spec.radius**2 + float(spatial @ spatial))
    return np.concatenate(([x0], spatial))


def _reproject_tangent(base: Point, vec: np.ndarray) -> np.ndarray:
    spec = base.spec
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return vec
    coeff = ambient_inner(spec, base.coords, vec) / (1.0 / spec.K)
    return vec - coeff * base.coords


def inner(u: TangentVector, v: TangentVector) -> float:
    """Riemannian inner product of two vectors in the same tangent space."""
    if u.base.spec != v.base.spec:
        raise GeometryError("tangent vectors live on different manifolds")
    return ambient_inner(u.base.spec, u.vec, v.vec)


def norm(v: TangentVector) -> float:
    return math.sqrt(max(inner(v, v), 0.0))


# ---------------------------------------------------------------------------
# Stable scalar ratios of the geodesic parameter.  Each switches to a 4-term
# Taylor series below SMALL_ANGLE to avoid 0/0.

def sin_ratio(t: float) -> float:
    """sin(t)/t."""
    if abs(t) < SMALL_ANGLE:
        t2 = t * t
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
    return math.sin(t) / t


def sinh_ratio(t: float) -> float:
    """sinh(t)/t."""
    if abs(t) < SMALL_ANGLE:
        t2 = t * t
        return 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    return math.sinh(t) / t


def cot_ratio(t: float) -> float:
    """t*cot(t) = t/tan(t); negative on (pi/2, pi)."""
    if abs(t) < SMALL_ANGLE:
        t2 = t * t
        return 1.0 - t2 / 3.0 - t2 * t2 / 45.0 - 2.0 * t2 * t2 * t2 / 945.0
    return t / math.tan(t)


def coth_ratio(t: float) -> float:
    """t*coth(t)."""
    if abs(t) < SMALL_ANGLE:
        t2 = t * t
        return 1.0 + t2 / 3.0 - t2 * t2 / 45.0 + 2.0 * t2 * t2 * t2 / 945.0
    return t / math.tanh(t)


# ---------------------------------------------------------------------------
# Geodesic maps.

def exp_map(x: Point, v: TangentVector) -> Point:
    """Endpoint at time 1 of the geodesic leaving x with velocity v."""
    _require_base(v, x)
    spec = x.spec
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return Point(spec, x.coords + v.vec)

    speed = norm(v)
    if speed == 0.0:
        return Point(spec, x.coords.copy())
    R = spec.radius
    theta = speed / R

    if spec.kind is ManifoldKind.SPHERE:
        if speed >= spec.injectivity_diameter:
            raise InjectivityRadiusError(
                f"|v| = {speed:.6g} >= pi/sqrt(K) = {spec.injectivity_diameter:.6g}"
            )
        coords = math.cos(theta) * x.coords + sin_ratio(theta) * v.vec
    else:
        coords = math.cosh(theta) * x.coords + sinh_ratio(theta) * v.vec
    return Point(spec, _reproject_coords(spec, coords))


def distance(x: Point, y: Point) -> float:
    """Intrinsic (geodesic) distance.

    Computed from the tangential component of y at x rather than by
    acos/acosh of the ambient pairing, which would lose half the float
    precision near coincident points.
    """
    _require_same_manifold(x, y)
    spec = x.spec
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return float(np.linalg.norm(y.coords - x.coords))
    R = spec.radius
    c = ambient_inner(spec, x.coords, y.coords) / R**2
    u = _reproject_tangent(x, y.coords)
    s = math.sqrt(max(ambient_inner(spec, u, u), 0.0)) / R
    if spec.kind is ManifoldKind.SPHERE:
        return R * math.atan2(s, c)
    return R * math.asinh(s)


def log_map(x: Point, y: Point) -> TangentVector:
    """Inverse of exp_map at x; its norm equals distance(x, y).

    The direction is the component of y orthogonal (in the ambient metric)
    to x - exactly the initial velocity of the connecting geodesic for both
    curved models - rescaled to length d(x, y).
    """
    _require_same_manifold(x, y)
    spec = x.spec
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return TangentVector(x, y.coords - x.coords)

    R = spec.radius
    u = _reproject_tangent(x, y.coords)
    u_norm = math.sqrt(max(ambient_inner(spec, u, u), 0.0))
    if spec.kind is ManifoldKind.SPHERE:
        c = ambient_inner(spec, x.coords, y.coords) / R**2
        d = R * math.atan2(u_norm / R, c)
        if d > spec.injectivity_diameter - ANTIPODAL_MARGIN:
            raise AntipodalError(
                f"log is singular near the cut locus: d = {d:.6g} vs "
                f"pi/sqrt(K) = {spec.injectivity_diameter:.6g}"
            )
    else:
        d = R * math.asinh(u_norm / R)
    if d == 0.0 or u_norm == 0.0:
        return TangentVector(x, np.zeros_like(x.coords))
    return TangentVector(x, (d / u_norm) * u)


def parallel_transport(x: Point, y: Point, u: TangentVector) -> TangentVector:
    """Carry u along the unique geodesic from x to y, preserving the metric.

    The component of u orthogonal to the geodesic is unchanged as an ambient
    vector; the component along the geodesic direction e rotates with it,
    landing on the unit tangent of the same geodesic at y.
    """
    _require_base(u, x)
    _require_same_manifold(x, y)
    spec = x.spec
    if spec.kind is ManifoldKind.EUCLIDEAN:
        return TangentVector(y, u.vec.copy())

    v = log_map(x, y)  # raises AntipodalError near the sphere cut locus
    d = norm(v)
    if d < 1e-12 * spec.radius:
        return TangentVector(y, _reproject_tangent(y, u.vec))
    R = spec.radius
    theta = d / R
    e = v.vec / d
    a = ambient_inner(spec, u.vec, e)
    w = u.vec - a * e
    if spec.kind is ManifoldKind.SPHERE:
        e_at_y = math.cos(theta) * e - (math.sin(theta) / R) * x.coords
    else:
        e_at_y = math.cosh(theta) * e + (math.sinh(theta) / R) * x.coords
    return TangentVector(y, _reproject_tangent(y, w + a * e_at_y))


def project_to_tangent(x: Point, w: np.ndarray) -> TangentVector:
    """Metric-orthogonal projection of an ambient vector onto the tangent space."""
    w = np.asarray(w, dtype=float)
    if w.shape != x.coords.shape:
        raise GeometryError("ambient vector has wrong dimension")
    return TangentVector(x, _reproject_tangent(x, w))


def origin(spec: ManifoldSpec) -> Point:
    """A canonical base point: zero, the pole (last axis), or the apex."""
    coords = np.zeros(spec.ambient_dim)
    if spec.kind is ManifoldKind.SPHERE:
        coords[-1] = spec.radius
    elif spec.kind is ManifoldKind.HYPERBOLOID:
        coords[0] = spec.radius
    return Point(spec, coords)


def random_point(spec: ManifoldSpec, center: Point, radius: float, seed: int) -> Point:
    """Seeded draw inside the geodesic ball of the given radius around center."""
    if center.spec != spec:
        raise GeometryError("center does not belong to the given manifold")
    if radius < 0:
        raise GeometryError("radius must be >= 0")
    if radius > spec.D / 2:
        raise GeometryError(f"radius {radius} exceeds D/2 = {spec.D / 2}")
    if spec.kind is ManifoldKind.SPHERE and radius >= spec.injectivity_diameter:
        raise InjectivityRadiusError("radius beyond the spherical injectivity radius")
    if radius == 0.0:
        return Point(spec, center.coords.copy())

    rng = np.random.default_rng(seed)
    while True:
        direction = _reproject_tangent(center, rng.standard_normal(spec.ambient_dim))
        length = math.sqrt(max(ambient_inner(spec, direction, direction), 0.0))
        if length > 1e-12:
            break
    r = radius * rng.random() ** (1.0 / spec.dim)
    return exp_map(center, TangentVector(center, (r / length) * direction))


def _require_same_manifold(x: Point, y: Point):
    if x.spec != y.spec:
        raise GeometryError("points live on different manifolds")


def _require_base(v: TangentVector, x: Point):
    if v.base.spec != x.spec or not np.array_equal(v.base.coords, x.coords):
        raise GeometryError("tangent vector is not based at the expected point")
