import math

import numpy as np

from riemann_accel.manifolds import (
    ManifoldKind,
    ManifoldSpec,
    Point,
    TangentVector,
    ambient_inner,
    origin,
    project_to_tangent,
    random_point,
)


def euclidean(dim=3, D=4.0) -> ManifoldSpec:
    return ManifoldSpec(ManifoldKind.EUCLIDEAN, dim, 0.0, D)


def sphere(dim=3, K=1.0, D=2.8) -> ManifoldSpec:
    return ManifoldSpec(ManifoldKind.SPHERE, dim, K, D)


def hyperboloid(dim=3, K=-1.0, D=2.0) -> ManifoldSpec:
    return ManifoldSpec(ManifoldKind.HYPERBOLOID, dim, K, D)


def rand_pt(spec: ManifoldSpec, seed: int, radius=None) -> Point:
    return random_point(spec, origin(spec), radius if radius is not None else spec.D / 2, seed)


def rand_tangent(spec: ManifoldSpec, x: Point, seed: int, scale=1.0) -> TangentVector:
    rng = np.random.default_rng(seed)
    while True:
        v = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
        n = math.sqrt(max(ambient_inner(spec, v.vec, v.vec), 0.0))
        if n > 1e-9:
            return v.scaled(scale / n)
