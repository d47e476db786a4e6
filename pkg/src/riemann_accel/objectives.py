"""Test objectives with exact Riemannian gradients and convexity metadata."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .constants import delta, zeta
from .manifolds import (
    GeometryError,
    ManifoldKind,
    ManifoldSpec,
    Point,
    TangentVector,
    distance,
    log_map,
    project_to_tangent,
)


@dataclass(frozen=True)
class Objective:
    """A scalar objective with its Riemannian gradient and known structure.

    ``mu``/``alpha`` are set only when the objective is known to satisfy the
    corresponding convexity inequality on the working domain; ``minimizer``
    and ``f_star`` only when the optimum is known in closed form.
    """

    value: Callable[[Point], float]
    gradient: Callable[[Point], TangentVector]
    L: Optional[float] = None
    mu: Optional[float] = None
    alpha: Optional[float] = None
    minimizer: Optional[Point] = None
    f_star: Optional[float] = None

    def gap(self, x: Point) -> float:
        if self.f_star is None:
            raise ValueError("objective has no known optimal value")
        return self.value(x) - self.f_star


def half_squared_distance(p: Point) -> Objective:
    """f(x) = d(x, p)^2 / 2 with gradient -log_x(p).

    Metadata follows the squared-distance Hessian bracket on the working
    domain: strong-convexity modulus delta(K, D) (dropped when non-positive),
    smoothness max(zeta, |delta|), and exact 2-weak-quasi-convexity with
    respect to the minimizer p.
    """
    spec = p.spec
    dlt = delta(spec.K, spec.D)
    zta = zeta(spec.K, spec.D)

    def value(x: Point) -> float:
        return 0.5 * distance(x, p) ** 2

    def gradient(x: Point) -> TangentVector:
        return log_map(x, p).scaled(-1.0)

    return Objective(
        value=value,
        gradient=gradient,
        L=max(zta, abs(dlt)),
        mu=dlt if dlt > 0 else None,
        alpha=2.0,
        minimizer=p,
        f_star=0.0,
    )


def rayleigh_objective(Q: np.ndarray, spec: ManifoldSpec) -> Objective:
    """f(x) = -x^T Q x on the unit sphere; minimized by the leading eigenvector."""
    Q = np.asarray(Q, dtype=float)
    m = Q.shape[0]
    if Q.shape != (m, m):
        raise ValueError(f"Q must be square, got {Q.shape}")
    if not np.allclose(Q, Q.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(Q).max()))):
        raise ValueError("Q must be symmetric")
    if spec.kind is not ManifoldKind.SPHERE or spec.K != 1.0 or spec.dim != m - 1:
        raise GeometryError("rayleigh objective needs the unit sphere of dim m-1")

    eigenvalues, eigenvectors = np.linalg.eigh(Q)
    lam_max = float(eigenvalues[-1])
    lead = eigenvectors[:, -1]
    nz = np.flatnonzero(np.abs(lead) > 1e-12)
    if lead[nz[0]] < 0:  # deterministic sign
        lead = -lead

    def value(x: Point) -> float:
        return -float(x.coords @ Q @ x.coords)

    def gradient(x: Point) -> TangentVector:
        return project_to_tangent(x, -2.0 * (Q @ x.coords))

    return Objective(
        value=value,
        gradient=gradient,
        L=2.0 * lam_max,
        minimizer=Point(spec, lead),
        f_star=-lam_max,
    )


def make_ill_conditioned(m: int, cond: float, seed: int) -> np.ndarray:
    """Symmetric positive-definite matrix with log-uniform spectrum on [1, cond].

    The eigenbasis is a seeded random rotation, so the matrix is dense and
    deterministic per seed.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if cond < 1:
        raise ValueError(f"cond must be >= 1, got {cond}")
    eigs = np.logspace(0.0, math.log10(cond), m) if cond > 1 else np.ones(m)
    rng = np.random.default_rng(seed)
    basis, r = np.linalg.qr(rng.standard_normal((m, m)))
    basis = basis * np.sign(np.diag(r))  # fix QR sign ambiguity
    Q = (basis * eigs) @ basis.T
    return (Q + Q.T) / 2.0
