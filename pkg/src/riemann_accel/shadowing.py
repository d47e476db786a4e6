"""Empirical shadowing diagnostics for Riemannian gradient descent.

Three ingredients, each checkable on its own:

* the time-h flow samples of the descent ODE form a pseudo-orbit of the
  gradient-descent map with per-step defect <= C h^2 (C fitted, never assumed),
* the gradient-descent map contracts with factor xi = lam*(zeta - h*mu) once
  mu is large enough relative to curvature,
* when both hold, the flow is shadowed by the descent orbit started at the
  same point within epsilon = C h^2 / (1 - rho).

Theorem-precondition failures are reported, not silently skipped: at many
natural parameter choices the curvature condition mu > (lam*zeta - 1)/(lam*h)
is genuinely restrictive, and that is informative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constants import lam, xi, zeta
from .continuous import ReferenceTrajectory, gradient_flow
from .manifolds import Point, distance, norm, random_point
from .objectives import Objective
from .optimizers import rgd_step

FLOW_REFINEMENT = 1000  # flow ground truth runs at h_ref = h / FLOW_REFINEMENT


@dataclass
class ShadowingReport:
    """Everything the shadowing analysis produced, theorem-side and empirical."""

    h: float
    n_steps: int
    mu: Optional[float]
    K: float
    D: float
    zeta: float
    lam: float
    xi: Optional[float]
    mu_threshold: Optional[float]
    precondition_holds: Optional[bool]
    defects: np.ndarray
    delta_hat: float
    C_fit: float
    rho_hat: Optional[float]
    epsilon: Optional[float]
    epsilon_min: Optional[float]
    sup_distance: float
    verdict: Optional[bool]
    ell: float

    def to_text(self) -> str:
        def fmt(v):
            if v is None:
                return "n/a"
            if isinstance(v, bool):
                return "yes" if v else "no"
            if isinstance(v, float):
                return f"{v:.10g}"
            return str(v)

        lines = [
            ("h", self.h),
            ("n_steps", self.n_steps),
            ("mu", self.mu),
            ("K", self.K),
            ("D", self.D),
            ("zeta", self.zeta),
            ("lambda", self.lam),
            ("xi", self.xi),
            ("mu_threshold", self.mu_threshold),
            ("precondition_mu_greater_than_threshold", self.precondition_holds),
            ("max_defect", self.delta_hat),
            ("C_fit", self.C_fit),
            ("rho_hat", self.rho_hat),
            ("epsilon", self.epsilon),
            ("epsilon_min", self.epsilon_min),
            ("sup_shadowing_distance", self.sup_distance),
            ("verdict_sup_le_epsilon", self.verdict),
            ("ell_gradient_bound", self.ell),
        ]
        out = [f"{k}: {fmt(v)}" for k, v in lines]
        if self.precondition_holds is False:
            out.append(
                "note: contraction precondition failed (xi >= 1); "
                "no shadowing verdict is claimed"
            )
        return "\n".join(out)


def pseudo_orbit_defect(
    flow: ReferenceTrajectory, obj: Objective, h: float
) -> tuple[np.ndarray, float]:
    """Per-step defect of the flow samples under one gradient-descent step.

    ``flow`` must be sampled exactly on the grid t = k*h and computed at
    h_ref <= h/1000 so the reference error is negligible against C h^2.
    Returns (defects, fitted C = max defect / h^2).
    """
    ts = flow.times
    if ts.size < 2:
        raise ValueError("flow must contain at least two samples")
    if not np.allclose(ts, np.arange(ts.size) * h, rtol=0, atol=1e-9 * max(h, 1.0)):
        raise ValueError("flow samples are not on the t = k*h grid")
    if flow.h_ref > h / FLOW_REFINEMENT * (1 + 1e-12):
        raise ValueError(
            f"flow reference step {flow.h_ref} is too coarse; need <= h/{FLOW_REFINEMENT}"
        )
    defects = np.array(
        [
            distance(flow.points[k + 1], rgd_step(flow.points[k], obj, h))
            for k in range(ts.size - 1)
        ]
    )
    return defects, float(defects.max() / h**2)


def contraction_ratio(
    obj: Objective, h: float, pairs: list[tuple[Point, Point]]
) -> float:
    """Worst observed one-step contraction factor of the descent map.

    Coincident pairs are skipped (the ratio is 0/0 there).
    """
    worst = 0.0
    used = 0
    for x1, x2 in pairs:
        d0 = distance(x1, x2)
        if d0 == 0.0:
            continue
        d1 = distance(rgd_step(x1, obj, h), rgd_step(x2, obj, h))
        worst = max(worst, d1 / d0)
        used += 1
    if used == 0:
        raise ValueError("all pairs were coincident")
    return worst


def shadowing_gap(
    orbit: list[Point],
    flow: ReferenceTrajectory,
    h: float,
    C_fit: float,
    rho_hat: Optional[float],
    mu: Optional[float],
) -> ShadowingReport:
    """Sup distance between the descent orbit and the flow samples, plus the
    theorem-side quantities and (when the contraction precondition holds) the
    epsilon-verdict."""
    if distance(orbit[0], flow.points[0]) > 1e-12:
        raise ValueError("orbit and flow must share the initial point")
    spec = orbit[0].spec
    n = min(len(orbit), len(flow.points))
    sup = max(distance(orbit[k], flow.points[k]) for k in range(n))
    defect_cap = C_fit * h**2

    z = zeta(spec.K, spec.D)
    l = lam(spec.K, spec.D)
    xi_value = xi(spec.K, spec.D, h, mu) if mu is not None else None
    mu_threshold = (l * z - 1.0) / (l * h)
    precondition = (mu > mu_threshold) if mu is not None else None

    epsilon = epsilon_min = verdict = None
    if precondition and rho_hat is not None and rho_hat < 1.0:
        epsilon = defect_cap / (1.0 - rho_hat)
        verdict = sup <= epsilon
    if mu is not None and mu > 0:
        epsilon_min = 4.0 * C_fit * (l * z - 1.0) / (l**2 * mu**2)

    return ShadowingReport(
        h=h,
        n_steps=n - 1,
        mu=mu,
        K=spec.K,
        D=spec.D,
        zeta=z,
        lam=l,
        xi=xi_value,
        mu_threshold=mu_threshold,
        precondition_holds=precondition,
        defects=np.array([]),
        delta_hat=defect_cap,
        C_fit=C_fit,
        rho_hat=rho_hat,
        epsilon=epsilon,
        epsilon_min=epsilon_min,
        sup_distance=sup,
        verdict=verdict,
        ell=math.nan,
    )


def run_shadowing_lab(
    obj: Objective,
    x0: Point,
    h: float,
    n_steps: int,
    n_pairs: int = 200,
    seed: int = 0,
) -> ShadowingReport:
    """Full pipeline: fine flow, defects and C, descent orbit, contraction
    pairs around the minimizer (or x0), and the assembled report."""
    spec = x0.spec
    flow = gradient_flow(
        x0, obj, h / FLOW_REFINEMENT, n_steps * h, sample_every=FLOW_REFINEMENT
    )
    defects, C_fit = pseudo_orbit_defect(flow, obj, h)

    orbit = [x0]
    for _ in range(n_steps):
        orbit.append(rgd_step(orbit[-1], obj, h))

    center = obj.minimizer if obj.minimizer is not None else x0
    pairs = [
        (
            random_point(spec, center, spec.D / 2, seed + 2 * i),
            random_point(spec, center, spec.D / 2, seed + 2 * i + 1),
        )
        for i in range(n_pairs)
    ]
    rho_hat = contraction_ratio(obj, h, pairs)

    report = shadowing_gap(orbit, flow, h, C_fit, rho_hat, obj.mu)
    report.defects = defects
    report.ell = max(norm(obj.gradient(x)) for x in flow.points)
    return report
