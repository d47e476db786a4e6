"""Continuous-time machinery: fine-step reference trajectories, the per-regime
Lyapunov energies, and certified-rate monitors.

The reference solution of the accelerated flow is produced by the
semi-implicit integrator itself at a tiny step (the same construction used to
draw the ground-truth curve in the step-size convergence figure), not by a
general-purpose ODE solver; a flat-space cross-check against an adaptive
integrator lives in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .constants import (
    Convex,
    Regime,
    StronglyConvex,
    WeaklyQuasiConvex,
    beta_schedule,
    flow_rate_bound,
    rate_bound,
    zeta,
)
from .manifolds import (
    Point,
    TangentVector,
    ambient_inner,
    exp_map,
    log_map,
    norm,
)
from .objectives import Objective
from .optimizers import OptimizerState, Trajectory, sirnag_step

MAX_REFERENCE_STEP = 1e-3


@dataclass
class ReferenceTrajectory:
    """Uniformly sampled fine-step solution with integrator velocities."""

    times: np.ndarray
    points: list[Point]
    velocities: list[TangentVector]
    h_ref: float

    def __post_init__(self):
        steps = np.diff(self.times)
        if steps.size and not np.allclose(steps, steps[0], rtol=0, atol=1e-12):
            raise ValueError("reference trajectory must use a uniform time grid")


def _check_reference_args(h_ref: float, T: float):
    if h_ref <= 0 or h_ref > MAX_REFERENCE_STEP:
        raise ValueError(f"h_ref must be in (0, {MAX_REFERENCE_STEP}], got {h_ref}")
    if T <= 0:
        raise ValueError(f"T must be > 0, got {T}")


def ode_reference(
    x0: Point,
    obj: Objective,
    regime: Regime,
    h_ref: float,
    T: float,
    sample_every: int = 1,
) -> ReferenceTrajectory:
    """Fine-step trajectory of the accelerated flow from rest at x0.

    Initial conditions X(0) = x0, Xdot(0) = 0; the integrator's transported
    velocity v_k is the recorded approximation of Xdot(k*h_ref).
    """
    _check_reference_args(h_ref, T)
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    spec = x0.spec
    zeta_value = zeta(spec.K, spec.D)
    n_steps = round(T / h_ref)

    state = OptimizerState(0, x0, TangentVector(x0, np.zeros(spec.ambient_dim)))
    times = [0.0]
    points = [state.x]
    velocities = [state.v]
    for k in range(n_steps):
        beta = beta_schedule(regime, k, h_ref, zeta_value)
        state = sirnag_step(state, obj, h_ref, beta, option="I")
        if not np.all(np.isfinite(state.x.coords)):
            raise FloatingPointError(f"non-finite state at t = {(k + 1) * h_ref}")
        if (k + 1) % sample_every == 0 or k + 1 == n_steps:
            times.append((k + 1) * h_ref)
            points.append(state.x)
            velocities.append(state.v)
    # drop a possibly off-grid final sample so the grid stays uniform
    if len(times) > 2 and not math.isclose(
        times[-1] - times[-2], times[1] - times[0], rel_tol=0, abs_tol=1e-12
    ):
        times.pop(), points.pop(), velocities.pop()
    return ReferenceTrajectory(np.array(times), points, velocities, h_ref)


def gradient_flow(
    x0: Point,
    obj: Objective,
    h_ref: float,
    T: float,
    sample_every: int = 1,
) -> ReferenceTrajectory:
    """Forward-Euler solution of the descent flow Xdot = -grad f(X)."""
    _check_reference_args(h_ref, T)
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    n_steps = round(T / h_ref)

    x = x0
    times = [0.0]
    points = [x]
    velocities = [obj.gradient(x).scaled(-1.0)]
    for k in range(n_steps):
        x = exp_map(x, obj.gradient(x).scaled(-h_ref))
        if not np.all(np.isfinite(x.coords)):
            raise FloatingPointError(f"non-finite state at t = {(k + 1) * h_ref}")
        if (k + 1) % sample_every == 0 or k + 1 == n_steps:
            times.append((k + 1) * h_ref)
            points.append(x)
            velocities.append(obj.gradient(x).scaled(-1.0))
    if len(times) > 2 and not math.isclose(
        times[-1] - times[-2], times[1] - times[0], rel_tol=0, abs_tol=1e-12
    ):
        times.pop(), points.pop(), velocities.pop()
    return ReferenceTrajectory(np.array(times), points, velocities, h_ref)


def lyapunov_energy(
    regime: Regime,
    t: float,
    x: Point,
    xdot: Optional[TangentVector],
    x_star: Point,
    f_gap: float,
    zeta_value: float,
) -> float:
    """The regime's monotone energy, exactly as in the convergence proofs.

    Convex:  t^2 gap + 2|-log_x(x*) + (t/2) Xdot|^2 + 2(zeta-1)|log_x(x*)|^2.
    WQC:     alpha^2 t^2 gap + 2|-log_x(x*) + (alpha t/2) Xdot|^2 + same tail.
    SC:      e^{sqrt(mu/zeta) t} ( mu/(2 zeta)|-log_x(x*) + sqrt(zeta/mu) Xdot|^2
             + gap + mu(zeta-1)/(2 zeta) |log_x(x*)|^2 ).
    """
    if x_star is None:
        raise ValueError("energy monitor requires a known minimizer")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    spec = x.spec
    log_star = log_map(x, x_star)
    log_sq = ambient_inner(spec, log_star.vec, log_star.vec)
    vel = xdot.vec if xdot is not None else np.zeros_like(x.coords)

    if isinstance(regime, StronglyConvex):
        mu = regime.mu
        mix = -log_star.vec + math.sqrt(zeta_value / mu) * vel
        inner_part = (
            mu / (2 * zeta_value) * ambient_inner(spec, mix, mix)
            + f_gap
            + mu * (zeta_value - 1) / (2 * zeta_value) * log_sq
        )
        return math.exp(math.sqrt(mu / zeta_value) * t) * inner_part

    alpha = regime.alpha if isinstance(regime, WeaklyQuasiConvex) else 1.0
    mix = -log_star.vec + (alpha * t / 2.0) * vel
    return (
        alpha**2 * t**2 * f_gap
        + 2.0 * ambient_inner(spec, mix, mix)
        + 2.0 * (zeta_value - 1.0) * log_sq
    )


@dataclass(frozen=True)
class MonitorSample:
    t: float
    gap: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class MonitorResult:
    samples: list[MonitorSample]
    all_ok: bool
    worst_ratio: float  # max gap/bound over checked samples


def rate_monitor(
    traj: Union[Trajectory, ReferenceTrajectory],
    regime: Regime,
    obj: Objective,
    zeta_value: float,
    dynamics: str = "accelerated",
    t_min: float = 0.1,
    tol: float = 1e-6,
) -> MonitorResult:
    """Check gap(t) <= bound(t) * (1 + tol) along a trajectory, for t >= t_min.

    ``dynamics`` selects between the accelerated-flow theorem bounds and the
    plain gradient-flow bounds.  Samples earlier than t_min are reported but
    not checked (the bounds blow up as t -> 0 so they hold trivially; tiny-t
    gaps are float-noise-dominated).
    """
    if obj.minimizer is None or obj.f_star is None:
        raise ValueError("rate monitor requires a known minimizer and f_star")
    if dynamics not in ("accelerated", "flow"):
        raise ValueError(f"unknown dynamics {dynamics!r}")

    if isinstance(traj, ReferenceTrajectory):
        times = traj.times
        points = traj.points
    else:
        times = traj.times
        points = traj.points
    x0 = points[0]
    R = norm(log_map(x0, obj.minimizer))
    gap0 = obj.gap(x0)

    samples = []
    worst = 0.0
    all_ok = True
    for t, x in zip(times, points):
        gap = obj.gap(x)
        if t <= 0 and not isinstance(regime, StronglyConvex):
            samples.append(MonitorSample(float(t), gap, math.inf, True))
            continue
        if dynamics == "accelerated":
            bound = rate_bound(regime, float(t), R, zeta_value, gap0)
        else:
            bound = flow_rate_bound(regime, float(t), R, gap0)
        checked = t >= t_min
        ok = (gap <= bound * (1.0 + tol)) if checked else True
        if checked and bound > 0:
            worst = max(worst, gap / bound)
        all_ok = all_ok and ok
        samples.append(MonitorSample(float(t), gap, bound, ok))
    return MonitorResult(samples, all_ok, worst)


def energy_series(
    traj: ReferenceTrajectory,
    regime: Regime,
    obj: Objective,
    zeta_value: float,
) -> np.ndarray:
    """Lyapunov energy evaluated at every sample of a reference trajectory."""
    if obj.minimizer is None:
        raise ValueError("energy monitor requires a known minimizer")
    return np.array(
        [
            lyapunov_energy(
                regime, float(t), x, v, obj.minimizer, obj.gap(x), zeta_value
            )
            for t, x, v in zip(traj.times, traj.points, traj.velocities)
        ]
    )
