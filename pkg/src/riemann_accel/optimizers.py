"""Discrete methods: Riemannian gradient descent and the semi-implicit
accelerated integrator (Options I and II).

One step of the accelerated method is the four-line update

    a_k     = beta_k * v_k - h * grad f(x_k)            (Option I)
    a_k     = beta_k * v_k - h * T[grad f(exp_{x_k}(h beta_k v_k))]   (Option II)
    x_{k+1} = exp_{x_k}(h * a_k)
    v_{k+1} = transport of a_k to x_{k+1}

where T[] carries the look-ahead gradient back to the tangent space at x_k
(in flat space this is the classical corrected-gradient form of Nesterov's
method, to which Option II reduces exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .constants import Regime, beta_schedule, zeta
from .manifolds import (
    Point,
    TangentVector,
    distance,
    exp_map,
    norm,
    parallel_transport,
)
from .objectives import Objective

EnergyFn = Callable[[int, float, Point, Optional[TangentVector]], float]


@dataclass(slots=True)
class OptimizerState:
    k: int
    x: Point
    v: TangentVector


@dataclass(frozen=True)
class RunConfig:
    """Static parameters of one optimization run."""

    regime: Regime
    h: float
    eta: float
    steps: int
    option: str = "I"
    seed: int = 0

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError(f"h must be > 0, got {self.h}")
        if self.eta <= 0:
            raise ValueError(f"eta must be > 0, got {self.eta}")
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.option not in ("I", "II"):
            raise ValueError(f"option must be 'I' or 'II', got {self.option!r}")


@dataclass(slots=True)
class TrajectoryRecord:
    k: int
    t: float
    value: float
    gap: float
    grad_norm: float
    dist_to_min: float
    diameter_flag: bool
    energy: float


@dataclass
class Trajectory:
    method: str
    h: float
    records: list[TrajectoryRecord] = field(default_factory=list)
    points: list[Point] = field(default_factory=list)
    velocities: list[Optional[TangentVector]] = field(default_factory=list)
    aborted: bool = False
    abort_reason: Optional[str] = None

    @property
    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    @property
    def gaps(self) -> np.ndarray:
        return np.array([r.gap for r in self.records])


def rgd_step(x: Point, obj: Objective, eta: float) -> Point:
    """x -> exp_x(-eta * grad f(x))."""
    if eta <= 0:
        raise ValueError(f"eta must be > 0, got {eta}")
    return exp_map(x, obj.gradient(x).scaled(-eta))


def sirnag_step(
    state: OptimizerState, obj: Objective, h: float, beta: float, option: str = "I"
) -> OptimizerState:
    """One semi-implicit accelerated step; velocity ends based at the new point."""
    if option not in ("I", "II"):
        raise ValueError(f"option must be 'I' or 'II', got {option!r}")
    x, v = state.x, state.v
    if option == "I":
        g = obj.gradient(x)
    else:
        look = exp_map(x, v.scaled(h * beta))
        g = parallel_transport(look, x, obj.gradient(look))
    a = TangentVector(x, beta * v.vec - h * g.vec)
    x_next = exp_map(x, a.scaled(h))
    v_next = parallel_transport(x, x_next, a)
    return OptimizerState(state.k + 1, x_next, v_next)


def _record(
    k: int,
    h: float,
    x: Point,
    v: Optional[TangentVector],
    obj: Objective,
    x0: Point,
    energy_fn: Optional[EnergyFn],
) -> TrajectoryRecord:
    t = k * h
    value = obj.value(x)
    g = obj.gradient(x)
    return TrajectoryRecord(
        k=k,
        t=t,
        value=value,
        gap=value - obj.f_star if obj.f_star is not None else math.nan,
        grad_norm=norm(g),
        dist_to_min=distance(x, obj.minimizer) if obj.minimizer is not None else math.nan,
        diameter_flag=distance(x0, x) > x.spec.D,
        energy=energy_fn(k, t, x, v) if energy_fn is not None else math.nan,
    )


def run(
    x0: Point,
    obj: Objective,
    config: RunConfig,
    method: str = "sirnag",
    energy_fn: Optional[EnergyFn] = None,
) -> Trajectory:
    """Drive the chosen method for config.steps steps, recording every iterate.

    A non-finite value or gradient stops the loop with ``aborted`` set; the
    offending step is left in the trajectory for inspection.  Excursions of
    the iterate beyond the working-diameter bound are flagged per record, not
    treated as failures.
    """
    if method not in ("sirnag", "rgd"):
        raise ValueError(f"unknown method {method!r}")
    spec = x0.spec
    zeta_value = zeta(spec.K, spec.D)

    traj = Trajectory(method=method, h=config.h)
    x = x0
    v: Optional[TangentVector] = (
        TangentVector(x0, np.zeros(spec.ambient_dim)) if method == "sirnag" else None
    )
    traj.points.append(x)
    traj.velocities.append(v)
    traj.records.append(_record(0, config.h, x, v, obj, x0, energy_fn))

    state = OptimizerState(0, x, v) if method == "sirnag" else None
    for k in range(config.steps):
        if method == "sirnag":
            beta = beta_schedule(config.regime, k, config.h, zeta_value)
            state = sirnag_step(state, obj, config.h, beta, config.option)
            x, v = state.x, state.v
        else:
            x = rgd_step(x, obj, config.eta)
        rec = _record(k + 1, config.h, x, v, obj, x0, energy_fn)
        traj.points.append(x)
        traj.velocities.append(v)
        traj.records.append(rec)
        if not (math.isfinite(rec.value) and math.isfinite(rec.grad_norm)):
            traj.aborted = True
            traj.abort_reason = f"non-finite value/gradient at step {k + 1}"
            break
    return traj
