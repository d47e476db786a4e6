"""Curvature/diameter constants, friction and momentum schedules, rate bounds.

The three scalar constants bracket how the squared-distance Hessian and the
geodesic maps distort under curvature:

* ``zeta``  : upper Hessian bound, >= 1, grows with negative curvature.
* ``delta`` : lower Hessian bound, <= 1, shrinks (eventually negative) with
  positive curvature and distance.
* ``lam``   : geodesic-map distortion, >= 1 in negative curvature.

``zeta`` and ``delta`` are used both pointwise (second argument = a distance)
and domain-wide (second argument = the working-diameter bound D); the two
usages must not be conflated by callers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .manifolds import cot_ratio, coth_ratio, sinh_ratio


@dataclass(frozen=True)
class Convex:
    """Geodesically convex regime; time-varying friction."""


@dataclass(frozen=True)
class WeaklyQuasiConvex:
    """alpha-weakly-quasi-convex regime; time-varying friction."""

    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")


@dataclass(frozen=True)
class StronglyConvex:
    """mu-strongly-convex regime; constant friction."""

    mu: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")


Regime = Convex | WeaklyQuasiConvex | StronglyConvex


def zeta(K_min: float, D: float) -> float:
    """Upper Hessian constant: sqrt(-K_min)*D*coth(sqrt(-K_min)*D), or 1 for K_min >= 0."""
    if D <= 0:
        raise ValueError(f"D must be > 0, got {D}")
    if K_min >= 0:
        return 1.0
    return coth_ratio(math.sqrt(-K_min) * D)


def delta(K_max: float, d: float) -> float:
    """Lower Hessian constant: sqrt(K_max)*d*cot(sqrt(K_max)*d), or 1 for K_max <= 0.

    Negative for d in (pi/(2*sqrt(K_max)), pi/sqrt(K_max)); undefined beyond.
    """
    if K_max <= 0:
        return 1.0
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    u = math.sqrt(K_max) * d
    if u >= math.pi:
        raise ValueError(f"d = {d} must be < pi/sqrt(K_max) = {math.pi / math.sqrt(K_max)}")
    return cot_ratio(u)


def lam(K: float, D: float) -> float:
    """Geodesic distortion constant: sinh(sqrt(-K)*D)/(sqrt(-K)*D), or 1 for K >= 0."""
    if D <= 0:
        raise ValueError(f"D must be > 0, got {D}")
    if K >= 0:
        return 1.0
    return sinh_ratio(math.sqrt(-K) * D)


def xi(K: float, D: float, h: float, mu: float) -> float:
    """Per-step Lipschitz factor of the gradient-descent map: lam*(zeta - h*mu)."""
    return lam(K, D) * (zeta(K, D) - h * mu)


@dataclass(frozen=True)
class ConstantSet:
    """The domain-wide constants for a given (K, D)."""

    zeta: float
    delta: float
    lam: float

    @classmethod
    def for_domain(cls, K: float, D: float) -> "ConstantSet":
        return cls(zeta=zeta(K, D), delta=delta(K, D), lam=lam(K, D))


def friction_coefficient(regime: Regime, zeta_value: float, t: float) -> float:
    """Damping coefficient of the accelerated flow for the given regime."""
    if isinstance(regime, StronglyConvex):
        rz = math.sqrt(zeta_value)
        return (1.0 / rz + rz) * math.sqrt(regime.mu)
    if t <= 0:
        raise ValueError(f"time-varying friction needs t > 0, got {t}")
    if isinstance(regime, WeaklyQuasiConvex):
        return (1.0 + 2.0 * zeta_value / regime.alpha) / t
    return (1.0 + 2.0 * zeta_value) / t


def beta_schedule(regime: Regime, k: int, h: float, zeta_value: float) -> float:
    """Momentum coefficient for step k of the semi-implicit integrator.

    The time-varying schedule is (k-1)/(k + 2*zeta/alpha); at k = 0 the raw
    formula is negative but multiplies a zero velocity, so we define beta_0 = 0
    and the first step is a pure gradient step.
    """
    if isinstance(regime, StronglyConvex):
        rz = math.sqrt(zeta_value)
        beta = 1.0 - h * (1.0 + zeta_value) * math.sqrt(regime.mu) / rz
        if not 0.0 < beta < 1.0:
            warnings.warn(
                f"strongly-convex momentum {beta:.4g} outside (0,1); "
                "step size h is too large for this mu/zeta",
                stacklevel=2,
            )
        return beta
    if k < 0:
        raise ValueError(f"step index must be >= 0, got {k}")
    if k == 0:
        return 0.0
    alpha = regime.alpha if isinstance(regime, WeaklyQuasiConvex) else 1.0
    return (k - 1.0) / (k + 2.0 * zeta_value / alpha)


def rate_bound(regime: Regime, t: float, R: float, zeta_value: float, gap0: float = 0.0) -> float:
    """Certified upper bound on the optimality gap of the accelerated flow.

    Convex: 2*zeta*R^2/t^2.  Weakly-quasi-convex: the same over alpha^2.
    Strongly convex: (mu*R^2/2 + gap0) * exp(-sqrt(mu/zeta)*t), valid at t = 0 too.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if isinstance(regime, StronglyConvex):
        return (regime.mu * R**2 / 2.0 + gap0) * math.exp(-math.sqrt(regime.mu / zeta_value) * t)
    if t == 0:
        raise ValueError("time-varying bounds need t > 0")
    if isinstance(regime, WeaklyQuasiConvex):
        return 2.0 * zeta_value * R**2 / (regime.alpha**2 * t**2)
    return 2.0 * zeta_value * R**2 / t**2


def flow_rate_bound(regime: Regime, t: float, R: float, gap0: float = 0.0) -> float:
    """Certified gap bound for plain gradient flow.

    Convex: R^2/(2t).  Weakly-quasi-convex: R^2/(2*alpha*t).
    Strongly convex: exp(-2*mu*t)*gap0.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if isinstance(regime, StronglyConvex):
        return math.exp(-2.0 * regime.mu * t) * gap0
    if t == 0:
        raise ValueError("time-varying bounds need t > 0")
    if isinstance(regime, WeaklyQuasiConvex):
        return R**2 / (2.0 * regime.alpha * t)
    return R**2 / (2.0 * t)
