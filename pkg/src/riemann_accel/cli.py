"""Experiment harness: figure reproductions, check suites, generic runs.

Commands
--------
riemann-accel fig1  [--config PATH] [--seed N] [--out PATH] [--paper-scale]
riemann-accel fig2  [--config PATH] [--seed N] [--out PATH] [--paper-scale]
riemann-accel fig3  [--config PATH] [--seed N] [--out PATH] [--paper-scale]
riemann-accel check <geometry|lyapunov|shadowing|reduction|all> [--out PATH] ...
riemann-accel run   --config PATH [--seed N] [--out PATH]

Every CSV is deterministic per (config, seed): comma-separated, LF endings,
one header row, floats printed with 17 significant digits.  Exit codes:
0 success, 1 invariant failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import yaml

from .constants import Convex, StronglyConvex, WeaklyQuasiConvex, beta_schedule, rate_bound, zeta
from .continuous import energy_series, gradient_flow, ode_reference, rate_monitor
from .geometry_checks import (
    cosine_law_suite,
    lemma1_bracket_suite,
    spherical_tightness_suite,
)
from .manifolds import (
    GeometryError,
    ManifoldKind,
    ManifoldSpec,
    Point,
    TangentVector,
    distance,
    exp_map,
    inner,
    log_map,
    norm,
    origin,
    parallel_transport,
    project_to_tangent,
    random_point,
)
from .objectives import half_squared_distance, make_ill_conditioned, rayleigh_objective
from .optimizers import OptimizerState, RunConfig, rgd_step, run, sirnag_step
from .shadowing import run_shadowing_lab

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    """Bad or inconsistent experiment configuration."""


# ---------------------------------------------------------------------------
# Serialization helpers


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def write_csv(path: str, header: Sequence[str], rows, comments: Sequence[str] = ()):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in comments:
            f.write(f"# {line}\n")
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row))
            f.write("\n")


def write_matrix(path: str, Q: np.ndarray):
    """Matrix file: first line m, then m rows of m space-separated reals."""
    m = Q.shape[0]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{m}\n")
        for row in Q:
            f.write(" ".join(fmt_float(float(v)) for v in row) + "\n")


def read_matrix(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as f:
        m = int(f.readline())
        Q = np.loadtxt(f, max_rows=m)
    if Q.shape != (m, m):
        raise ConfigError(f"matrix file {path}: expected {m}x{m}, got {Q.shape}")
    return Q


def load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            cfg = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse config {path}: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path} must be a mapping")
    return cfg


def _merge(defaults: dict, cfg: dict, **flag_overrides) -> dict:
    out = dict(defaults)
    unknown = set(cfg) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    out.update(cfg)
    for k, v in flag_overrides.items():
        if v is not None:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# Shared experiment setup


def _hyperbolic_toy(dim: int, K: float, D: float, r0: float, seed: int):
    """The hyperbolic toy problem: half squared distance to a fixed target,
    started at geodesic distance r0 from it (seeded direction)."""
    spec = ManifoldSpec(ManifoldKind.HYPERBOLOID, dim, K, D)
    p = origin(spec)
    obj = half_squared_distance(p)
    rng = np.random.default_rng(seed)
    direction = project_to_tangent(p, rng.standard_normal(spec.ambient_dim))
    while norm(direction) < 1e-9:
        direction = project_to_tangent(p, rng.standard_normal(spec.ambient_dim))
    x0 = exp_map(p, direction.scaled(r0 / norm(direction)))
    return spec, p, obj, x0


FIG1_DEFAULTS = {
    "dim": 2, "K": -1.0, "D": 1.0, "h": 0.1, "steps": 1000,
    "r0": 0.45, "seed": 0, "option_a": "I", "option_b": "II",
}


def cmd_fig1(cfg: dict, out: str) -> int:
    spec, p, obj, x0 = _hyperbolic_toy(cfg["dim"], cfg["K"], cfg["D"], cfg["r0"], cfg["seed"])
    h, steps = cfg["h"], cfg["steps"]
    z = zeta(spec.K, spec.D)
    R = norm(log_map(x0, p))

    runs = [
        (f"sirnag_{cfg['option_a']}", run(x0, obj, RunConfig(Convex(), h, h * h, steps, cfg["option_a"]))),
        (f"sirnag_{cfg['option_b']}", run(x0, obj, RunConfig(Convex(), h, h * h, steps, cfg["option_b"]))),
        ("rgd", run(x0, obj, RunConfig(Convex(), h, h * h, steps), method="rgd")),
    ]
    rows = []
    for name, traj in runs:
        for rec in traj.records:
            bound = rate_bound(Convex(), rec.t, R, z) if rec.t > 0 else math.inf
            rows.append((rec.k, rec.t, name, rec.gap, bound))
    write_csv(
        out,
        ("k", "t", "method", "gap", "bound"),
        rows,
        comments=[
            f"fig1 seed={cfg['seed']} K={fmt_float(spec.K)} D={fmt_float(spec.D)} "
            f"h={fmt_float(h)} steps={steps} R={fmt_float(R)} zeta={fmt_float(z)}"
        ],
    )
    print(f"fig1: wrote {out} ({len(rows)} rows, R={R:.6g}, zeta={z:.6g})")
    return EXIT_OK


FIG2_DEFAULTS = {
    "m": 500, "cond": 1e4, "steps": 5000, "seed": 0,
    "option": "I", "D": 3.1, "matrix_path": None,
}
FIG2_MAX_DIM = 20_000


def cmd_fig2(cfg: dict, out: str, paper_scale: bool) -> int:
    m = 5000 if paper_scale and cfg["m"] == FIG2_DEFAULTS["m"] else cfg["m"]
    if m > FIG2_MAX_DIM:
        raise ConfigError(f"m = {m} exceeds the memory guard ({FIG2_MAX_DIM})")
    spec = ManifoldSpec(ManifoldKind.SPHERE, m - 1, 1.0, cfg["D"])
    Q = (
        read_matrix(cfg["matrix_path"])
        if cfg["matrix_path"]
        else make_ill_conditioned(m, cfg["cond"], cfg["seed"])
    )
    if Q.shape[0] != m:
        raise ConfigError(f"matrix size {Q.shape[0]} does not match m = {m}")
    obj = rayleigh_objective(Q, spec)
    lam_max = -obj.f_star
    eta = 1.0 / lam_max
    h = math.sqrt(eta)

    rng = np.random.default_rng(cfg["seed"])
    x0 = Point(spec, _normalized(rng.standard_normal(m)))
    steps = cfg["steps"]

    acc = run(x0, obj, RunConfig(Convex(), h, eta, steps, cfg["option"]))
    rgd = run(x0, obj, RunConfig(Convex(), h, eta, steps), method="rgd")
    rows = [(rec.k, "sirnag", rec.gap) for rec in acc.records]
    rows += [(rec.k, "rgd", rec.gap) for rec in rgd.records]
    write_csv(
        out,
        ("k", "method", "gap"),
        rows,
        comments=[
            f"fig2 seed={cfg['seed']} m={m} cond={fmt_float(float(cfg['cond']))} "
            f"lambda_max={fmt_float(lam_max)} eta={fmt_float(eta)} h={fmt_float(h)} "
            f"steps={steps} option={cfg['option']}"
        ],
    )
    print(f"fig2: wrote {out} (m={m}, eta={eta:.3g}, h={h:.3g})")
    return EXIT_OK


def _normalized(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


FIG3_DEFAULTS = {
    "dim": 2, "K": -1.0, "D": 1.0, "r0": 0.45, "seed": 0,
    "coarse_h": (0.2, 0.1, 0.05, 0.025), "h_ref": 1e-4, "T": 10.0,
}


def cmd_fig3(cfg: dict, out: str, paper_scale: bool) -> int:
    h_ref = 1e-5 if paper_scale and cfg["h_ref"] == FIG3_DEFAULTS["h_ref"] else cfg["h_ref"]
    spec, p, obj, x0 = _hyperbolic_toy(cfg["dim"], cfg["K"], cfg["D"], cfg["r0"], cfg["seed"])
    T = cfg["T"]
    coarse = list(cfg["coarse_h"])

    base = min(coarse)
    stride = round(base / h_ref)
    if abs(stride * h_ref - base) > 1e-12:
        raise ConfigError(f"h_ref {h_ref} does not divide the coarsest grid {base}")
    ref = ode_reference(x0, obj, Convex(), h_ref, T, sample_every=stride)

    rows, summary = [], []
    for h in coarse:
        per = round(h / base)
        if abs(per * base - h) > 1e-12:
            raise ConfigError(f"coarse step {h} is not a multiple of {base}")
        steps = round(T / h)
        traj = run(x0, obj, RunConfig(Convex(), h, h * h, steps, "I"))
        peak = 0.0
        for k, x_k in enumerate(traj.points):
            err = distance(x_k, ref.points[k * per])
            peak = max(peak, err)
            rows.append((h, k, k * h, err))
        summary.append((h, peak))

    write_csv(
        out,
        ("h", "k", "t", "error"),
        rows,
        comments=[
            f"fig3 seed={cfg['seed']} K={fmt_float(spec.K)} D={fmt_float(spec.D)} "
            f"h_ref={fmt_float(h_ref)} T={fmt_float(T)}"
        ],
    )
    summary_path = summary_path_for(out)
    write_csv(summary_path, ("h", "peak_error"), summary)
    print(f"fig3: wrote {out} and {summary_path}; peaks: " +
          ", ".join(f"h={h:g}:{pk:.4g}" for h, pk in summary))
    return EXIT_OK


def summary_path_for(out: str) -> str:
    return (out[:-4] if out.endswith(".csv") else out) + ".summary.csv"


# ---------------------------------------------------------------------------
# Check suites


@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str


def _report(items: list[CheckItem], out: Optional[str]) -> int:
    lines = [f"{'PASS' if it.ok else 'FAIL'} {it.name}: {it.detail}" for it in items]
    failures = sum(not it.ok for it in items)
    lines.append(f"total: {len(items)} checks, {failures} failures")
    text = "\n".join(lines)
    print(text)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


def _geometry_specs():
    return [
        ManifoldSpec(ManifoldKind.EUCLIDEAN, 10, 0.0, 4.0),
        ManifoldSpec(ManifoldKind.SPHERE, 3, 1.0, 2.8),
        ManifoldSpec(ManifoldKind.HYPERBOLOID, 3, -1.0, 2.0),
    ]


def check_geometry_core(seed: int = 0, n_samples: int = 1000) -> list[CheckItem]:
    """Round trips, log-norm consistency and transport isometry per manifold."""
    items = []
    rng = np.random.default_rng(seed)
    for spec in _geometry_specs():
        c = origin(spec)
        worst_rt, worst_norm, worst_iso, worst_pair = 0.0, 0.0, 0.0, 0.0
        for i in range(n_samples):
            x = random_point(spec, c, spec.D / 2, seed + 2 * i)
            y = random_point(spec, c, spec.D / 2, seed + 2 * i + 1)
            v = log_map(x, y)
            worst_rt = max(worst_rt, distance(exp_map(x, v), y))
            worst_norm = max(worst_norm, abs(norm(v) - distance(x, y)))
            u = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
            w = project_to_tangent(x, rng.standard_normal(spec.ambient_dim))
            gu = parallel_transport(x, y, u)
            gw = parallel_transport(x, y, w)
            worst_iso = max(worst_iso, abs(norm(gu) - norm(u)))
            worst_pair = max(worst_pair, abs(inner(gu, gw) - inner(u, w)))
        kind = spec.kind.value
        items.append(CheckItem(
            f"round_trip[{kind}]", worst_rt < 1e-9, f"worst residual {worst_rt:.3e}"))
        items.append(CheckItem(
            f"log_norm[{kind}]", worst_norm < 1e-10, f"worst |log|-d gap {worst_norm:.3e}"))
        items.append(CheckItem(
            f"transport_isometry[{kind}]", worst_iso < 1e-10 and worst_pair < 1e-10,
            f"worst norm drift {worst_iso:.3e}, worst pairing drift {worst_pair:.3e}"))
    return items


def check_lemma1(seed: int = 0, n_configs: int = 1000) -> list[CheckItem]:
    """Covariant-derivative bracket and the spherical tightness configurations."""
    items = []
    sph = _geometry_specs()[1]
    hyp = _geometry_specs()[2]
    for spec in (sph, hyp):
        s = lemma1_bracket_suite(spec, origin(spec), n_configs, seed=seed)
        items.append(CheckItem(
            f"lemma1_bracket[{spec.kind.value}]", s.ok,
            f"{s.total} configs, worst margin {s.worst_margin:.3e}"))
    s = spherical_tightness_suite(sph, origin(sph), n_configs, seed=seed)
    items.append(CheckItem(
        "spherical_tightness", s.ok, f"{s.total} configs, worst margin {s.worst_margin:.3e}"))
    return items


def check_cosine_law(seed: int = 0, n_triangles: int = 1000) -> list[CheckItem]:
    items = []
    for spec in _geometry_specs():
        s = cosine_law_suite(spec, origin(spec), n_triangles, seed=seed)
        items.append(CheckItem(
            f"cosine_law[{spec.kind.value}]", s.ok,
            f"{s.total} triangles, worst margin {s.worst_margin:.3e}"))
    return items


def check_geometry(seed: int = 0, n_samples: int = 1000) -> list[CheckItem]:
    return (
        check_geometry_core(seed, n_samples)
        + check_lemma1(seed, n_samples)
        + check_cosine_law(seed, n_samples)
    )


def check_lyapunov(seed: int = 0, h_ref: float = 1e-4, T: float = 10.0) -> list[CheckItem]:
    spec, p, obj, x0 = _hyperbolic_toy(2, -1.0, 1.0, 0.45, seed)
    z = zeta(spec.K, spec.D)
    items = []
    regimes = [("convex", Convex()), ("wqc_alpha2", WeaklyQuasiConvex(2.0)),
               ("sc_mu1", StronglyConvex(1.0))]
    for name, regime in regimes:
        ref = ode_reference(x0, obj, regime, h_ref, T, sample_every=100)
        energies = energy_series(ref, regime, obj, z)
        slack = 1e-5 * energies[0]
        rises = np.diff(energies) - slack
        items.append(CheckItem(
            f"energy_nonincreasing[{name}]", bool(np.all(rises <= 0)),
            f"worst rise {rises.max():.3e} vs slack {slack:.3e}"))
        res = rate_monitor(ref, regime, obj, z)
        items.append(CheckItem(
            f"rate_bound[{name}]", res.all_ok, f"worst gap/bound {res.worst_ratio:.6f}"))

    flow = gradient_flow(x0, obj, h_ref, T, sample_every=100)
    for name, regime in regimes:
        res = rate_monitor(flow, regime, obj, z, dynamics="flow")
        items.append(CheckItem(
            f"flow_rate_bound[{name}]", res.all_ok, f"worst gap/bound {res.worst_ratio:.6f}"))
    return items


def check_shadowing(seed: int = 0) -> list[CheckItem]:
    items = []

    # dyadic defect slope on the hyperbolic toy
    spec, p, obj, x0 = _hyperbolic_toy(2, -1.0, 1.0, 0.45, seed)
    hs = np.array([0.02, 0.01, 0.005, 0.0025])
    maxima = []
    for h in hs:
        flow = gradient_flow(x0, obj, h / 1000, 6 * h, sample_every=1000)
        from .shadowing import pseudo_orbit_defect

        defects, _ = pseudo_orbit_defect(flow, obj, float(h))
        maxima.append(defects.max())
    slope = float(np.polyfit(np.log(hs), np.log(maxima), 1)[0])
    items.append(CheckItem(
        "defect_slope_two", abs(slope - 2.0) <= 0.2, f"log-log slope {slope:.3f}"))

    # flat strongly-convex quadratic: contraction holds and the orbit shadows
    espec = ManifoldSpec(ManifoldKind.EUCLIDEAN, 3, 0.0, 8.0)
    eobj = half_squared_distance(Point(espec, np.zeros(3)))
    ex0 = Point(espec, np.array([2.0, -1.0, 0.5]))
    rep = run_shadowing_lab(eobj, ex0, h=0.1, n_steps=60, n_pairs=200, seed=seed)
    items.append(CheckItem(
        "euclidean_sc_shadowed", bool(rep.precondition_holds and rep.verdict),
        f"sup {rep.sup_distance:.3e} <= epsilon {rep.epsilon:.3e}, rho {rep.rho_hat:.4f}"))

    # hyperbolic parameters: the theorem's mu-threshold is not met - expected,
    # and the report must say so
    hrep = run_shadowing_lab(obj, x0, h=0.1, n_steps=30, n_pairs=100, seed=seed)
    stated = "precondition" in hrep.to_text() and hrep.precondition_holds is False
    items.append(CheckItem(
        "hyperbolic_precondition_reported", stated and hrep.verdict is None,
        f"mu=1 vs threshold {hrep.mu_threshold:.4f}; report declares the failure"))
    return items


def check_reduction(seed: int = 0) -> list[CheckItem]:
    items = []
    espec = ManifoldSpec(ManifoldKind.EUCLIDEAN, 10, 0.0, 100.0)

    # constants collapse to the classical values
    flat = (zeta(0.0, 5.0), beta_schedule(Convex(), 4, 0.1, 1.0))
    items.append(CheckItem(
        "flat_constants", flat == (1.0, 0.5),
        f"zeta={flat[0]}, beta_4={flat[1]} (classical (k-1)/(k+2))"))

    # Option II + convex schedule == direct Nesterov
    A = make_ill_conditioned(10, 10.0, seed=seed)
    obj = _quadratic(espec, A)
    rng = np.random.default_rng(seed)
    x0 = Point(espec, rng.standard_normal(10))
    h = 0.3
    traj = run(x0, obj, RunConfig(Convex(), h, h * h, 100, "II"))
    x_prev = x0.coords.copy()
    x = x0.coords.copy()
    worst = 0.0
    for k in range(100):
        beta = 0.0 if k == 0 else (k - 1) / (k + 2)
        y = x + beta * (x - x_prev)
        x_prev, x = x, y - h * h * (A @ y)
        worst = max(worst, float(np.linalg.norm(traj.points[k + 1].coords - x)))
    items.append(CheckItem(
        "option_ii_equals_nesterov", worst < 1e-12, f"max deviation {worst:.3e}"))

    # Option I with beta == 0 is exactly RGD with eta = h^2
    hspec = ManifoldSpec(ManifoldKind.HYPERBOLOID, 3, -1.0, 2.0)
    hobj = half_squared_distance(origin(hspec))
    hx = random_point(hspec, origin(hspec), 0.9, seed)
    state = OptimizerState(0, hx, TangentVector(hx, np.zeros(4)))
    rx = hx
    exact = True
    for _ in range(25):
        state = sirnag_step(state, hobj, 0.25, beta=0.0, option="I")
        rx = rgd_step(rx, hobj, 0.25 * 0.25)
        exact = exact and bool(np.array_equal(state.x.coords, rx.coords))
    items.append(CheckItem("beta_zero_is_rgd", exact, "bitwise equality over 25 steps"))
    return items


def _quadratic(spec, A):
    from .objectives import Objective

    return Objective(
        value=lambda x: 0.5 * float(x.coords @ A @ x.coords),
        gradient=lambda x: TangentVector(x, A @ x.coords),
        minimizer=Point(spec, np.zeros(spec.dim)),
        f_star=0.0,
    )


CHECK_SUITES = {
    "geometry": check_geometry,
    "lyapunov": check_lyapunov,
    "shadowing": check_shadowing,
    "reduction": check_reduction,
}


def cmd_check(suite: str, seed: int, out: Optional[str]) -> int:
    if suite == "all":
        items = []
        for fn in CHECK_SUITES.values():
            items.extend(fn(seed=seed))
    elif suite in CHECK_SUITES:
        items = CHECK_SUITES[suite](seed=seed)
    else:
        raise ConfigError(f"unknown suite {suite!r}; choose from "
                          f"{sorted(CHECK_SUITES) + ['all']}")
    return _report(items, out)


# ---------------------------------------------------------------------------
# Generic run


RUN_DEFAULTS = {
    "manifold": "hyperboloid", "dim": 2, "K": -1.0, "D": 1.0,
    "objective": "half_squared_distance", "m": 50, "cond": 100.0, "matrix_path": None,
    "regime": "convex", "alpha": 2.0, "mu": 1.0,
    "method": "sirnag", "option": "I", "h": 0.1, "eta": 0.01, "steps": 100,
    "r0": 0.45, "seed": 0,
}


def _build_regime(cfg: dict):
    name = cfg["regime"]
    if name == "convex":
        return Convex()
    if name == "wqc":
        return WeaklyQuasiConvex(float(cfg["alpha"]))
    if name == "sc":
        return StronglyConvex(float(cfg["mu"]))
    raise ConfigError(f"unknown regime {name!r} (convex|wqc|sc)")


def cmd_run(cfg: dict, out: str) -> int:
    kind = cfg["manifold"]
    if cfg["objective"] == "half_squared_distance":
        if kind == "hyperboloid":
            spec, p, obj, x0 = _hyperbolic_toy(cfg["dim"], cfg["K"], cfg["D"], cfg["r0"], cfg["seed"])
        else:
            spec = ManifoldSpec(ManifoldKind[kind.upper()], cfg["dim"], cfg["K"], cfg["D"])
            p = origin(spec)
            obj = half_squared_distance(p)
            x0 = random_point(spec, p, min(cfg["r0"], spec.D / 2), cfg["seed"])
    elif cfg["objective"] == "rayleigh":
        m = cfg["m"]
        spec = ManifoldSpec(ManifoldKind.SPHERE, m - 1, 1.0, cfg["D"])
        Q = read_matrix(cfg["matrix_path"]) if cfg["matrix_path"] else make_ill_conditioned(
            m, cfg["cond"], cfg["seed"])
        obj = rayleigh_objective(Q, spec)
        x0 = Point(spec, _normalized(np.random.default_rng(cfg["seed"]).standard_normal(m)))
    else:
        raise ConfigError(f"unknown objective {cfg['objective']!r}")

    regime = _build_regime(cfg)
    rc = RunConfig(regime, float(cfg["h"]), float(cfg["eta"]), int(cfg["steps"]),
                   cfg["option"], int(cfg["seed"]))
    traj = run(x0, obj, rc, method=cfg["method"])
    rows = [
        (r.k, r.t, cfg["method"], r.value, r.gap, r.grad_norm, r.dist_to_min,
         int(r.diameter_flag))
        for r in traj.records
    ]
    write_csv(out, ("k", "t", "method", "value", "gap", "grad_norm", "dist_to_min", "flagged"),
              rows, comments=[f"run seed={cfg['seed']} objective={cfg['objective']} "
                              f"regime={cfg['regime']} method={cfg['method']}"])
    status = "aborted: " + traj.abort_reason if traj.aborted else "completed"
    print(f"run: wrote {out} ({len(rows)} records, {status})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="riemann-accel",
        description="Accelerated Riemannian optimization experiments and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("fig1", "fig2", "fig3"):
        sp = sub.add_parser(name, help=f"reproduce {name} data as CSV")
        sp.add_argument("--config", default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=f"{name}.csv")
        sp.add_argument("--paper-scale", action="store_true")
    sp = sub.add_parser("check", help="run an invariant check suite")
    sp.add_argument("suite", choices=sorted(CHECK_SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp = sub.add_parser("run", help="generic single run from a config file")
    sp.add_argument("--config", required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default="run.csv")

    args = parser.parse_args(argv)
    try:
        if args.command == "fig1":
            cfg = _merge(FIG1_DEFAULTS, load_config(args.config), seed=args.seed)
            return cmd_fig1(cfg, args.out)
        if args.command == "fig2":
            cfg = _merge(FIG2_DEFAULTS, load_config(args.config), seed=args.seed)
            return cmd_fig2(cfg, args.out, args.paper_scale)
        if args.command == "fig3":
            cfg = _merge(FIG3_DEFAULTS, load_config(args.config), seed=args.seed)
            return cmd_fig3(cfg, args.out, args.paper_scale)
        if args.command == "check":
            return cmd_check(args.suite, args.seed, args.out)
        cfg = _merge(RUN_DEFAULTS, load_config(args.config), seed=args.seed)
        return cmd_run(cfg, args.out)
    except (ConfigError, GeometryError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
