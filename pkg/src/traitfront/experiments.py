"""Experiment orchestration: run a pipeline, persist outputs, emit a manifest.

An Experiment names one of the canned pipelines, a run configuration, an
output directory, and a seed.  `run_experiment` executes it, writes the CSV
artifacts (deterministic given config and seed), and always leaves a
manifest.json behind — including when a solver raises, in which case the
manifest records the error and the exit code the CLI will return.

Output directories are append-only: a fresh subdirectory is allocated per
invocation (kind, kind-002, kind-003, ...) rather than overwriting previous
results, which keeps cross-run diffs honest.
"""

from __future__ import annotations

import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import hamilton_jacobi as hj
from . import reaction_diffusion as rd
from . import storage
from ._kernels import current_backend
from .acceptance import (
    AcceptanceContext,
    evaluate_criterion_1,
    evaluate_criterion_3,
    evaluate_criterion_4,
)
from .config import serialize_config, validate_config
from .eikonal import GeodesicProblem, eikonal_distance, w_from_distance
from .errors import ConfigError, TraitfrontError
from .fronts import curve_from_snapshots, extract_front, fit_law, front_profile
from .trajectories import geodesic_length, minimize_action

EXPERIMENT_KINDS = (
    "SimulatePDE",
    "SolveHJ",
    "SolveAction",
    "Distance",
    "FrontConstant",
    "EpsSweep",
    "SetEquivalence",
    "Refinement",
)


@dataclass
class Experiment:
    kind: str
    config: object
    outdir: Path
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(
                f"unknown experiment kind {self.kind!r}; "
                f"choose one of {', '.join(EXPERIMENT_KINDS)}"
            )
        self.outdir = Path(self.outdir)


def allocate_run_dir(base, kind):
    """Next unused runs/<kind>[-NNN] directory under `base` (append-only)."""
    base = Path(base)
    candidate = base / kind
    serial = 1
    while candidate.exists():
        serial += 1
        candidate = base / f"{kind}-{serial:03d}"
    candidate.mkdir(parents=True)
    return candidate


def _snapshot_times(cfg):
    n = int(round(cfg.t_final / cfg.cadence))
    return [cfg.cadence * k for k in range(1, n + 1)]


def _base_manifest(exp):
    return {
        "kind": exp.kind,
        "seed": exp.seed,
        "options": {k: str(v) for k, v in exp.options.items()},
        "config": serialize_config(exp.config),
        "versions": {
            "package": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
            "backend": current_backend(),
        },
        "outputs": [],
        "timings": {},
        "exit_code": 0,
    }


def run_experiment(exp):
    """Execute the pipeline; always writes <outdir>/manifest.json."""
    exp.outdir.mkdir(parents=True, exist_ok=True)
    manifest = _base_manifest(exp)
    t0 = time.perf_counter()
    try:
        validate_config(exp.config)
        _RUNNERS[exp.kind](exp, manifest)
    except TraitfrontError as exc:
        manifest["error"] = {"type": type(exc).__name__, "message": str(exc)}
        manifest["exit_code"] = exc.exit_code
    manifest["timings"]["total_seconds"] = time.perf_counter() - t0
    storage.write_manifest(exp.outdir / "manifest.json", manifest)
    return manifest


def _record(manifest, path):
    manifest["outputs"].append(path.name)
    return path


def _result_to_manifest(manifest, result):
    manifest.setdefault("acceptance", {})[str(result.cid)] = {
        "name": result.name,
        "passed": result.passed,
        "details": result.details,
        "report": result.lines,
    }
    if not result.passed:
        manifest["exit_code"] = 1


# ----------------------------------------------------------------------
# pipelines
# ----------------------------------------------------------------------


def _run_simulate_pde(exp, manifest):
    cfg = exp.config
    state = rd.init_state(cfg)
    times, fronts = [], []
    for t in _snapshot_times(cfg):
        state = rd.run_to(state, t)
        u, v = state.u, rd.hopf_cole(state)
        _record(manifest, storage.write_rd_csv(
            exp.outdir / f"rd_t{t:g}.csv", u, v))
        times.append(state.time)
        fronts.append(extract_front(u, theta_row=0))
    manifest["front"] = {"times": times, "positions": fronts}
    manifest["dt"] = state.dt
    manifest["steps"] = state.step_count
    manifest["mass_fraction"] = float(np.mean(state.u.values))


def _run_solve_hj(exp, manifest):
    cfg = exp.config
    tag = exp.options.get("tag", "J")
    problem = hj.make_problem(cfg, tag)
    snapshots, diag = hj.solve(problem, _snapshot_times(cfg))
    for snap in snapshots:
        _record(manifest, storage.write_field_csv(
            exp.outdir / f"{tag}_t{snap.time:g}.csv", snap))
    _record(manifest, storage.write_profile_csv(
        exp.outdir / f"{tag}_front_profile.csv", cfg.grid,
        front_profile(snapshots[-1]), tag))
    curve = curve_from_snapshots(snapshots, theta_row=0)
    _record(manifest, storage.write_front_csv(
        exp.outdir / f"{tag}_front.csv", curve))
    manifest["diagnostics"] = diag
    manifest["front"] = {"times": curve.times.tolist(),
                         "positions": curve.positions.tolist()}


def _run_solve_action(exp, manifest):
    cfg = exp.config
    opts = exp.options
    t = float(opts.get("t", cfg.t_final))
    x = float(opts.get("x", cfg.region.x_r + (4.0 / 3.0) * t
                       * float(cfg.profile.D_limit(t)) ** 0.5))
    theta = float(opts.get("theta", 0.0))
    cost, traj, info = minimize_action(
        x, theta, t, cfg.profile.D_limit, cfg.region,
        delta_floor=cfg.grid.h_theta / 10.0, seed=exp.seed,
    )
    _record(manifest, storage.write_trajectory_csv(
        exp.outdir / "trajectory.csv", traj))
    manifest["probe"] = {"x": x, "theta": theta, "t": t}
    manifest["action"] = cost
    manifest["path_length"] = geodesic_length(traj, cfg.profile.D_limit)
    manifest["start_costs"] = info["start_costs"]
    manifest["iteration_limit"] = info["iteration_limit"]


def _run_distance(exp, manifest):
    cfg = exp.config
    problem = GeodesicProblem(cfg.grid, cfg.region, cfg.dbar_row())
    d_field = eikonal_distance(problem, tol=cfg.eikonal_tol)
    _record(manifest, storage.write_field_csv(exp.outdir / "d.csv", d_field))
    for t in _snapshot_times(cfg):
        mask = w_from_distance(d_field, t)
        _record(manifest, storage.write_mask_csv(
            exp.outdir / f"reach_t{t:g}.csv", cfg.grid, mask, "d_reach"))
    manifest["max_distance"] = float(np.max(d_field.values))


def _run_front_constant(exp, manifest):
    ctx = AcceptanceContext(seed=exp.seed)
    result = evaluate_criterion_1(ctx)
    _result_to_manifest(manifest, result)
    manifest["x_front_at_1"] = result.details["x_front"]["1.0"]
    manifest["abs_error_vs_4_3"] = result.details["abs_error_at_t1"]
    # law fit over a denser own-config curve (needs >= 4 samples)
    cfg = exp.config.with_updates(front_guard="warn")
    problem = hj.make_problem(cfg, "J")
    times = _snapshot_times(cfg)
    if len(times) >= 4:
        snapshots, _ = hj.solve(problem, times)
        curve = curve_from_snapshots(snapshots, theta_row=0)
        _record(manifest, storage.write_front_csv(
            exp.outdir / "front.csv", curve))
        fit = fit_law(curve, "power")
        manifest["law_fit"] = {"c": fit.c, "alpha": fit.alpha,
                               "residual": fit.residual}


def _run_eps_sweep(exp, manifest):
    ctx = AcceptanceContext(seed=exp.seed)
    result = evaluate_criterion_4(ctx)
    _result_to_manifest(manifest, result)
    cfg, i_field, runs, _ = ctx.coarse_sweep()
    _record(manifest, storage.write_field_csv(exp.outdir / "I_t1.csv", i_field))
    for eps, state in runs.items():
        _record(manifest, storage.write_rd_csv(
            exp.outdir / f"rd_eps{eps:g}.csv", state.u, rd.hopf_cole(state)))
    manifest["sup_v_minus_i"] = result.details["sup_v_minus_i"]


def _run_set_equivalence(exp, manifest):
    ctx = AcceptanceContext(seed=exp.seed)
    result = evaluate_criterion_3(ctx)
    _result_to_manifest(manifest, result)
    _, snaps_j, _ = ctx.headline("J")
    d_field = ctx.distance_field()
    grid = d_field.grid
    for t in (0.5, 1.0, 2.0):
        _record(manifest, storage.write_mask_csv(
            exp.outdir / f"J_zero_t{t:g}.csv", grid,
            snaps_j[t].values <= 0.0, "J_nonpositive"))
        _record(manifest, storage.write_mask_csv(
            exp.outdir / f"d_reach_t{t:g}.csv", grid,
            d_field.values <= t, "d_reach"))


def _run_refinement(exp, manifest):
    cfg = exp.config.with_updates(front_guard="warn")
    t_end = cfg.t_final
    grids = {
        "base": cfg.grid,
        "fine": type(cfg.grid)(cfg.grid.x_min, cfg.grid.x_max,
                               cfg.grid.theta_max, 2 * cfg.grid.n_x,
                               2 * cfg.grid.n_theta),
    }
    fronts = {}
    for name, grid in grids.items():
        problem = hj.make_problem(cfg.with_updates(grid=grid), "J")
        snapshots, _ = hj.solve(problem, [t_end])
        fronts[name] = extract_front(snapshots[0], theta_row=0)
    cap_fronts = {}
    for cap in (cfg.cap, 2 * cfg.cap):
        problem = hj.make_problem(cfg.with_updates(cap=cap), "J")
        snapshots, _ = hj.solve(problem, [t_end])
        cap_fronts[f"{cap:g}"] = extract_front(snapshots[0], theta_row=0)
    caps = list(cap_fronts.values())
    manifest["front_by_grid"] = fronts
    manifest["front_by_cap"] = cap_fronts
    manifest["grid_shift_cells"] = abs(fronts["fine"] - fronts["base"]) / cfg.grid.h_x
    manifest["cap_shift_cells"] = abs(caps[1] - caps[0]) / cfg.grid.h_x


_RUNNERS = {
    "SimulatePDE": _run_simulate_pde,
    "SolveHJ": _run_solve_hj,
    "SolveAction": _run_solve_action,
    "Distance": _run_distance,
    "FrontConstant": _run_front_constant,
    "EpsSweep": _run_eps_sweep,
    "SetEquivalence": _run_set_equivalence,
    "Refinement": _run_refinement,
}
