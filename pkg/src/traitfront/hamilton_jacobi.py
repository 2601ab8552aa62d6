"""Monotone Lax-Friedrichs solver for the three limiting interface equations.

Tags and equations (Dbar is the limiting diffusivity, all on theta >= 0):

    I   obstacle problem   min{ I_t + Dbar|I_x|^2 + |I_theta|^2 + 1, I } = 0
                           data 0 on the source region, `cap` outside
    J   free equation      J_t + Dbar|J_x|^2 + |J_theta|^2 + 1 = 0
                           same data; {J <= 0} is the invaded set
    w   geometric front    w_t + 2 sqrt(Dbar w_x^2 + w_theta^2) = 0
                           data 0 inside / 1 outside, values stay in [0,1]

Scheme.  Forward Euler with a Lax-Friedrichs numerical Hamiltonian.  For
the quadratic tags the dissipation applied at a node is the local
characteristic-speed bound over that node's own one-sided slopes,
sigma_x = 2 Dbar(theta) max(|p_x^-|, |p_x^+|) and
sigma_theta = 2 max(|p_theta^-|, |p_theta^+|), so the O(sigma h) smearing
each node suffers is priced by its own gradients — essential here, because
the steepest slopes live far from the front (they grow with the distance to
the source region) and any shared coefficient would smear the front with
dissipation priced for that far field.  The problem carries per-theta-row
upper bounds for these coefficients, computed from the gradient range
actually observed in the current field and re-validated before every step;
they certify the monotone CFL bound
dt <= 0.9 min(h_x/(4 max sigma_x), h_theta/(4 max sigma_theta)), where the
extra factor of two relative to the classical frozen-coefficient bound
covers the slope dependence of the local coefficients.  Under that bound
the update is a monotone function of the stencil values, and dt adapts
upward as the solution's gradients relax.  The geometric Hamiltonian is
globally Lipschitz, so tag w uses the field-independent coefficients
sigma_x = 2 sqrt(Dbar), sigma_theta = 2 applied directly, with the
classical bound dt <= 0.9 min(h_x/(2 max sigma_x), h_theta/2).

Warm start.  The 0/cap data puts a cap-sized jump across one cell on the
source-region boundary.  Observed-gradient dissipation prices that jump at
sigma ~ cap/h, collapsing dt to O(h^2/cap); any cheaper coefficient floods
cap-sized values into the zero set (monotone dissipation smears
discontinuities at amplitude proportional to the jump).  The quadratic
solves therefore start by default at a positive time t0 from the exact
identity value(x, theta, t0) = d(x, theta)^2/t0 - t0 (clipped to
[0, cap - t0] for the obstacle, min'd with cap - t0 for the free equation),
with d the geodesic distance from `eikonal` — an identity that holds for
every diffusivity law.  That data is Lipschitz with slopes O(1/t0), so the
adaptive dt starts small and grows as the gradients relax.  Because any
offset delta in d enters the data as ~2 d delta/t0 and the evolved value
keeps tracking d^2/t - t, the first-order upwind bias of the distance solve
would dominate the error budget; the warm start therefore computes d on a
warm_start_refine-times finer grid and restricts it (see
eikonal.refined_distance).  Setting warm_start_time = 0 restores the raw
plateau data.  The geometric equation has unit-amplitude data and needs
none of this.

Boundary rows.  Even-reflection ghosts everywhere.  At theta = 0 the centered
theta-slope vanishes and Dbar(0) = 0 removes the x-term, so the row is driven
by the source term and the theta-dissipation coupling to row 1 — the discrete
trace of the degenerate boundary condition.  The generalized (inequality-
pair) form of that condition is checked a posteriori with one-sided
differences and reported in the solve diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels as kernels
from .eikonal import GeodesicProblem, refined_distance
from .errors import ConfigError, NumericalError
from .grid import ScalarField

HJ_TAGS = ("I", "J", "w")


@dataclass(frozen=True)
class HJProblem:
    tag: str
    grid: object
    region: object
    dbar: np.ndarray  # limiting diffusivity per theta row
    cap: float
    sigma_x: np.ndarray | None = None  # per-row dissipation bounds, None = unset
    sigma_theta: np.ndarray | None = None
    warm_start_time: float = 0.0
    warm_start_refine: int = 4

    def __post_init__(self):
        if self.tag not in HJ_TAGS:
            raise ConfigError(f"unknown HJ tag {self.tag!r}")
        if self.warm_start_time < 0:
            raise ConfigError("warm_start_time must be >= 0")
        if self.warm_start_refine < 1:
            raise ConfigError("warm_start_refine must be >= 1")

    @property
    def geometric(self):
        return self.tag == "w"


def observed_gradient_bounds(grid, values):
    """Largest one-sided slope magnitude per theta row on each axis.

    Returns arrays (px, pth) of length n_theta.  px[j] covers the x-slopes
    inside row j; pth[j] covers the theta-slopes between row j and both of
    its neighbors.  The even-reflection ghosts duplicate interior
    differences (or cancel them), so these cover every slope row j's update
    can see.
    """
    n_theta = values.shape[0]
    if values.shape[1] > 1:
        px = np.max(np.abs(np.diff(values, axis=1)), axis=1) / grid.h_x
    else:
        px = np.zeros(n_theta)
    if n_theta > 1:
        q = np.max(np.abs(np.diff(values, axis=0)), axis=1) / grid.h_theta
        pth = np.maximum(np.concatenate(([q[0]], q)), np.concatenate((q, [q[-1]])))
    else:
        pth = np.zeros(n_theta)
    return px, pth


def with_sigma_for(problem, values):
    """Problem copy whose dissipation dominates the gradients in `values`.

    Quadratic tags: per row, sigma_x = 2 Dbar max|p_x| and
    sigma_theta = 2 max|p_theta|, the exact characteristic-speed bounds over
    the gradient range each row's update touches.  Geometric tag: the global
    Lipschitz bounds 2 sqrt(Dbar) and 2, independent of the field.
    """
    if problem.geometric:
        return replace(
            problem,
            sigma_x=2.0 * np.sqrt(problem.dbar),
            sigma_theta=np.full(problem.grid.n_theta, 2.0),
        )
    px, pth = observed_gradient_bounds(problem.grid, values)
    return replace(
        problem, sigma_x=2.0 * problem.dbar * px, sigma_theta=2.0 * pth
    )


def make_problem(config, tag, dbar_values=None):
    """Build an HJProblem from a run configuration.

    `dbar_values` overrides the per-row diffusivity (used by tests with
    synthetic laws); the default is the profile's limiting law.  Dissipation
    coefficients start unset; `solve` and `step_hj` fill them from the
    observed gradient range via `with_sigma_for`.
    """
    grid = config.grid
    if dbar_values is None:
        dbar = np.asarray(config.profile.D_limit(grid.theta_nodes()), dtype=float)
    else:
        dbar = np.asarray(dbar_values, dtype=float)
        if dbar.shape != (grid.n_theta,):
            raise ConfigError("dbar_values must have one entry per theta row")
    return HJProblem(
        tag=tag,
        grid=grid,
        region=config.region,
        dbar=dbar,
        cap=config.cap,
        warm_start_time=config.warm_start_time,
        warm_start_refine=config.warm_start_refine,
    )


def init_field(problem):
    """Initial data: 0 on the closed source region; cap (I, J) or 1 (w) outside."""
    inside = problem.region.member_mask(problem.grid)
    outside_value = 1.0 if problem.geometric else problem.cap
    values = np.where(inside, 0.0, outside_value)
    return ScalarField(problem.grid, values, 0.0, problem.tag)


def warm_start_field(problem, distance_values=None):
    """Quadratic-tag state at t0 = warm_start_time, from the distance identity.

    value(x, theta, t0) = d(x, theta)^2 / t0 - t0, min'd with the decayed
    plateau cap - t0, and floored at 0 for the obstacle tag.  `distance_values`
    lets the caller reuse an already-computed distance field; by default the
    distance is solved on a warm_start_refine-times finer grid and restricted,
    because its first-order bias enters the data as d^2/t0 and then persists
    (the evolved value tracks d^2/t - t, so an initial offset delta in d is
    still worth 2·d·delta/t at every later time).
    """
    t0 = problem.warm_start_time
    if problem.geometric or not t0 > 0:
        raise ConfigError("warm start applies to the quadratic tags with t0 > 0")
    if distance_values is None:
        geo = GeodesicProblem(problem.grid, problem.region, problem.dbar)
        distance_values = refined_distance(geo, problem.warm_start_refine).values
    values = np.minimum(distance_values * distance_values / t0, problem.cap) - t0
    if problem.tag == "I":
        np.maximum(values, 0.0, out=values)
    return ScalarField(problem.grid, values, t0, problem.tag)


def numerical_hamiltonian(problem, theta, px_minus, px_plus, pth_minus, pth_plus):
    """Scalar Lax-Friedrichs Hamiltonian value (reference for tests/docs).

    The array kernels inline exactly this computation.  Quadratic tags take
    the local characteristic-speed bounds over the supplied slopes as
    dissipation coefficients; the geometric tag uses its global Lipschitz
    bounds.  Neither needs the problem's stored (CFL) coefficients.
    """
    nodes = problem.grid.theta_nodes()
    dbar = float(np.interp(theta, nodes, problem.dbar))
    pbx = 0.5 * (px_minus + px_plus)
    pbt = 0.5 * (pth_minus + pth_plus)
    if problem.geometric:
        H = 2.0 * math.sqrt(dbar * pbx * pbx + pbt * pbt)
        sx = 2.0 * math.sqrt(dbar)
        st = 2.0
    else:
        H = dbar * pbx * pbx + pbt * pbt + 1.0
        sx = 2.0 * dbar * max(abs(px_minus), abs(px_plus))
        st = 2.0 * max(abs(pth_minus), abs(pth_plus))
    return H - 0.5 * sx * (px_plus - px_minus) - 0.5 * st * (pth_plus - pth_minus)


def cfl_dt_hj(problem):
    """Monotonicity bound with 10% margin for the problem's coefficients.

    Quadratic tags divide by 4 sigma per axis (the local coefficients vary
    with the slopes, which doubles the classical center-weight bound);
    the geometric tag's frozen coefficients need only 2 sigma.  Infinite
    when both coefficients vanish (a flat field evolves exactly for any dt).
    """
    if problem.sigma_x is None:
        raise ConfigError("dissipation coefficients not set; use with_sigma_for")
    grid = problem.grid
    factor = 2.0 if problem.geometric else 4.0
    sx = float(np.max(problem.sigma_x))
    st = float(np.max(problem.sigma_theta))
    bounds = []
    if sx > 0:
        bounds.append(grid.h_x / (factor * sx))
    if st > 0:
        bounds.append(grid.h_theta / (factor * st))
    return 0.9 * min(bounds) if bounds else math.inf


def step_hj(problem, field, dt):
    """One forward-Euler step; returns a new ScalarField.

    If the problem carries no dissipation coefficients they are computed
    from the field's observed gradient range; coefficients that are present
    are re-validated against it, so a stale (too small) sigma fails loudly
    instead of silently breaking monotonicity.
    """
    if problem.sigma_x is None:
        problem = with_sigma_for(problem, field.values)
    elif not problem.geometric:
        px, pth = observed_gradient_bounds(problem.grid, field.values)
        ok_x = np.all(problem.sigma_x >= 2.0 * problem.dbar * px * (1.0 - 1e-12))
        ok_th = np.all(problem.sigma_theta >= 2.0 * pth * (1.0 - 1e-12))
        if not (ok_x and ok_th):
            raise ConfigError(
                "dissipation coefficients are below the observed gradient "
                "range; rebuild them with with_sigma_for"
            )
    if dt > cfl_dt_hj(problem) * (1.0 + 1e-12):
        raise ConfigError(
            f"dt = {dt:g} violates the monotone CFL bound {cfl_dt_hj(problem):g}"
        )
    grid = problem.grid
    new_values = kernels.hj_step(
        np.ascontiguousarray(field.values),
        np.ascontiguousarray(problem.dbar),
        np.ascontiguousarray(problem.sigma_x),
        np.ascontiguousarray(problem.sigma_theta),
        dt,
        grid.h_x,
        grid.h_theta,
        problem.geometric,
    )
    if problem.tag == "I":
        np.maximum(new_values, 0.0, out=new_values)  # obstacle projection
    elif problem.tag == "w":
        np.clip(new_values, 0.0, 1.0, out=new_values)
    if not np.all(np.isfinite(new_values)):
        j, i = np.argwhere(~np.isfinite(new_values))[0]
        raise NumericalError(
            f"HJ step produced a non-finite value at node "
            f"(x={grid.x_nodes()[i]:g}, theta={grid.theta_nodes()[j]:g})"
        )
    return ScalarField(grid, new_values, field.time + dt, field.tag)


def boundary_row_residuals(problem, before, after, dt):
    """A-posteriori check of the degenerate-boundary inequality pair.

    With s the one-sided theta-slope on row 0 and `core` the discrete
    evolution residual there, the viscosity reading of the boundary condition
    requires max{-s, core} >= 0 and min{-s, core} <= 0 (with the obstacle
    branch folded into `core` for tag I).  Returns the worst violation of
    each inequality (0 means clean).
    """
    grid = problem.grid
    s = (after.values[1, :] - after.values[0, :]) / grid.h_theta
    rate = (after.values[0, :] - before.values[0, :]) / dt
    if problem.geometric:
        core = rate + 2.0 * np.abs(s)
    else:
        core = rate + s * s + 1.0
    if problem.tag == "I":
        core = np.minimum(core, after.values[0, :])
    super_violation = float(np.max(np.maximum(-np.maximum(-s, core), 0.0)))
    sub_violation = float(np.max(np.maximum(np.minimum(-s, core), 0.0)))
    return super_violation, sub_violation


def solve(problem, snapshot_times, progress=None):
    """Evolve from the initial data through the given snapshot times.

    Dissipation coefficients are recomputed from the observed gradient range
    before every step and dt adapts to the matching CFL bound, capped so
    snapshot times are hit exactly.  Returns (snapshots, diagnostics): one
    ScalarField per requested time and a dict with the dt and sigma ranges
    used, the step count, and the worst boundary-row residuals.
    """
    times = sorted(set(float(t) for t in snapshot_times))
    if any(t < 0 for t in times):
        raise ConfigError("snapshot times must be nonnegative")
    warm = not problem.geometric and problem.warm_start_time > 0
    if warm and times and times[0] < problem.warm_start_time - 1e-15:
        raise ConfigError(
            f"first snapshot time {times[0]:g} precedes the warm start time "
            f"{problem.warm_start_time:g}; lower warm_start_time or drop it"
        )
    field = warm_start_field(problem) if warm else init_field(problem)
    snapshots = []
    diagnostics = {
        "dt_max": 0.0,
        "dt_min": math.inf,
        "sigma_x_max": 0.0,
        "sigma_theta_max": 0.0,
        "warm_start_time": field.time,
        "boundary_super_violation": 0.0,
        "boundary_sub_violation": 0.0,
        "steps": 0,
    }
    t_now = field.time
    for t_target in times:
        if t_target <= t_now + 1e-15:
            snapshots.append(field.copy())
            continue
        while t_now < t_target - 1e-15:
            stepped = with_sigma_for(problem, field.values)
            dt = min(cfl_dt_hj(stepped), t_target - t_now)
            prev = field
            field = step_hj(stepped, field, dt)
            t_now = field.time
            diagnostics["steps"] += 1
            diagnostics["dt_max"] = max(diagnostics["dt_max"], dt)
            diagnostics["dt_min"] = min(diagnostics["dt_min"], dt)
            diagnostics["sigma_x_max"] = max(
                diagnostics["sigma_x_max"], float(np.max(stepped.sigma_x))
            )
            diagnostics["sigma_theta_max"] = max(
                diagnostics["sigma_theta_max"], float(np.max(stepped.sigma_theta))
            )
            if t_now >= t_target - 1e-15:
                sup_v, sub_v = boundary_row_residuals(stepped, prev, field, dt)
                diagnostics["boundary_super_violation"] = max(
                    diagnostics["boundary_super_violation"], sup_v
                )
                diagnostics["boundary_sub_violation"] = max(
                    diagnostics["boundary_sub_violation"], sub_v
                )
            if progress is not None:
                progress(field.time)
        field = ScalarField(problem.grid, field.values, t_target, problem.tag)
        snapshots.append(field.copy())
        t_now = t_target
    return snapshots, diagnostics


def zero_set(field, level=0.0, tol=0.0):
    """Mask of nodes with field <= level + tol."""
    return field.values <= level + tol
