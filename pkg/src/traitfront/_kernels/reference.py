"""Pure-NumPy reference kernels (fallback backend).

Three hot loops live here, in vectorized form:

* ``rd_step``     one explicit step of the scaled reaction-diffusion system
                  (centered diffusion with even-reflection ghosts, then the
                  exact logistic map for the stiff reaction term);
* ``hj_step``     one forward-Euler step of a Lax-Friedrichs numerical
                  Hamiltonian (quadratic or geometric form) with per-row
                  dissipation coefficients on both axes;
* ``eikonal_pass`` one relaxation pass of the Godunov upwind update for
                  4·Dbar(theta)·d_x^2 + 4·d_theta^2 = 1.

The compiled backend reimplements the same contracts in C; `eikonal_pass`
here is a Jacobi (simultaneous) relaxation whereas the compiled one is true
Gauss-Seidel in four sweep orderings — both are monotone iterations with the
same unique fixed point, the fallback just needs more passes.

All arrays are (n_theta, n_x), row 0 on the degenerate boundary theta = 0.
"""

import numpy as np

BACKEND = "pure"


def rd_step(u, dbar_eps, eps, dt, hx, hth):
    """One diffusion + exact-logistic step; returns a new array in [0, 1]."""
    up = np.pad(u, 1, mode="reflect")
    uxx = (up[1:-1, 2:] - 2.0 * u + up[1:-1, :-2]) / (hx * hx)
    utt = (up[2:, 1:-1] - 2.0 * u + up[:-2, 1:-1]) / (hth * hth)
    v = u + dt * eps * (dbar_eps[:, None] * uxx + utt)
    a = np.exp(dt / eps)
    return v * a / (1.0 + v * (a - 1.0))


def hj_step(f, dbar, sigma_x, sigma_th, dt, hx, hth, geometric):
    """One Lax-Friedrichs step; returns a new array (no obstacle/clip applied).

    Quadratic Hamiltonian: the dissipation at each node is the local
    characteristic-speed bound over that node's own one-sided slopes,
    sigma = 2 Dbar max(|p_x -+|) and 2 max(|p_theta -+|); the per-row
    `sigma_x`/`sigma_th` arguments are the caller-validated upper bounds
    that certify the CFL condition dt <= min(hx/(4 max sigma_x),
    hth/(4 max sigma_th)) (the extra factor of two covers the slope
    dependence of the local coefficients).  Geometric Hamiltonian: globally
    Lipschitz, so the supplied per-row coefficients are applied directly and
    dt <= min(hx/(2 max sigma_x), hth/(2 max sigma_th)) suffices.  Under its
    CFL bound the update is a monotone function of the stencil values.
    Even-reflection ghosts at every edge: centered slopes vanish on the
    theta = 0 row, where Dbar(0) = 0 also removes the x-term, as the
    degenerate boundary condition requires.
    """
    fp = np.pad(f, 1, mode="reflect")
    dxp = (fp[1:-1, 2:] - f) / hx
    dxm = (f - fp[1:-1, :-2]) / hx
    dtp = (fp[2:, 1:-1] - f) / hth
    dtm = (f - fp[:-2, 1:-1]) / hth
    pbx = 0.5 * (dxp + dxm)
    pbt = 0.5 * (dtp + dtm)
    db = dbar[:, None]
    if geometric:
        H = 2.0 * np.sqrt(db * pbx * pbx + pbt * pbt)
        H = H - 0.5 * sigma_x[:, None] * (dxp - dxm) - 0.5 * sigma_th[:, None] * (dtp - dtm)
    else:
        H = db * pbx * pbx + pbt * pbt + 1.0
        ax = np.maximum(np.abs(dxp), np.abs(dxm))
        at = np.maximum(np.abs(dtp), np.abs(dtm))
        H = H - db * ax * (dxp - dxm) - at * (dtp - dtm)
    return f - dt * H


def _eikonal_candidates(d, dbar, hx, hth):
    big = np.inf
    left = np.full_like(d, big)
    right = np.full_like(d, big)
    down = np.full_like(d, big)
    up = np.full_like(d, big)
    left[:, 1:] = d[:, :-1]
    right[:, :-1] = d[:, 1:]
    down[1:, :] = d[:-1, :]
    up[:-1, :] = d[1:, :]
    a = np.minimum(left, right)
    b = np.minimum(down, up)

    db = dbar[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        c_x = np.where((db > 0) & np.isfinite(a), a + hx / (2.0 * np.sqrt(db)), big)
    c_th = np.where(np.isfinite(b), b + hth / 2.0, big)

    A = 4.0 * db / (hx * hx)
    B = 4.0 / (hth * hth)
    both = (db > 0) & np.isfinite(a) & np.isfinite(b)
    af = np.where(both, a, 0.0)
    bf = np.where(both, b, 0.0)
    s1 = A * af + B * bf
    s2 = A + B
    disc = s1 * s1 - s2 * (A * af * af + B * bf * bf - 1.0)
    ok = both & (disc >= 0.0)
    r = (s1 + np.sqrt(np.maximum(disc, 0.0))) / s2
    ok &= (r >= af) & (r >= bf)
    cand = np.minimum(np.where(ok, r, big), np.minimum(c_x, c_th))
    return cand


def eikonal_pass(d, dbar, frozen, hx, hth, ordering):
    """One Jacobi relaxation pass (in place); returns the max decrease.

    `ordering` selects the Gauss-Seidel sweep direction in the compiled
    backend; simultaneous relaxation has no ordering, so it is ignored here.
    """
    cand = _eikonal_candidates(d, dbar, hx, hth)
    new = np.minimum(d, cand)
    new[np.asarray(frozen, dtype=bool)] = 0.0
    with np.errstate(invalid="ignore"):  # inf - inf at still-unreached nodes is masked out
        change = float(np.max(np.where(np.isfinite(d), d - new, np.where(np.isfinite(new), 1.0, 0.0))))
    d[...] = new
    return change
