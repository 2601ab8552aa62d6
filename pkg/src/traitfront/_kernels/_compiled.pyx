# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled stencil kernels; contracts mirror `reference` exactly.

The eikonal kernel is the one place the two backends differ algorithmically:
this one does true in-place Gauss-Seidel in four alternating sweep orderings
(the classic fast-sweeping arrangement), while the fallback relaxes all nodes
simultaneously.  Both iterations are monotone with the same fixed point.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, exp, fabs, isfinite, sqrt

BACKEND = "compiled"


def rd_step(double[:, ::1] u, double[::1] dbar_eps, double eps, double dt,
            double hx, double hth):
    cdef Py_ssize_t nt = u.shape[0], nx = u.shape[1]
    out = np.empty((nt, nx), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, i, jm, jp, im, ip
    cdef double uxx, utt, v
    cdef double a = exp(dt / eps)
    cdef double ihx2 = 1.0 / (hx * hx), ihth2 = 1.0 / (hth * hth)
    for j in range(nt):
        jm = 1 if j == 0 else j - 1          # even-reflection ghosts
        jp = nt - 2 if j == nt - 1 else j + 1
        for i in range(nx):
            im = 1 if i == 0 else i - 1
            ip = nx - 2 if i == nx - 1 else i + 1
            uxx = (u[j, ip] - 2.0 * u[j, i] + u[j, im]) * ihx2
            utt = (u[jp, i] - 2.0 * u[j, i] + u[jm, i]) * ihth2
            v = u[j, i] + dt * eps * (dbar_eps[j] * uxx + utt)
            o[j, i] = v * a / (1.0 + v * (a - 1.0))
    return out


def hj_step(double[:, ::1] f, double[::1] dbar, double[::1] sigma_x,
            double[::1] sigma_th, double dt, double hx, double hth,
            bint geometric):
    cdef Py_ssize_t nt = f.shape[0], nx = f.shape[1]
    out = np.empty((nt, nx), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, i, jm, jp, im, ip
    cdef double dxp, dxm, dtp, dtm, pbx, pbt, H, ax, at
    cdef double ihx = 1.0 / hx, ihth = 1.0 / hth
    for j in range(nt):
        jm = 1 if j == 0 else j - 1
        jp = nt - 2 if j == nt - 1 else j + 1
        for i in range(nx):
            im = 1 if i == 0 else i - 1
            ip = nx - 2 if i == nx - 1 else i + 1
            dxp = (f[j, ip] - f[j, i]) * ihx
            dxm = (f[j, i] - f[j, im]) * ihx
            dtp = (f[jp, i] - f[j, i]) * ihth
            dtm = (f[j, i] - f[jm, i]) * ihth
            pbx = 0.5 * (dxp + dxm)
            pbt = 0.5 * (dtp + dtm)
            if geometric:
                H = 2.0 * sqrt(dbar[j] * pbx * pbx + pbt * pbt)
                H = H - 0.5 * sigma_x[j] * (dxp - dxm) - 0.5 * sigma_th[j] * (dtp - dtm)
            else:
                H = dbar[j] * pbx * pbx + pbt * pbt + 1.0
                ax = fabs(dxp)
                if fabs(dxm) > ax:
                    ax = fabs(dxm)
                at = fabs(dtp)
                if fabs(dtm) > at:
                    at = fabs(dtm)
                H = H - dbar[j] * ax * (dxp - dxm) - at * (dtp - dtm)
            o[j, i] = f[j, i] - dt * H
    return out


cdef inline double _node_candidate(double a, double b, double db,
                                   double hx, double hth) nogil:
    """Godunov upwind value from axis minima a (x) and b (theta)."""
    cdef double cx = INFINITY, cth = INFINITY, cand, A, B, s1, s2, disc, r
    if db > 0.0 and isfinite(a):
        cx = a + hx / (2.0 * sqrt(db))
    if isfinite(b):
        cth = b + 0.5 * hth
    cand = cx if cx < cth else cth
    if db > 0.0 and isfinite(a) and isfinite(b):
        A = 4.0 * db / (hx * hx)
        B = 4.0 / (hth * hth)
        s1 = A * a + B * b
        s2 = A + B
        disc = s1 * s1 - s2 * (A * a * a + B * b * b - 1.0)
        if disc >= 0.0:
            r = (s1 + sqrt(disc)) / s2
            if r >= a and r >= b and r < cand:
                cand = r
    return cand


def eikonal_pass(double[:, ::1] d, double[::1] dbar, cnp.uint8_t[:, ::1] frozen,
                 double hx, double hth, int ordering):
    """One Gauss-Seidel sweep in the given ordering; returns the max decrease."""
    cdef Py_ssize_t nt = d.shape[0], nx = d.shape[1]
    cdef Py_ssize_t j, i
    cdef int jstart, jstop, jstep, istart, istop, istep
    cdef double a, b, left, right, down, up, cand, change = 0.0
    if ordering & 1:
        istart, istop, istep = nx - 1, -1, -1
    else:
        istart, istop, istep = 0, nx, 1
    if ordering & 2:
        jstart, jstop, jstep = nt - 1, -1, -1
    else:
        jstart, jstop, jstep = 0, nt, 1
    for j in range(jstart, jstop, jstep):
        for i in range(istart, istop, istep):
            if frozen[j, i]:
                continue
            left = d[j, i - 1] if i > 0 else INFINITY
            right = d[j, i + 1] if i < nx - 1 else INFINITY
            down = d[j - 1, i] if j > 0 else INFINITY
            up = d[j + 1, i] if j < nt - 1 else INFINITY
            a = left if left < right else right
            b = down if down < up else up
            cand = _node_candidate(a, b, dbar[j], hx, hth)
            if cand < d[j, i]:
                if isfinite(d[j, i]):
                    if d[j, i] - cand > change:
                        change = d[j, i] - cand
                else:
                    if change < 1.0:
                        change = 1.0
                d[j, i] = cand
    return change
