"""Independent closed-form oracles used by the test suite.

Everything here is derived by hand and implemented from scratch on purpose:
these functions share no code with the package so that solver-vs-oracle
comparisons are genuine cross-validation, not self-agreement.

Setting and conventions
-----------------------
State space (x, theta) with theta >= 0, diffusivity law Dbar(theta) = theta,
source region G0 = {x <= x_r} x [0, thetabar].  The action of a path
gamma = (g1, g2) on [0, t] is

    A[gamma] = integral( g1'^2 / (4 Dbar(g2)) + g2'^2 / 4 - 1 ) ds,

and J(x, theta, t) = min over paths from (x, theta) into closure(G0).

Key facts used below (each re-derivable in a few lines):

* Riemannian identity.  With metric ds^2 = dx^2/(4 Dbar) + dtheta^2/4 the
  minimal kinetic integral over duration-t paths equals dist^2 / t
  (Cauchy-Schwarz; equality at constant speed), so J = dist^2/t - t and
  {J <= 0} coincides with {dist <= t}.

* Euler-Lagrange family for Dbar(theta) = theta.  Stationary paths satisfy
  g1' = 2 p g2 with p constant and g2'' = -2 p^2, so g2 is a downward
  parabola and the kinetic rate p^2 g2 + g2'^2/4 is conserved.  For a start
  (x0, theta0) right of the region the optimal endpoint is either on the
  face x = x_r (free theta, transversality g2'(t) = 0) or at the corner
  (x_r, thetabar).  Writing q = |p| and X = x0 - x_r these reduce to cubics:

      face:   (2/3) t^3 q^3 + 2 theta0 t q = X
              cost  E = t (q^2 theta0 + q^4 t^2),
              valid iff theta_end = theta0 + q^2 t^2 <= thetabar
      corner: (1/3) t^3 q^3 + (theta0 + thetabar) t q = X
              alpha = (thetabar - theta0)/t + q^2 t,
              cost  E = t (q^2 theta0 + alpha^2 / 4)

  and J = min E - t.  For X <= 0 no horizontal motion is needed and the
  value degenerates to the one-dimensional Hopf-Lax formula.

* Row-0 front.  Setting E = t in the families above gives the level-0
  abscissa on the theta = 0 row:

      x_front(t) = x_r + (2/3) sqrt(2 - b) (1 + b) t^(3/2),
      b = min(thetabar / t, 1),

  which reduces to the classical (4/3) t^(3/2) exactly when thetabar >= t.
"""

import math

import numpy as np


def hopf_lax_J(theta, thetabar, t):
    """1-D value for x-homogeneous data: J = (max(theta - thetabar, 0))^2/(4t) - t."""
    gap = np.maximum(np.asarray(theta, dtype=float) - thetabar, 0.0)
    return gap * gap / (4.0 * t) - t


def exact_action_J(x0, theta0, t, thetabar, x_r=0.0):
    """Exact J(x0, theta0, t) for Dbar(theta)=theta, G0 = {x<=x_r}x[0,thetabar]."""
    X = x0 - x_r
    if X <= 0.0:
        return float(hopf_lax_J(theta0, thetabar, t))
    costs = []
    for q in np.roots([2.0 * t**3 / 3.0, 0.0, 2.0 * theta0 * t, -X]):
        if abs(q.imag) < 1e-10 and q.real > 0.0:
            q = q.real
            if theta0 + q * q * t * t <= thetabar + 1e-12:
                costs.append(t * (q * q * theta0 + q**4 * t * t))
    for q in np.roots([t**3 / 3.0, 0.0, (theta0 + thetabar) * t, -X]):
        if abs(q.imag) < 1e-10 and q.real > 0.0:
            q = q.real
            alpha = (thetabar - theta0) / t + q * q * t
            costs.append(t * (q * q * theta0 + alpha * alpha / 4.0))
    return min(costs) - t


def exact_geodesic_distance(x0, theta0, t_probe, thetabar, x_r=0.0):
    """Distance to closure(G0) in the metric dx^2/(4 theta) + dtheta^2/4.

    Uses dist = sqrt((J + t) * t) for any probe duration t (the identity
    J = dist^2/t - t); the result is t-independent, which the tests exploit
    as a self-check.
    """
    J = exact_action_J(x0, theta0, t_probe, thetabar, x_r)
    return math.sqrt(max(J + t_probe, 0.0) * t_probe)


def exact_row0_front(t, thetabar, x_r=0.0):
    """Level-0 abscissa of J on the theta=0 row at time t."""
    b = min(thetabar / t, 1.0)
    return x_r + (2.0 / 3.0) * math.sqrt(2.0 - b) * (1.0 + b) * t**1.5


def oscillating_log_D(theta):
    """Direct arithmetic evaluation of the oscillating motility law."""
    theta = np.asarray(theta, dtype=float)
    return theta * (1.0 + np.log(theta + 1.0) + np.sin(theta) / 2.0)


def oscillating_log_D_eps(theta, eps):
    return oscillating_log_D(np.asarray(theta) / eps) / oscillating_log_D(1.0 / eps)


def explicit_cfl_dt(eps, dbar_max, h_x, h_theta):
    """Stability bound for the explicit reaction-diffusion step."""
    return 0.9 / (2.0 * eps * dbar_max / h_x**2 + 2.0 * eps / h_theta**2 + 1.0 / eps)


def logistic_exact(u, a):
    """Exact solution map of u' = u(1-u) over a time window of size a = dt/eps."""
    e = math.exp(a)
    return u * e / (1.0 + u * (e - 1.0))


# Values frozen from the formulas above (and cross-checked by discretized-path
# evaluation: the analytic optimal path for the t=1 front point, sampled at
# 2000 nodes, has discrete action 6.8e-8).

FROZEN = {
    "front_t0.5_thbar0.2": 0.4173993557999608,
    "front_t1_thbar0.2": 1.073312629199899,
    "front_t2_thbar0.2": 2.859059674477296,
    "ratio_t0.5_thbar0.2": 1.180583659796195,
    "ratio_t1_thbar0.2": 1.073312629199899,
    "ratio_t2_thbar0.2": 1.0108302418199495,
    "J_4over3_row0_t1_thbar0.2": 0.36486680475068467,
    "osclog_D_at_2": 5.106522004161902,
    "osclog_Deps_theta2_eps1e-6": 2.0738070048753214,
    "cfl_example": 2.1951219512195124e-3,
}
