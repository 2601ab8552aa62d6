"""Motility laws D(theta), their small-epsilon rescaling, and their limits.

The model couples spatial diffusion to a trait theta through a diffusivity
law D(theta) that is positive away from zero and unbounded.  Solvers never
use D directly at the simulation scale; they use the rescaled law

    D_eps(theta) = D(theta / eps) / D(1 / eps),

which is normalized so D_eps(1) = 1 for every eps, and its limit Dbar as
eps -> 0.  Scale-invariant laws (linear, power) have D_eps = Dbar exactly;
the oscillating-log law has D_eps -> theta while D_eps itself keeps wiggling
at every finite eps, which is exactly what makes it a good stress test for
the limit solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError

PROFILE_KINDS = ("linear", "power_law", "oscillating_log", "tabulated")


@dataclass(frozen=True)
class DiffusionProfile:
    """A motility law and (when known) its closed-form limit.

    kind:       one of PROFILE_KINDS
    exponent:   p for the power law D(theta) = theta**p
    theta_samples, d_samples: tabulated data (kind == "tabulated")
    limit_kind: "linear" / "power_law" when the limit Dbar is closed-form,
                None when unknown (plain tabulated data)
    """

    kind: str
    exponent: float = 1.0
    theta_samples: tuple = field(default=())
    d_samples: tuple = field(default=())
    limit_kind: str | None = None

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ConfigError(f"unknown profile kind {self.kind!r}")
        if self.kind == "power_law" and not self.exponent > 0:
            raise ConfigError("power_law exponent must be > 0")
        if self.kind == "tabulated":
            th = np.asarray(self.theta_samples, dtype=float)
            dv = np.asarray(self.d_samples, dtype=float)
            if th.size < 2 or th.size != dv.size:
                raise ConfigError("tabulated profile needs matching sample arrays")
            if np.any(np.diff(th) <= 0) or th[0] < 0:
                raise ConfigError("tabulated theta samples must increase from >= 0")
            if np.any(dv[th > 0] <= 0):
                raise ConfigError("tabulated D must be positive for theta > 0")

    # ------------------------------------------------------------------
    # the three evaluation maps
    # ------------------------------------------------------------------

    def D(self, theta):
        """D(theta); vectorized; theta < 0 is a domain error."""
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < 0):
            raise DomainError("D(theta) requires theta >= 0")
        if self.kind == "linear":
            out = theta
        elif self.kind == "power_law":
            out = theta**self.exponent
        elif self.kind == "oscillating_log":
            out = theta * (1.0 + np.log(theta + 1.0) + np.sin(theta) / 2.0)
        else:
            th = np.asarray(self.theta_samples, dtype=float)
            dv = np.asarray(self.d_samples, dtype=float)
            # linear interpolation, linear extrapolation beyond the last sample
            out = np.interp(theta, th, dv)
            slope = (dv[-1] - dv[-2]) / (th[-1] - th[-2])
            out = np.where(theta > th[-1], dv[-1] + slope * (theta - th[-1]), out)
        return out if out.ndim else float(out)

    def D_eps(self, theta, eps):
        """Rescaled law D(theta/eps)/D(1/eps); D_eps(1) = 1 exactly."""
        if not eps > 0:
            raise DomainError("eps must be > 0")
        return self.D(np.asarray(theta, dtype=float) / eps) / self.D(1.0 / eps)

    def D_limit(self, theta):
        """The limit Dbar(theta) of D_eps as eps -> 0 (requires a known limit)."""
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < 0):
            raise DomainError("Dbar(theta) requires theta >= 0")
        kind = self.limit_kind or {
            "linear": "linear",
            "power_law": "power_law",
            "oscillating_log": "linear",
        }.get(self.kind)
        if kind == "linear":
            out = theta
        elif kind == "power_law":
            out = theta**self.exponent
        else:
            raise ConfigError(
                f"profile kind {self.kind!r} has no declared closed-form limit"
            )
        return out if out.ndim else float(out)

    def dbar_row(self, theta_nodes, eps=None):
        """Diffusivity per theta grid row: the limit law, or D_eps at finite eps."""
        if eps is None:
            return np.asarray(self.D_limit(theta_nodes), dtype=float)
        return np.asarray(self.D_eps(theta_nodes, eps), dtype=float)


def linear_profile():
    return DiffusionProfile("linear")


def power_law_profile(exponent):
    return DiffusionProfile("power_law", exponent=float(exponent))


def oscillating_log_profile():
    return DiffusionProfile("oscillating_log")


def tabulated_profile(theta_samples, d_samples, limit_kind=None):
    return DiffusionProfile(
        "tabulated",
        theta_samples=tuple(float(v) for v in theta_samples),
        d_samples=tuple(float(v) for v in d_samples),
        limit_kind=limit_kind,
    )


def check_admissible(profile, theta_max, n_samples=512):
    """Sampled admissibility check: positivity off zero and growth.

    The underlying assumptions are D > 0 and D(theta) -> infinity; neither is
    checkable globally, so this verifies them along [0, theta_max]: strict
    positivity on (0, theta_max] and an increasing envelope (the max over the
    upper half of the range exceeds the max over the lower half).
    """
    th = np.linspace(0.0, theta_max, n_samples)
    vals = np.asarray(profile.D(th), dtype=float)
    if np.any(vals[1:] <= 0):
        bad = th[1:][vals[1:] <= 0][0]
        raise ConfigError(f"profile not positive at theta = {bad:g}")
    half = n_samples // 2
    if np.max(vals[half:]) <= np.max(vals[:half]):
        raise ConfigError("profile envelope does not grow over the sampled range")
    return True
