"""Uniform grid on the half-plane strip [x_min, x_max] x [0, theta_max].

Fields are stored as (n_theta, n_x) arrays: axis 0 walks the trait rows
starting at theta = 0 (the degenerate boundary), axis 1 walks x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

FIELD_TAGS = ("u", "v", "I", "J", "w", "d")


@dataclass(frozen=True)
class HalfPlaneGrid:
    x_min: float
    x_max: float
    theta_max: float
    n_x: int
    n_theta: int

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.theta_max > 0):
            raise ConfigError("grid extents must be positive")
        if self.n_x < 4 or self.n_theta < 4:
            raise ConfigError("need at least 4 nodes per direction")

    @property
    def h_x(self):
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def h_theta(self):
        return self.theta_max / (self.n_theta - 1)

    @property
    def shape(self):
        return (self.n_theta, self.n_x)

    def x_nodes(self):
        return np.linspace(self.x_min, self.x_max, self.n_x)

    def theta_nodes(self):
        # row 0 sits exactly on theta = 0 by construction
        return np.linspace(0.0, self.theta_max, self.n_theta)

    def mesh(self):
        """(X, TH) arrays of shape (n_theta, n_x)."""
        return np.meshgrid(self.x_nodes(), self.theta_nodes())

    def cell_unit(self):
        """The grid unit used for set comparisons: max(h_x, h_theta)."""
        return max(self.h_x, self.h_theta)


@dataclass
class ScalarField:
    """Nodal values of one named quantity at one time."""

    grid: HalfPlaneGrid
    values: np.ndarray
    time: float
    tag: str

    def __post_init__(self):
        if self.tag not in FIELD_TAGS:
            raise ConfigError(f"unknown field tag {self.tag!r}")
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.grid.shape:
            raise ConfigError(
                f"field shape {self.values.shape} != grid shape {self.grid.shape}"
            )

    def copy(self):
        return ScalarField(self.grid, self.values.copy(), self.time, self.tag)

    def interp(self, x, theta):
        """Bilinear interpolation at (x, theta); vectorized; clamps to the grid."""
        g = self.grid
        fx = (np.asarray(x, dtype=float) - g.x_min) / g.h_x
        ft = np.asarray(theta, dtype=float) / g.h_theta
        fx = np.clip(fx, 0.0, g.n_x - 1.0)
        ft = np.clip(ft, 0.0, g.n_theta - 1.0)
        i0 = np.minimum(fx.astype(int), g.n_x - 2)
        j0 = np.minimum(ft.astype(int), g.n_theta - 2)
        ax = fx - i0
        at = ft - j0
        v = self.values
        out = (
            v[j0, i0] * (1 - ax) * (1 - at)
            + v[j0, i0 + 1] * ax * (1 - at)
            + v[j0 + 1, i0] * (1 - ax) * at
            + v[j0 + 1, i0 + 1] * ax * at
        )
        return out if out.ndim else float(out)

    def range_violation(self, tol=1e-12):
        """Largest violation of the tag's admissible range (0 if clean).

        u, w live in [0,1]; v, I, d are nonnegative; J is bounded below by
        -time (the running cost rate is at least -1).
        """
        v = self.values
        if self.tag in ("u", "w"):
            return max(float(np.max(v - 1.0)), float(np.max(-v)), 0.0)
        if self.tag in ("v", "I", "d"):
            return max(float(np.max(-v)), 0.0)
        if self.tag == "J":
            return max(float(np.max(-self.time - v)) - tol, 0.0)
        return 0.0

    def check_range(self, tol=1e-12):
        bad = self.range_violation(tol)
        if bad > tol:
            raise ValueError(f"field {self.tag} violates its range by {bad:g}")
        return True
