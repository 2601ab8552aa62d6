"""Convex source regions in the (x, theta) half-plane.

The default shape is the left half-plane with a trait cap,
{x <= x_r} x [0, theta_bar): left-unbounded, so invasion is measured purely
to the right.  A convex-polygon variant exists for experiments with compact
sources.  All geometry is Euclidean; `project` returns the nearest point of
the closed region and `signed_distance` is negative inside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class ConvexRegion:
    kind: str  # "cap" or "polygon"
    x_r: float = 0.0
    theta_bar: float = 0.2
    vertices: tuple = field(default=())  # CCW (x, theta) pairs, polygon only

    def __post_init__(self):
        if self.kind not in ("cap", "polygon"):
            raise ConfigError(f"unknown region kind {self.kind!r}")
        if not self.theta_bar > 0:
            raise ConfigError("theta_bar must be > 0")
        if self.kind == "polygon":
            v = np.asarray(self.vertices, dtype=float)
            if v.ndim != 2 or v.shape[0] < 3 or v.shape[1] != 2:
                raise ConfigError("polygon needs >= 3 (x, theta) vertices")
            if np.any(v[:, 1] < 0) or np.any(v[:, 1] >= self.theta_bar) or np.any(
                v[:, 0] >= self.x_r
            ):
                raise ConfigError(
                    "polygon vertices must lie in (-inf, x_r) x [0, theta_bar)"
                )
            nxt = np.roll(v, -1, axis=0)
            nxt2 = np.roll(v, -2, axis=0)
            cross = (nxt[:, 0] - v[:, 0]) * (nxt2[:, 1] - nxt[:, 1]) - (
                nxt[:, 1] - v[:, 1]
            ) * (nxt2[:, 0] - nxt[:, 0])
            # every turn left (convex, CCW), at least one strictly (nonempty interior)
            if not (np.all(cross >= -1e-12) and np.any(cross > 1e-12)):
                raise ConfigError("polygon must be convex with CCW vertices")

    # ------------------------------------------------------------------

    def contains(self, x, theta):
        """Membership in the CLOSED region; vectorized."""
        x = np.asarray(x, dtype=float)
        theta = np.asarray(theta, dtype=float)
        if self.kind == "cap":
            out = (x <= self.x_r) & (theta >= 0.0) & (theta <= self.theta_bar)
        else:
            v = np.asarray(self.vertices, dtype=float)
            nxt = np.roll(v, -1, axis=0)
            out = np.ones(np.broadcast(x, theta).shape, dtype=bool)
            for (x0, t0), (x1, t1) in zip(v, nxt):
                out &= (x1 - x0) * (theta - t0) - (t1 - t0) * (x - x0) >= -1e-12
        return out if out.ndim else bool(out)

    def project(self, x, theta):
        """Nearest point of the closed region; identity on members."""
        x = np.asarray(x, dtype=float)
        theta = np.asarray(theta, dtype=float)
        if self.kind == "cap":
            # product of two intervals: projection is componentwise clamping
            px = np.minimum(x, self.x_r)
            pt = np.clip(theta, 0.0, self.theta_bar)
        else:
            px, pt = self._project_polygon(x, theta)
        if px.ndim:
            return px, pt
        return float(px), float(pt)

    def _project_polygon(self, x, theta):
        v = np.asarray(self.vertices, dtype=float)
        nxt = np.roll(v, -1, axis=0)
        x = np.atleast_1d(np.asarray(x, dtype=float))
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        best_x, best_t = x.copy(), theta.copy()
        best_d2 = np.where(self.contains(x, theta), 0.0, np.inf)
        for (x0, t0), (x1, t1) in zip(v, nxt):
            ex, et = x1 - x0, t1 - t0
            denom = ex * ex + et * et
            s = np.clip(((x - x0) * ex + (theta - t0) * et) / denom, 0.0, 1.0)
            qx, qt = x0 + s * ex, t0 + s * et
            d2 = (x - qx) ** 2 + (theta - qt) ** 2
            take = d2 < best_d2
            best_x = np.where(take, qx, best_x)
            best_t = np.where(take, qt, best_t)
            best_d2 = np.where(take, d2, best_d2)
        return best_x.reshape(np.shape(x)), best_t.reshape(np.shape(theta))

    def signed_distance(self, x, theta):
        """Euclidean signed distance to the boundary: > 0 outside, < 0 inside."""
        x = np.asarray(x, dtype=float)
        theta = np.asarray(theta, dtype=float)
        if self.kind == "cap":
            dx = np.maximum(x - self.x_r, 0.0)
            dt = np.maximum(theta - self.theta_bar, 0.0)
            outside = np.hypot(dx, dt)
            inside = np.minimum(self.x_r - x, self.theta_bar - theta)
            out = np.where(outside > 0.0, outside, -np.maximum(inside, 0.0))
        else:
            px, pt = self._project_polygon(x, theta)
            dist = np.hypot(np.asarray(x) - px, np.asarray(theta) - pt)
            # inside: distance to the nearest edge segment
            v = np.asarray(self.vertices, dtype=float)
            nxt = np.roll(v, -1, axis=0)
            edge_d = np.full(np.shape(dist), np.inf)
            for (x0, t0), (x1, t1) in zip(v, nxt):
                ex, et = x1 - x0, t1 - t0
                denom = ex * ex + et * et
                s = np.clip(((x - x0) * ex + (theta - t0) * et) / denom, 0.0, 1.0)
                edge_d = np.minimum(
                    edge_d, np.hypot(x - (x0 + s * ex), theta - (t0 + s * et))
                )
            out = np.where(self.contains(x, theta), -edge_d, dist)
        return out if out.ndim else float(out)

    def interior_mask(self, grid, margin=0.0):
        """Grid nodes strictly inside (signed distance < -margin)."""
        X, TH = grid.mesh()
        return self.signed_distance(X, TH) < -margin

    def member_mask(self, grid):
        """Grid nodes in the closed region."""
        X, TH = grid.mesh()
        return self.contains(X, TH)


def cap_region(x_r=0.0, theta_bar=0.2):
    return ConvexRegion("cap", x_r=float(x_r), theta_bar=float(theta_bar))


def polygon_region(vertices, x_r=None, theta_bar=None):
    v = np.asarray(vertices, dtype=float)
    if x_r is None:
        x_r = float(np.max(v[:, 0])) + 1e-9
    if theta_bar is None:
        theta_bar = float(np.max(v[:, 1])) + 1e-9
    return ConvexRegion(
        "polygon",
        x_r=x_r,
        theta_bar=theta_bar,
        vertices=tuple((float(a), float(b)) for a, b in v),
    )
