"""Front extraction, propagation-law fitting, and set comparisons.

Every solver in the package produces a scalar field whose invaded region can
be read off along a theta row: the population density u sits above a level
behind the front, while the value functions I and J, the geometric indicator
w, and the distance d sit below one.  `extract_front` reduces both cases to
the last sign change of f - level along the row and interpolates the
crossing linearly, so fronts from different methods are directly comparable
numbers.  Set-level statements are checked with a symmetric Hausdorff
distance between 8-neighbor mask boundaries and with dilation-based
inclusion tests, both expressed in grid units of max(h_x, h_theta).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import DomainError, FrontOutOfDomainError

log = logging.getLogger(__name__)

# side = "upper": invaded where field >= level (population density)
# side = "lower": invaded where field <= level (value functions, distance)
_TAG_SIDE = {"u": "upper", "v": "lower", "I": "lower", "J": "lower",
             "w": "lower", "d": "lower"}
_DEFAULT_LEVEL = {"u": 0.5, "v": 0.0, "I": 0.0, "J": 0.0, "w": 0.5, "d": None}

_BOX = np.ones((3, 3), dtype=bool)  # 8-neighbor structuring element


def extract_front(field, level=None, theta_row=0):
    """Rightmost level crossing along a theta row, linearly interpolated.

    Raises FrontOutOfDomainError when the invaded set along the row is empty
    or reaches the last column (front truncated by the artificial boundary).
    """
    if level is None:
        level = _DEFAULT_LEVEL.get(field.tag)
        if level is None:
            raise DomainError(f"tag {field.tag!r} needs an explicit level")
    row = field.values[theta_row, :]
    g = row - level if _TAG_SIDE[field.tag] == "lower" else level - row
    inside = np.flatnonzero(g <= 0.0)
    if inside.size == 0:
        raise FrontOutOfDomainError(
            f"no {field.tag} front on row {theta_row}: level {level:g} "
            "is never reached"
        )
    k = int(inside[-1])
    if k == row.size - 1:
        raise FrontOutOfDomainError(
            f"{field.tag} front on row {theta_row} reaches the domain edge "
            f"x = {field.grid.x_max:g}; enlarge the grid"
        )
    x = field.grid.x_nodes()
    frac = -g[k] / (g[k + 1] - g[k])
    return float(x[k] + frac * (x[k + 1] - x[k]))


def front_profile(field, level=None):
    """Front abscissa per theta row; NaN where the row has no crossing."""
    out = np.full(field.grid.n_theta, np.nan)
    for j in range(field.grid.n_theta):
        try:
            out[j] = extract_front(field, level=level, theta_row=j)
        except FrontOutOfDomainError:
            pass
    return out


@dataclass
class FrontCurve:
    """Front abscissa samples x_front(t_i) from one extraction rule."""

    times: np.ndarray
    positions: np.ndarray
    tag: str
    level: float
    tol: float = 1e-9

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.positions = np.asarray(self.positions, dtype=float)
        if self.times.shape != self.positions.shape or self.times.ndim != 1:
            raise DomainError("front curve needs matching 1-D sample arrays")
        if np.any(np.diff(self.times) <= 0):
            raise DomainError("front curve times must be strictly increasing")
        if np.any(np.diff(self.positions) < -self.tol):
            raise DomainError("front positions must be nondecreasing (invasion)")

    def ratios(self, exponent=1.5):
        """x_front / t^exponent at the sample times."""
        return self.positions / self.times**exponent


def curve_from_snapshots(snapshots, level=None, theta_row=0):
    """Build a FrontCurve by extracting the front from each snapshot."""
    if not snapshots:
        raise DomainError("no snapshots to extract a front curve from")
    tag = snapshots[0].tag
    used_level = _DEFAULT_LEVEL.get(tag) if level is None else level
    times, xs = [], []
    for snap in snapshots:
        times.append(snap.time)
        xs.append(extract_front(snap, level=level, theta_row=theta_row))
    return FrontCurve(np.array(times), np.array(xs), tag, used_level)


@dataclass
class LawFit:
    """Fitted propagation law x(t) = c * t^alpha [* sqrt(log t)]."""

    c: float
    alpha: float
    log_correction: bool
    residual: float

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError("fitted constant must be positive")
        if not 0.5 < self.alpha < 3.0:
            raise DomainError(
                f"fitted exponent {self.alpha:.3f} outside the sanity window (0.5, 3)"
            )

    def predict(self, t):
        t = np.asarray(t, dtype=float)
        out = self.c * t**self.alpha
        if self.log_correction:
            out = out * np.sqrt(np.log(t))
        return out


def fit_law(curve, form="power", alpha=1.5):
    """Least-squares fit of the front curve; see LawFit for the model."""
    if curve.times.size < 4:
        raise DomainError("law fit needs at least 4 samples")
    if np.any(curve.times <= 0) or np.any(curve.positions <= 0):
        raise DomainError("law fit needs positive times and positions")
    if form == "power":
        lt, lx = np.log(curve.times), np.log(curve.positions)
        slope, intercept = np.polyfit(lt, lx, 1)
        fit = LawFit(float(np.exp(intercept)), float(slope), False, 0.0)
    elif form == "power_sqrt_log":
        if np.any(curve.times <= 1.0):
            raise DomainError("power_sqrt_log fit needs all sample times > 1")
        g = curve.times**alpha * np.sqrt(np.log(curve.times))
        c = float(np.dot(curve.positions, g) / np.dot(g, g))
        fit = LawFit(c, float(alpha), True, 0.0)
    else:
        raise DomainError(f"unknown law form {form!r}")
    fit.residual = float(
        np.sqrt(np.mean((curve.positions - fit.predict(curve.times)) ** 2))
    )
    return fit


# ----------------------------------------------------------------------
# set comparisons
# ----------------------------------------------------------------------


def mask_boundary(mask):
    """Nodes of the mask with an 8-neighbor (or the domain edge) outside it."""
    mask = np.asarray(mask, dtype=bool)
    eroded = ndimage.binary_erosion(mask, structure=_BOX, border_value=0)
    return mask & ~eroded


def compare_sets(mask_a, mask_b, grid):
    """Symmetric Hausdorff distance between mask boundaries, in grid units."""
    a, b = np.asarray(mask_a, dtype=bool), np.asarray(mask_b, dtype=bool)
    if a.shape != grid.shape or b.shape != grid.shape:
        raise DomainError("masks must live on the given grid")
    if not a.any() or not b.any():
        log.warning("compare_sets: empty mask, Hausdorff distance is infinite")
        return math.inf
    pts = []
    for boundary in (mask_boundary(a), mask_boundary(b)):
        j, i = np.nonzero(boundary)
        pts.append(np.column_stack([grid.x_nodes()[i], grid.theta_nodes()[j]]))
    d_ab = np.max(cKDTree(pts[1]).query(pts[0])[0])
    d_ba = np.max(cKDTree(pts[0]).query(pts[1])[0])
    return float(max(d_ab, d_ba) / grid.cell_unit())


def inclusion_violations(inner, outer, slack_cells=0):
    """Count inner-mask nodes farther than slack_cells from the outer mask."""
    inner = np.asarray(inner, dtype=bool)
    outer = np.asarray(outer, dtype=bool)
    if slack_cells:
        outer = ndimage.binary_dilation(
            outer, structure=_BOX, iterations=int(slack_cells)
        )
    return int(np.count_nonzero(inner & ~outer))
