"""Run configuration: INI parsing, defaults, validation, serialization.

Schema (all keys optional unless marked required; floats accept exponent
notation):

    [profile]
    kind = linear | power_law | oscillating_log | tabulated
    exponent = 2.0              ; power_law only
    theta_samples = 0,1,2       ; tabulated only
    d_samples = 0,1,4           ; tabulated only
    limit_kind = linear         ; tabulated only, optional

    [grid]
    x_min = -1.0
    x_max = 3.0
    theta_max = 2.5
    n_x = 400
    n_theta = 200

    [region]
    kind = cap                  ; cap | polygon
    x_r = 0.0
    theta_bar = 0.2
    vertices = x1,t1;x2,t2;...  ; polygon only
    bump_width_cells = 2.0      ; initial-hump ramp width, in grid cells

    [run]
    epsilon = 0.1 | limit       ; "limit" selects the limiting diffusivity law
    t_final = 1.0
    cadence = 0.5               ; snapshot interval; must divide t_final
    cap = 1000.0                ; finite stand-in for infinite initial data
    warm_start_time = 0.4       ; start I/J solves at this time from the
                                ; distance identity (0 = raw plateau data)
    warm_start_refine = 4       ; grid-refinement factor for the distance
                                ; solve feeding the warm start (1 = none)
    eikonal_tol = 1e-8
    front_guard = error         ; error | warn | off
    seed = 0

The front-distance guard estimates the invaded extent at t_final — abscissa
(4/3)·t·sqrt(Dbar(t)) to the right, theta_bar + 2t upward — and requires 10%
of the domain width/height of clearance from the artificial boundaries, so
that truncation cannot pollute front measurements.  `front_guard = warn`
downgrades the failure to a logged warning for deliberately tight domains.
"""

from __future__ import annotations

import configparser
import io
import logging
import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .grid import HalfPlaneGrid
from .profiles import DiffusionProfile, check_admissible
from .regions import ConvexRegion

log = logging.getLogger(__name__)

_KNOWN_KEYS = {
    "profile": {"kind", "exponent", "theta_samples", "d_samples", "limit_kind"},
    "grid": {"x_min", "x_max", "theta_max", "n_x", "n_theta"},
    "region": {"kind", "x_r", "theta_bar", "vertices", "bump_width_cells"},
    "run": {
        "epsilon",
        "t_final",
        "cadence",
        "cap",
        "warm_start_time",
        "warm_start_refine",
        "eikonal_tol",
        "front_guard",
        "seed",
    },
}


@dataclass(frozen=True)
class RunConfig:
    profile: DiffusionProfile
    grid: HalfPlaneGrid
    region: ConvexRegion
    epsilon: float | None = 0.1  # None means "limit"
    t_final: float = 1.0
    cadence: float = 0.5
    cap: float = 1000.0
    warm_start_time: float = 0.4
    warm_start_refine: int = 4
    eikonal_tol: float = 1e-8
    front_guard: str = "error"
    seed: int = 0
    bump_width_cells: float = 2.0

    def with_updates(self, **kw):
        return replace(self, **kw)

    def dbar_row(self):
        """Diffusivity values on the theta rows, honoring the epsilon mode."""
        return self.profile.dbar_row(self.grid.theta_nodes(), self.epsilon)


def default_config(**overrides):
    cfg = RunConfig(
        profile=DiffusionProfile("linear"),
        grid=HalfPlaneGrid(-1.0, 3.0, 2.5, 400, 200),
        region=ConvexRegion("cap", x_r=0.0, theta_bar=0.2),
        epsilon=None,
    )
    return cfg.with_updates(**overrides) if overrides else cfg


# ----------------------------------------------------------------------
# parsing / serialization
# ----------------------------------------------------------------------


def _get(parser, section, key, conv, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        return conv(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from None


def _float_list(raw):
    return tuple(float(v) for v in raw.replace(";", ",").split(",") if v.strip())


def _vertices(raw):
    out = []
    for pair in raw.split(";"):
        xs, ts = pair.split(",")
        out.append((float(xs), float(ts)))
    return tuple(out)


def parse_config(text):
    """Parse INI text into a validated RunConfig with defaults filled."""
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser.options(section):
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    kind = _get(parser, "profile", "kind", str, "linear")
    profile_kw = {}
    if parser.has_option("profile", "exponent"):
        profile_kw["exponent"] = _get(parser, "profile", "exponent", float, 1.0)
    if kind == "tabulated":
        profile_kw["theta_samples"] = _get(
            parser, "profile", "theta_samples", _float_list, ()
        )
        profile_kw["d_samples"] = _get(parser, "profile", "d_samples", _float_list, ())
        lk = _get(parser, "profile", "limit_kind", str, "")
        profile_kw["limit_kind"] = lk or None
    profile = DiffusionProfile(kind, **profile_kw)

    grid = HalfPlaneGrid(
        x_min=_get(parser, "grid", "x_min", float, -1.0),
        x_max=_get(parser, "grid", "x_max", float, 3.0),
        theta_max=_get(parser, "grid", "theta_max", float, 2.5),
        n_x=_get(parser, "grid", "n_x", int, 400),
        n_theta=_get(parser, "grid", "n_theta", int, 200),
    )

    region_kind = _get(parser, "region", "kind", str, "cap")
    region_kw = dict(
        x_r=_get(parser, "region", "x_r", float, 0.0),
        theta_bar=_get(parser, "region", "theta_bar", float, 0.2),
    )
    if region_kind == "polygon":
        region_kw["vertices"] = _get(parser, "region", "vertices", _vertices, ())
    region = ConvexRegion(region_kind, **region_kw)

    eps_raw = _get(parser, "run", "epsilon", str, "limit")
    if eps_raw == "limit":
        epsilon = None
    else:
        try:
            epsilon = float(eps_raw)
        except ValueError:
            raise ConfigError(f"[run] epsilon must be a float or 'limit', got {eps_raw!r}")
        if not epsilon > 0:
            raise ConfigError("[run] epsilon must be > 0")

    cfg = RunConfig(
        profile=profile,
        grid=grid,
        region=region,
        epsilon=epsilon,
        t_final=_get(parser, "run", "t_final", float, 1.0),
        cadence=_get(parser, "run", "cadence", float, 0.5),
        cap=_get(parser, "run", "cap", float, 1000.0),
        warm_start_time=_get(parser, "run", "warm_start_time", float, 0.4),
        warm_start_refine=_get(parser, "run", "warm_start_refine", int, 4),
        eikonal_tol=_get(parser, "run", "eikonal_tol", float, 1e-8),
        front_guard=_get(parser, "run", "front_guard", str, "error"),
        seed=_get(parser, "run", "seed", int, 0),
        bump_width_cells=_get(parser, "region", "bump_width_cells", float, 2.0),
    )
    validate_config(cfg)
    return cfg


def serialize_config(cfg):
    """Serialize so that parse(serialize(cfg)) round-trips exactly."""
    parser = configparser.ConfigParser()
    prof = {"kind": cfg.profile.kind}
    if cfg.profile.kind == "power_law":
        prof["exponent"] = repr(cfg.profile.exponent)
    if cfg.profile.kind == "tabulated":
        prof["theta_samples"] = ",".join(repr(v) for v in cfg.profile.theta_samples)
        prof["d_samples"] = ",".join(repr(v) for v in cfg.profile.d_samples)
        if cfg.profile.limit_kind:
            prof["limit_kind"] = cfg.profile.limit_kind
    parser["profile"] = prof
    parser["grid"] = {
        "x_min": repr(cfg.grid.x_min),
        "x_max": repr(cfg.grid.x_max),
        "theta_max": repr(cfg.grid.theta_max),
        "n_x": str(cfg.grid.n_x),
        "n_theta": str(cfg.grid.n_theta),
    }
    reg = {
        "kind": cfg.region.kind,
        "x_r": repr(cfg.region.x_r),
        "theta_bar": repr(cfg.region.theta_bar),
        "bump_width_cells": repr(cfg.bump_width_cells),
    }
    if cfg.region.kind == "polygon":
        reg["vertices"] = ";".join(f"{x!r},{t!r}" for x, t in cfg.region.vertices)
    parser["region"] = reg
    parser["run"] = {
        "epsilon": "limit" if cfg.epsilon is None else repr(cfg.epsilon),
        "t_final": repr(cfg.t_final),
        "cadence": repr(cfg.cadence),
        "cap": repr(cfg.cap),
        "warm_start_time": repr(cfg.warm_start_time),
        "warm_start_refine": str(cfg.warm_start_refine),
        "eikonal_tol": repr(cfg.eikonal_tol),
        "front_guard": cfg.front_guard,
        "seed": str(cfg.seed),
    }
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------


def predicted_front_x(cfg, t=None):
    """Right-front abscissa estimate x_r + (4/3)·t·sqrt(Dbar(t))."""
    t = cfg.t_final if t is None else t
    return cfg.region.x_r + (4.0 / 3.0) * t * math.sqrt(float(cfg.profile.D_limit(t)))


def predicted_front_theta(cfg, t=None):
    """Upward reach estimate theta_bar + 2t (unit vertical metric speed)."""
    t = cfg.t_final if t is None else t
    return cfg.region.theta_bar + 2.0 * t


def validate_config(cfg):
    if not cfg.cap > 0 or not math.isfinite(cfg.cap):
        raise ConfigError("[run] cap must be positive and finite")
    if not cfg.t_final > 0:
        raise ConfigError("[run] t_final must be > 0")
    if not cfg.cadence > 0:
        raise ConfigError("[run] cadence must be > 0")
    ratio = cfg.t_final / cfg.cadence
    if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
        raise ConfigError("[run] cadence must divide t_final")
    if cfg.front_guard not in ("error", "warn", "off"):
        raise ConfigError("[run] front_guard must be error|warn|off")
    if cfg.warm_start_time < 0:
        raise ConfigError("[run] warm_start_time must be >= 0")
    if cfg.warm_start_time >= cfg.t_final:
        raise ConfigError("[run] warm_start_time must be < t_final")
    if cfg.warm_start_refine < 1:
        raise ConfigError("[run] warm_start_refine must be >= 1")
    if cfg.region.theta_bar >= cfg.grid.theta_max:
        raise ConfigError(
            f"region cap theta_bar = {cfg.region.theta_bar:g} exceeds the domain "
            f"(theta_max = {cfg.grid.theta_max:g})"
        )
    if cfg.region.x_r < cfg.grid.x_min:
        raise ConfigError("source region lies entirely left of the grid")
    check_admissible(cfg.profile, max(cfg.grid.theta_max, 1.0))

    if cfg.front_guard != "off":
        msgs = []
        fx = predicted_front_x(cfg)
        margin_x = 0.1 * (cfg.grid.x_max - cfg.grid.x_min)
        if fx > cfg.grid.x_max - margin_x:
            msgs.append(
                f"predicted front x = {fx:.3f} (rule (4/3)·t·sqrt(Dbar(t)) at "
                f"t = {cfg.t_final:g}) is within 10% of x_max = {cfg.grid.x_max:g}"
            )
        ft = predicted_front_theta(cfg)
        margin_t = 0.1 * cfg.grid.theta_max
        if ft > cfg.grid.theta_max - margin_t:
            msgs.append(
                f"predicted reach theta = {ft:.3f} is within 10% of "
                f"theta_max = {cfg.grid.theta_max:g}"
            )
        for msg in msgs:
            if cfg.front_guard == "error":
                raise ConfigError(f"front-distance guard: {msg} "
                                  "(set run.front_guard = warn to override)")
            log.warning("front-distance guard: %s", msg)
    return cfg
