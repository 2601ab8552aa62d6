"""On-disk formats: CSV snapshots and JSON experiment manifests.

All floats are written with repr-faithful %.17g formatting, so identical
runs produce bit-identical CSV files (the determinism contract) and values
round-trip exactly through the generic column reader used in tests.  Wall
times never go into CSVs — they live in the JSON manifest, which is the one
deliberately non-reproducible output.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def _fmt(v):
    return format(float(v), ".17g")


def _write_rows(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    return path


def write_field_csv(path, field):
    """One solver snapshot: t,x,theta,value,tag per node."""
    x = field.grid.x_nodes()
    th = field.grid.theta_nodes()
    t = _fmt(field.time)
    rows = (
        (t, _fmt(x[i]), _fmt(th[j]), _fmt(field.values[j, i]), field.tag)
        for j in range(field.grid.n_theta)
        for i in range(field.grid.n_x)
    )
    return _write_rows(path, ("t", "x", "theta", "value", "tag"), rows)


def write_rd_csv(path, u_field, v_field):
    """Paired density/transform snapshot: t,x,theta,u,v per node."""
    grid = u_field.grid
    x, th = grid.x_nodes(), grid.theta_nodes()
    t = _fmt(u_field.time)
    rows = (
        (t, _fmt(x[i]), _fmt(th[j]),
         _fmt(u_field.values[j, i]), _fmt(v_field.values[j, i]))
        for j in range(grid.n_theta)
        for i in range(grid.n_x)
    )
    return _write_rows(path, ("t", "x", "theta", "u", "v"), rows)


def write_front_csv(path, curve):
    rows = (
        (_fmt(t), _fmt(xf), curve.tag, _fmt(curve.level))
        for t, xf in zip(curve.times, curve.positions)
    )
    return _write_rows(path, ("t", "x_front", "tag", "level"), rows)


def write_profile_csv(path, grid, profile, tag):
    """Per-row front abscissae: theta,x_front (empty value where no front)."""
    th = grid.theta_nodes()
    rows = (
        (_fmt(th[j]), "" if np.isnan(profile[j]) else _fmt(profile[j]), tag)
        for j in range(grid.n_theta)
    )
    return _write_rows(path, ("theta", "x_front", "tag"), rows)


def write_mask_csv(path, grid, mask, name):
    """Member nodes of a set: row/column indices plus coordinates."""
    x, th = grid.x_nodes(), grid.theta_nodes()
    jj, ii = np.nonzero(np.asarray(mask, dtype=bool))
    rows = (
        (str(j), str(i), _fmt(x[i]), _fmt(th[j]), name)
        for j, i in zip(jj.tolist(), ii.tolist())
    )
    return _write_rows(path, ("j", "i", "x", "theta", "set"), rows)


def write_trajectory_csv(path, traj):
    s = np.linspace(0.0, traj.t, traj.g1.size)
    rows = (
        (_fmt(s[k]), _fmt(traj.g1[k]), _fmt(traj.g2[k]))
        for k in range(traj.g1.size)
    )
    return _write_rows(path, ("s", "gamma1", "gamma2"), rows)


def write_manifest(path, manifest):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path


def read_csv_columns(path):
    """Read one of our CSVs back as {column: list}; floats where they parse."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    cols = {name: [] for name in header}
    for line in lines[1:]:
        for name, cell in zip(header, line.split(",")):
            try:
                cols[name].append(float(cell))
            except ValueError:
                cols[name].append(cell)
    return cols
