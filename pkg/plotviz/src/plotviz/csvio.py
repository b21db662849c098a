"""Schema-checked readers for the three CSV formats the CLI emits."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


class SchemaError(ValueError):
    """Input CSV does not match the documented schema."""


_PLANE_FLAGS = ("strong_rx1", "strong_rx2", "vsi_rx1", "vsi_rx2",
                "strong_both", "degraded")
_FRONTIER_COLS = ("mu1", "mu2", "value_bits", "witness_r1", "witness_r2",
                  "params")
_BOUNDARY_COLS = ("hc", "condition")


def _read_rows(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty file, expected a header row")
    if len(rows) < 2:
        raise SchemaError(f"{path}: header only, no data rows")
    return rows[0], rows[1:]


def _require(path, header, needed):
    missing = [c for c in needed if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {', '.join(missing)}; "
            f"found columns {', '.join(header)}")


@dataclass(frozen=True)
class PlaneMap:
    x_name: str
    y_name: str
    xs: np.ndarray          # sorted unique x values
    ys: np.ndarray          # sorted unique y values
    flags: dict             # flag name -> (len(xs), len(ys)) int array


def read_plane_csv(path) -> PlaneMap:
    """Regime-plane map: x,y followed by the regime flag columns."""
    header, rows = _read_rows(path)
    _require(path, header, _PLANE_FLAGS)
    if len(header) < 2 or header[0] in _PLANE_FLAGS:
        raise SchemaError(f"{path}: first two columns must be the plane axes")
    col = {name: header.index(name) for name in _PLANE_FLAGS}
    try:
        pts = np.array([[float(r[0]), float(r[1])] for r in rows])
        vals = {name: np.array([int(r[c]) for r in rows])
                for name, c in col.items()}
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: bad cell in plane CSV: {exc}") from exc
    xs = np.unique(pts[:, 0])
    ys = np.unique(pts[:, 1])
    if len(xs) * len(ys) != len(rows):
        raise SchemaError(f"{path}: rows do not form a full x-y grid")
    xi = np.searchsorted(xs, pts[:, 0])
    yi = np.searchsorted(ys, pts[:, 1])
    flags = {}
    for name, v in vals.items():
        grid = np.zeros((len(xs), len(ys)), dtype=int)
        grid[xi, yi] = v
        flags[name] = grid
    return PlaneMap(header[0], header[1], xs, ys, flags)


@dataclass(frozen=True)
class FrontierSamples:
    directions: np.ndarray  # (n, 2)
    values: np.ndarray      # (n,)
    witnesses: np.ndarray   # (n, 2)
    label: str              # scheme/bound name when present, else file stem


def read_frontier_csv(path) -> FrontierSamples:
    """Support samples: mu1,mu2,value_bits,witness_r1,witness_r2,params[,...]."""
    header, rows = _read_rows(path)
    _require(path, header, _FRONTIER_COLS)
    c = {name: header.index(name) for name in _FRONTIER_COLS}
    try:
        dirs = np.array([[float(r[c["mu1"]]), float(r[c["mu2"]])]
                         for r in rows])
        vals = np.array([float(r[c["value_bits"]]) for r in rows])
        wits = np.array([[float(r[c["witness_r1"]]),
                          float(r[c["witness_r2"]])] for r in rows])
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: bad cell in frontier CSV: {exc}") from exc
    label = None
    for tag in ("scheme", "bound"):
        if tag in header:
            label = rows[0][header.index(tag)]
    if not label:
        import os
        label = os.path.splitext(os.path.basename(str(path)))[0]
    return FrontierSamples(dirs, vals, wits, label)


@dataclass(frozen=True)
class BoundaryLoci:
    x_name: str
    y_name: str
    # (hc value, condition name) -> (k, 2) points
    groups: dict


def read_boundaries_csv(path) -> BoundaryLoci:
    """Boundary loci: hc,condition,<x>,<y> rows from sign-change bracketing."""
    header, rows = _read_rows(path)
    _require(path, header, _BOUNDARY_COLS)
    if len(header) != 4:
        raise SchemaError(
            f"{path}: expected hc,condition,<x>,<y>; found {', '.join(header)}")
    groups: dict = {}
    try:
        for r in rows:
            key = (float(r[0]), r[1])
            groups.setdefault(key, []).append((float(r[2]), float(r[3])))
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: bad cell in boundary CSV: {exc}") from exc
    groups = {k: np.array(v) for k, v in sorted(groups.items())}
    return BoundaryLoci(header[2], header[3], groups)
