"""Render the three figure kinds from CSV inputs."""
from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .csvio import read_boundaries_csv, read_frontier_csv, read_plane_csv

KINDS = ("plane", "boundaries", "regions")

# regime priority for the plane map (later entries win)
_REGIME_ORDER = (
    ("strong_rx1", 1, "#9ecae1"),
    ("strong_rx2", 2, "#fdae6b"),
    ("strong_both", 3, "#a1d99b"),
    ("vsi_rx1", 4, "#3182bd"),
    ("vsi_rx2", 5, "#e6550d"),
)
_NONE_COLOR = "#f0f0f0"

_LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
                "#e377c2", "#17becf", "#bcbd22")


@dataclass(frozen=True)
class PlotSpec:
    kind: str                     # plane | boundaries | regions
    inputs: tuple                 # CSV paths
    out_path: str                 # image file to write
    title: str = ""
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ValueError("labels must match inputs one-to-one")


def _new_figure():
    return plt.subplots(figsize=(6.0, 5.0), dpi=120)


def _render_plane(spec: PlotSpec, ax):
    pm = read_plane_csv(spec.inputs[0])
    code = np.zeros((len(pm.xs), len(pm.ys)), dtype=int)
    for name, value, _ in _REGIME_ORDER:
        code = np.where(pm.flags[name] == 1, value, code)
    colors = [_NONE_COLOR] + [c for _, _, c in _REGIME_ORDER]
    cmap = matplotlib.colors.ListedColormap(colors)
    ax.pcolormesh(pm.xs, pm.ys, code.T, cmap=cmap, vmin=-0.5,
                  vmax=len(colors) - 0.5, shading="nearest")
    handles = [matplotlib.patches.Patch(color=_NONE_COLOR, label="none")]
    handles += [matplotlib.patches.Patch(color=c, label=name)
                for name, _, c in _REGIME_ORDER]
    ax.legend(handles=handles, loc="upper left", fontsize=7, framealpha=0.9)
    ax.set_xlabel(pm.x_name)
    ax.set_ylabel(pm.y_name)


def _render_boundaries(spec: PlotSpec, ax):
    bl = read_boundaries_csv(spec.inputs[0])
    conditions = sorted({cond for _, cond in bl.groups})
    color = {c: _LINE_COLORS[i % len(_LINE_COLORS)]
             for i, c in enumerate(conditions)}
    seen = set()
    for (hc, cond), pts in bl.groups.items():
        label = cond if cond not in seen else None
        seen.add(cond)
        ax.plot(pts[:, 0], pts[:, 1], ".", ms=2.2, color=color[cond],
                alpha=min(1.0, 0.35 + 0.1 * abs(hc)), label=label)
    ax.legend(loc="upper left", fontsize=7, framealpha=0.9)
    ax.set_xlabel(bl.x_name)
    ax.set_ylabel(bl.y_name)


def _render_regions(spec: PlotSpec, ax):
    from .outline import frontier_outline
    for i, path in enumerate(spec.inputs):
        fs = read_frontier_csv(path)
        poly = frontier_outline(fs.directions, fs.values)
        closed = np.vstack([poly, poly[:1]])
        label = spec.labels[i] if spec.labels else fs.label
        ax.plot(closed[:, 0], closed[:, 1],
                color=_LINE_COLORS[i % len(_LINE_COLORS)],
                lw=1.6, label=label)
    ax.legend(loc="upper right", fontsize=8, framealpha=0.9)
    ax.set_xlabel("R1 [bits]")
    ax.set_ylabel("R2 [bits]")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)


_RENDERERS = {"plane": _render_plane, "boundaries": _render_boundaries,
              "regions": _render_regions}


def render(spec: PlotSpec) -> str:
    """Draw the spec to its output path; returns the path written."""
    fig, ax = _new_figure()
    try:
        _RENDERERS[spec.kind](spec, ax)
        if spec.title:
            ax.set_title(spec.title)
        fig.savefig(spec.out_path, bbox_inches="tight")
    finally:
        plt.close(fig)
    return spec.out_path
