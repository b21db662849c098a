"""Figure rendering for the channel-bounds CSV outputs.

Consumes exactly the CSV schemas the `ifccr` command emits (regime-plane
maps, boundary-sweep loci, frontier support samples) and renders them as
static PNG images.
"""
from .csvio import SchemaError, read_boundaries_csv, read_frontier_csv, read_plane_csv
from .outline import frontier_outline
from .render import PlotSpec, render

__all__ = [
    "PlotSpec",
    "SchemaError",
    "frontier_outline",
    "read_boundaries_csv",
    "read_frontier_csv",
    "read_plane_csv",
    "render",
]
