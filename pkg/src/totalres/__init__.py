"""Drawings of graphs with large total resolution.

The total resolution of a straight-line drawing is the smaller of its
angular resolution (smallest angle between edges at a node) and its
crossing resolution (smallest angle at an edge crossing).
"""

from .constructions import BipartiteConstructionTrace, circular_complete, grid_snap, two_layer_bipartite
from .estimator import TotalResolutionLayout
from .forces import ForceConfig, RunResult, accumulate_forces, initial_layout, run, step
from .geometry import DegenerateGeometryError, Vec2
from .graph import (
    Graph,
    GraphParseError,
    GridLayout,
    Layout,
    LayoutError,
    parse_edge_list,
    parse_layout,
    random_layout,
    write_edge_list,
    write_layout,
)
from .metrics import (
    Crossing,
    ResolutionReport,
    angular_resolution,
    crossing_resolution,
    find_crossings,
    total_resolution,
)
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "BipartiteConstructionTrace",
    "Crossing",
    "DegenerateGeometryError",
    "ForceConfig",
    "Graph",
    "GraphParseError",
    "GridLayout",
    "Layout",
    "LayoutError",
    "ResolutionReport",
    "RunResult",
    "TotalResolutionLayout",
    "Vec2",
    "accumulate_forces",
    "angular_resolution",
    "circular_complete",
    "crossing_resolution",
    "find_crossings",
    "grid_snap",
    "initial_layout",
    "parse_edge_list",
    "parse_layout",
    "random_layout",
    "render_svg",
    "run",
    "step",
    "total_resolution",
    "two_layer_bipartite",
    "write_edge_list",
    "write_layout",
]
