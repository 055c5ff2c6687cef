"""Exact counting of disjoint edge pairs in geometric graphs, with instance-level
checks of the associated lower and upper bounds."""

from __future__ import annotations

from .exact import Surd, binom3, conjecture_threshold, potential, sqrt_edge_bound, within_sqrt_bound
from .generators import (
    GenerationError,
    GenSpec,
    convex_complete,
    convex_cycle,
    convex_position_points,
    disjoint_stars,
    extremal_gnk,
    generate,
    random_convex_graph,
    random_general_graph,
)
from .geometry import (
    DegenerateInputError,
    Point,
    angle_sign,
    in_general_position,
    orientation,
    point_in_convex_hull,
    segments_disjoint,
    sort_ccw,
)
from .graph import (
    GeometricGraph,
    GraphAggregates,
    GraphValidationError,
    NotApplicableError,
    VertexLocalData,
    aggregates,
    build_graph,
    dj_edge,
    dj_graph,
    extreme_edges,
    is_convex_vertex,
    is_locally_convex,
    prune_leftmost,
    vertex_local_data,
)
from .verifier import (
    HOLDS,
    NOT_APPLICABLE,
    VIOLATED,
    ClaimId,
    ClaimReport,
    brute_force_dj,
    check_all,
    check_claim,
    convex_chord_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "HOLDS",
    "NOT_APPLICABLE",
    "VIOLATED",
    "ClaimId",
    "ClaimReport",
    "DegenerateInputError",
    "GenSpec",
    "GenerationError",
    "GeometricGraph",
    "GraphAggregates",
    "GraphValidationError",
    "NotApplicableError",
    "Point",
    "Surd",
    "VertexLocalData",
    "aggregates",
    "angle_sign",
    "binom3",
    "brute_force_dj",
    "build_graph",
    "check_all",
    "check_claim",
    "conjecture_threshold",
    "convex_chord_oracle",
    "convex_complete",
    "convex_cycle",
    "convex_position_points",
    "disjoint_stars",
    "dj_edge",
    "dj_graph",
    "extremal_gnk",
    "extreme_edges",
    "generate",
    "in_general_position",
    "is_convex_vertex",
    "is_locally_convex",
    "orientation",
    "point_in_convex_hull",
    "potential",
    "prune_leftmost",
    "random_convex_graph",
    "random_general_graph",
    "segments_disjoint",
    "sort_ccw",
    "sqrt_edge_bound",
    "vertex_local_data",
    "within_sqrt_bound",
]
