"""Geometric graphs and the disjoint-edge quantities defined on them.

A :class:`GeometricGraph` is an immutable point list plus a simple edge set.
Derived data (adjacency, the edge/edge disjointness matrix, extreme edges)
is computed lazily and memoised on the instance, so one graph object can be
handed to many analyses without recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exact import potential
from .geometry import (
    COORD_CAP,
    Point,
    find_collinear_triple,
    orientation,
    point_in_convex_hull,
    widest_gap_extremes,
)

Edge = tuple[int, int]


class GraphValidationError(ValueError):
    """Base class for rejected graph input; ``rule`` names the failed check."""

    rule = "invalid-graph"


class CoordinateTypeError(GraphValidationError):
    rule = "integer-coordinates"


class CoordinateRangeError(GraphValidationError):
    rule = "coordinate-cap"


class EmptyGraphError(GraphValidationError):
    rule = "non-empty"


class GeneralPositionError(GraphValidationError):
    rule = "general-position"


class EdgeIndexError(GraphValidationError):
    rule = "edge-index-range"


class LoopError(GraphValidationError):
    rule = "no-loops"


class DuplicateEdgeError(GraphValidationError):
    rule = "no-duplicate-edges"


class NotApplicableError(ValueError):
    """A quantity was requested outside the hypotheses under which it is defined."""


class UnknownEdgeError(KeyError):
    pass


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class GeometricGraph:
    """Points in general position (vertex ``i`` sits at ``points[i]``) and sorted edges ``(i, j)``, ``i < j``.

    Build instances with :func:`build_graph`, which validates the input.
    """

    points: tuple[Point, ...]
    edges: tuple[Edge, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in self.points]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adjacency)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {uv: i for i, uv in enumerate(self.edges)}

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in self.points]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def disjoint_matrix(self) -> np.ndarray:
        """Boolean ``e x e`` matrix; entry ``[i, j]`` is True iff edges i and j are disjoint."""
        return _disjoint_matrix(self.points, self.edges)

    @cached_property
    def dj_counts(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.disjoint_matrix.sum(axis=1))

    @cached_property
    def convex_flags(self) -> tuple[bool, ...]:
        flags = []
        for v, nbrs in enumerate(self.adjacency):
            if not nbrs:
                flags.append(True)
            else:
                flags.append(not point_in_convex_hull(self.points[v], [self.points[w] for w in nbrs]))
        return tuple(flags)

    @cached_property
    def extremes(self) -> tuple[tuple[int, int] | None, ...]:
        """Per vertex ``(leftmost, rightmost)``, or None for isolated or non-convex vertices."""
        where = {p: i for i, p in enumerate(self.points)}
        out: list[tuple[int, int] | None] = []
        for v, nbrs in enumerate(self.adjacency):
            if not nbrs or not self.convex_flags[v]:
                out.append(None)
                continue
            first, last = widest_gap_extremes(self.points[v], [self.points[w] for w in sorted(nbrs)])
            out.append((where[last], where[first]))
        return tuple(out)

    def leftmost(self, v: int) -> int:
        ext = self.extremes[v]
        if ext is None:
            raise NotApplicableError(f"vertex {v} has no extreme edges")
        return ext[0]

    def rightmost(self, v: int) -> int:
        ext = self.extremes[v]
        if ext is None:
            raise NotApplicableError(f"vertex {v} has no extreme edges")
        return ext[1]

    def disjoint(self, uv: Edge, xy: Edge) -> bool:
        idx = self.edge_index
        return bool(self.disjoint_matrix[idx[edge_key(*uv)], idx[edge_key(*xy)]])


def _safe_for_int64(points: Sequence[Point]) -> bool:
    # |coord| < 2**30 keeps every cross product of differences below 2**63
    return all(abs(x) < COORD_CAP and abs(y) < COORD_CAP for x, y in points)


def _orientation_table(points: Sequence[Point], edges: Sequence[Edge]) -> np.ndarray:
    """``table[k, v]`` = orientation(a_k, b_k, points[v]) for edge k = (a_k, b_k)."""
    dtype = np.int64 if _safe_for_int64(points) else object
    pts = np.array([list(p) for p in points], dtype=dtype).reshape(len(points), 2)
    ends = np.array(edges, dtype=np.intp).reshape(len(edges), 2)
    a, b = pts[ends[:, 0]], pts[ends[:, 1]]
    dx = (b[:, 0] - a[:, 0])[:, None]
    dy = (b[:, 1] - a[:, 1])[:, None]
    val = dx * (pts[None, :, 1] - a[:, 1][:, None]) - dy * (pts[None, :, 0] - a[:, 0][:, None])
    return ((val > 0).astype(np.int8) - (val < 0).astype(np.int8)).reshape(len(edges), len(points))


def _disjoint_matrix(points: Sequence[Point], edges: Sequence[Edge]) -> np.ndarray:
    # general position: distinct endpoints are never collinear, so crossing is
    # exactly "each segment strictly separates the other's endpoints"
    table = _orientation_table(points, edges)
    ends = np.array(edges, dtype=np.intp).reshape(len(edges), 2)
    a, b = ends[:, 0], ends[:, 1]
    split = (table[:, a] * table[:, b]) < 0
    crossing = split & split.T
    share = (
        (a[:, None] == a[None, :])
        | (a[:, None] == b[None, :])
        | (b[:, None] == a[None, :])
        | (b[:, None] == b[None, :])
    )
    return ~(crossing | share)


def build_graph(points: Iterable, edges: Iterable, name: str | None = None) -> GeometricGraph:
    """Validate and construct a geometric graph.

    Raises a :class:`GraphValidationError` subclass naming the offending
    coordinate, triple or edge.
    """
    pts: list[Point] = []
    for i, p in enumerate(points):
        x, y = p
        if not (_is_int(x) and _is_int(y)):
            raise CoordinateTypeError(f"point {i} has non-integer coordinates {p!r}")
        if abs(x) > COORD_CAP or abs(y) > COORD_CAP:
            raise CoordinateRangeError(f"point {i} = ({x}, {y}) exceeds the coordinate cap 2^30")
        pts.append(Point(x, y))
    if not pts:
        raise EmptyGraphError("a geometric graph needs at least one vertex")
    triple = find_collinear_triple(pts)
    if triple is not None:
        i, j, k = triple
        if j == k:
            raise GeneralPositionError(f"points {i} and {j} coincide at {tuple(pts[i])}")
        raise GeneralPositionError(
            f"points {i}, {j}, {k} are collinear: {tuple(pts[i])}, {tuple(pts[j])}, {tuple(pts[k])}"
        )
    seen: set[Edge] = set()
    for pair in edges:
        u, v = pair
        if not (_is_int(u) and _is_int(v)):
            raise EdgeIndexError(f"edge {tuple(pair)!r} has non-integer endpoints")
        if not (0 <= u < len(pts) and 0 <= v < len(pts)):
            raise EdgeIndexError(f"edge ({u}, {v}) references a vertex outside 0..{len(pts) - 1}")
        if u == v:
            raise LoopError(f"edge ({u}, {v}) is a loop")
        key = edge_key(u, v)
        if key in seen:
            raise DuplicateEdgeError(f"edge ({u}, {v}) appears more than once")
        seen.add(key)
    return GeometricGraph(tuple(pts), tuple(sorted(seen)), name)


def is_convex_vertex(g: GeometricGraph, v: int) -> bool:
    """Whether ``v`` lies strictly outside the convex hull of its neighbours (isolated vertices count as convex)."""
    return g.convex_flags[v]


def is_locally_convex(g: GeometricGraph) -> bool:
    return all(g.convex_flags)


def extreme_edges(g: GeometricGraph, v: int) -> tuple[int, int]:
    """``(leftmost, rightmost)`` neighbours of a convex vertex.

    The counterclockwise angle from the rightmost to the leftmost neighbour is
    the largest oriented angle spanned by two neighbours. A degree-1 vertex
    returns its unique neighbour twice.
    """
    if not g.adjacency[v]:
        raise NotApplicableError(f"vertex {v} is isolated")
    if not g.convex_flags[v]:
        raise NotApplicableError(f"vertex {v} is not convex")
    return g.extremes[v]


def dj_edge(g: GeometricGraph, uv: Edge) -> frozenset[Edge]:
    """Edges of ``g`` disjoint from ``uv``."""
    key = edge_key(*uv)
    if key not in g.edge_index:
        raise UnknownEdgeError(f"({uv[0]}, {uv[1]}) is not an edge")
    row = g.disjoint_matrix[g.edge_index[key]]
    return frozenset(g.edges[j] for j in np.flatnonzero(row))


def dj_graph(g: GeometricGraph) -> int:
    """Number of unordered pairs of disjoint edges."""
    return sum(g.dj_counts) // 2


@dataclass(frozen=True)
class VertexLocalData:
    vertex: int
    degree: int
    is_convex: bool
    leftmost: int
    rightmost: int
    alpha_l: int
    alpha_r: int
    delta_l: int
    delta_r: int
    beta_l: int
    beta_r: int
    set_L: frozenset[Edge]
    set_R: frozenset[Edge]
    set_Lp: frozenset[Edge]
    set_Rp: frozenset[Edge]
    dj_l: frozenset[Edge]
    dj_r: frozenset[Edge]


def _require_local(g: GeometricGraph, v: int) -> None:
    if not is_locally_convex(g):
        raise NotApplicableError("graph is not locally convex")
    if not g.adjacency[v]:
        raise NotApplicableError(f"vertex {v} is isolated")


def _side_edges(g: GeometricGraph, v: int, pivot: int, sign: int) -> frozenset[Edge]:
    # edges pivot-x whose angle x-pivot-v has the given sign
    P = g.points
    return frozenset(
        edge_key(pivot, x)
        for x in g.adjacency[pivot]
        if x != v and orientation(P[pivot], P[x], P[v]) == sign
    )


def _dj_side(g: GeometricGraph, v: int, end: int) -> frozenset[Edge]:
    row = g.disjoint_matrix[g.edge_index[edge_key(v, end)]]
    found = set()
    for w in g.adjacency[v]:
        for idx in g.incident_edges[w]:
            if row[idx]:
                found.add(g.edges[idx])
    return frozenset(found)


def vertex_local_data(g: GeometricGraph, v: int) -> VertexLocalData:
    """All per-vertex quantities of the leftmost/rightmost machinery at ``v``.

    Needs a locally convex graph and a non-isolated ``v``. The right-hand
    set is taken over edges ``r_v x`` with the angle ``x r_v v`` negative.
    """
    _require_local(g, v)
    ext = g.extremes
    left, right = ext[v]
    set_L = _side_edges(g, v, left, +1)
    set_R = _side_edges(g, v, right, -1)

    def other(uv: Edge, u: int) -> int:
        return uv[1] if uv[0] == u else uv[0]

    set_Lp = frozenset(uv for uv in set_L if ext[other(uv, left)][0] == left)
    set_Rp = frozenset(uv for uv in set_R if ext[other(uv, right)][1] == right)
    delta_l = int(any(ext[other(uv, left)][0] != left for uv in set_L))
    delta_r = int(any(ext[other(uv, right)][1] != right for uv in set_R))
    alpha_l = sum(1 for w in g.adjacency[v] if ext[w][0] == v)
    alpha_r = sum(1 for w in g.adjacency[v] if ext[w][1] == v)
    deg = g.degrees[v]
    return VertexLocalData(
        vertex=v,
        degree=deg,
        is_convex=True,
        leftmost=left,
        rightmost=right,
        alpha_l=alpha_l,
        alpha_r=alpha_r,
        delta_l=delta_l,
        delta_r=delta_r,
        beta_l=int(deg == alpha_l),
        beta_r=int(deg == alpha_r),
        set_L=set_L,
        set_R=set_R,
        set_Lp=set_Lp,
        set_Rp=set_Rp,
        dj_l=_dj_side(g, v, left),
        dj_r=_dj_side(g, v, right),
    )


def all_local_data(g: GeometricGraph) -> tuple[VertexLocalData, ...]:
    """Local data for every vertex; memoised on the graph."""
    cached = g.__dict__.get("_local_data")
    if cached is None:
        if not is_locally_convex(g) or g.min_degree < 1:
            raise NotApplicableError("local data needs a locally convex graph without isolated vertices")
        cached = tuple(vertex_local_data(g, v) for v in range(g.n))
        g.__dict__["_local_data"] = cached
    return cached


def leftmost_edges(g: GeometricGraph) -> frozenset[Edge]:
    return frozenset(edge_key(v, g.extremes[v][0]) for v in range(g.n))


def double_edges(g: GeometricGraph, side: int = 0) -> list[Edge]:
    """Edges ``uv`` with ``u`` extreme for ``v`` and ``v`` extreme for ``u`` (side 0: leftmost, 1: rightmost)."""
    ext = g.extremes
    return [(u, v) for u, v in g.edges if ext[u][side] == v and ext[v][side] == u]


def saturated_count(g: GeometricGraph, side: int = 0) -> int:
    """Vertices ``v`` such that every neighbour ``w`` has ``v`` as its extreme neighbour on ``side``."""
    ext = g.extremes
    return sum(1 for v in range(g.n) if all(ext[w][side] == v for w in g.adjacency[v]))


def leftmost_pairs(g: GeometricGraph) -> list[Edge]:
    """Edges ``uv`` whose endpoints' leftmost edges are disjoint."""
    ext = g.extremes
    return [
        (u, v)
        for u, v in g.edges
        if g.disjoint(edge_key(u, ext[u][0]), edge_key(v, ext[v][0]))
    ]


@dataclass(frozen=True)
class GraphAggregates:
    """Whole-graph counts. Fields that need a locally convex graph without
    isolated vertices are None when that fails."""

    n: int
    e: int
    dj_total: int
    dj_per_edge: dict[Edge, int]
    m_max: int
    avg_degree: Fraction
    potential: Fraction
    n_l: int | None
    n_r: int | None
    t_l: int | None
    t_r: int | None
    n_ell_pairs: int | None


def aggregates(g: GeometricGraph) -> GraphAggregates:
    local = is_locally_convex(g) and g.min_degree >= 1
    return GraphAggregates(
        n=g.n,
        e=g.e,
        dj_total=dj_graph(g),
        dj_per_edge=dict(zip(g.edges, g.dj_counts)),
        m_max=max(g.dj_counts, default=0),
        avg_degree=Fraction(2 * g.e, g.n),
        potential=potential(g.n, g.e),
        n_l=saturated_count(g, 0) if local else None,
        n_r=saturated_count(g, 1) if local else None,
        t_l=len(double_edges(g, 0)) if local else None,
        t_r=len(double_edges(g, 1)) if local else None,
        n_ell_pairs=len(leftmost_pairs(g)) if local else None,
    )


@dataclass(frozen=True)
class Pruning:
    """Result of deleting every leftmost edge and every vertex all of whose edges are leftmost edges of its neighbours.

    ``kept[i]`` is the original id of vertex ``i`` of ``graph``.
    """

    graph: GeometricGraph
    kept: tuple[int, ...]
    removed_edges: frozenset[Edge]
    n_l: int
    t_l: int
    source_n: int
    source_e: int

    @property
    def vertex_count_holds(self) -> bool:
        return len(self.kept) == self.source_n - self.n_l

    @property
    def edge_count_holds(self) -> bool:
        return self.graph.e == self.source_e - self.source_n + self.t_l

    def original_edges(self) -> frozenset[Edge]:
        return frozenset(edge_key(self.kept[u], self.kept[v]) for u, v in self.graph.edges)


def leftmost_pruning(g: GeometricGraph) -> Pruning:
    if not is_locally_convex(g):
        raise NotApplicableError("pruning needs a locally convex graph")
    if g.min_degree < 2:
        raise NotApplicableError("pruning needs minimum degree at least 2")
    cached = g.__dict__.get("_pruning")
    if cached is not None:
        return cached
    ext = g.extremes
    removed = leftmost_edges(g)
    dropped = {v for v in range(g.n) if all(ext[w][0] == v for w in g.adjacency[v])}
    kept = tuple(v for v in range(g.n) if v not in dropped)
    new_id = {v: i for i, v in enumerate(kept)}
    surviving = [
        (new_id[u], new_id[v])
        for u, v in g.edges
        if (u, v) not in removed and u in new_id and v in new_id
    ]
    pruned = GeometricGraph(
        tuple(g.points[v] for v in kept),
        tuple(sorted(surviving)),
        None if g.name is None else f"{g.name}-pruned",
    )
    result = Pruning(
        graph=pruned,
        kept=kept,
        removed_edges=removed,
        n_l=len(dropped),
        t_l=len(double_edges(g, 0)),
        source_n=g.n,
        source_e=g.e,
    )
    g.__dict__["_pruning"] = result
    return result


def prune_leftmost(g: GeometricGraph) -> GeometricGraph:
    """The graph left after deleting all leftmost edges and the vertices they exhaust."""
    return leftmost_pruning(g).graph
