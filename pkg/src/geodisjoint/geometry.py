"""Exact integer predicates for planar point configurations.

Every routine here works on Python integers only. Angles are never turned
into numbers: an oriented angle is represented by the sign of a cross
product, and angular order by a half-plane split plus cross-product signs.
"""

from __future__ import annotations

from functools import cmp_to_key
from math import gcd
from typing import Iterable, NamedTuple, Sequence

COORD_CAP = 2**30


class DegenerateInputError(ValueError):
    """Raised when a predicate receives coincident or collinear input it cannot order."""


class Point(NamedTuple):
    x: int
    y: int


def _sign(value: int) -> int:
    return (value > 0) - (value < 0)


def cross(ax: int, ay: int, bx: int, by: int) -> int:
    return ax * by - ay * bx


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of (q - p) x (r - p); +1 when r is counterclockwise of the ray p->q."""
    return _sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def angle_sign(x: Point, y: Point, z: Point) -> int:
    """Sign of the oriented angle at ``y`` from ray ``yx`` to ray ``yz``.

    The angle lives in (-pi, pi) and is measured counterclockwise, so
    ``angle_sign(x, y, z) == -angle_sign(z, y, x)``.
    """
    if x == y or z == y:
        raise DegenerateInputError(f"angle at {tuple(y)} has a zero-length ray")
    return orientation(y, x, z)


def _on_closed_segment(a: Point, b: Point, p: Point) -> bool:
    # p is assumed collinear with a and b
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_disjoint(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the closed segments ``ab`` and ``cd`` share no point.

    Shared endpoints, proper crossings and touching (an endpoint lying on the
    other segment, or collinear overlap) all count as intersecting.
    """
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return False
    if o1 == 0 and _on_closed_segment(a, b, c):
        return False
    if o2 == 0 and _on_closed_segment(a, b, d):
        return False
    if o3 == 0 and _on_closed_segment(c, d, a):
        return False
    if o4 == 0 and _on_closed_segment(c, d, b):
        return False
    return True


def _half(dx: int, dy: int) -> int:
    # upper half-plane together with the positive x-axis comes first
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _ccw_compare(u: tuple[int, int], v: tuple[int, int]) -> int:
    hu, hv = _half(*u), _half(*v)
    if hu != hv:
        return hu - hv
    return -_sign(cross(u[0], u[1], v[0], v[1]))


ccw_key = cmp_to_key(_ccw_compare)


def sort_ccw(pivot: Point, points: Iterable[Point]) -> list[Point]:
    """Sort points by the counterclockwise angle of ``point - pivot``, starting at the positive x-axis."""
    px, py = pivot
    return sorted(points, key=lambda p: ccw_key((p[0] - px, p[1] - py)))


def _primitive(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    return dx // g, dy // g


def point_in_convex_hull(p: Point, s: Iterable[Point]) -> bool:
    """Whether ``p`` lies in the closed convex hull of the non-empty set ``s``.

    ``p`` is outside exactly when the directions from ``p`` to the points of
    ``s`` fit in an open half-plane, i.e. some circular gap between
    consecutive directions exceeds pi. No general-position assumption.
    """
    pts = list(s)
    if not pts:
        raise ValueError("convex hull of an empty set")
    if p in pts:
        return True
    rays = {_primitive(q[0] - p[0], q[1] - p[1]) for q in pts}
    if len(rays) == 1:
        return False
    ordered = sorted(rays, key=ccw_key)
    for i, u in enumerate(ordered):
        v = ordered[(i + 1) % len(ordered)]
        if cross(u[0], u[1], v[0], v[1]) < 0:
            return False
    return True


def find_collinear_triple(points: Sequence[Point]) -> tuple[int, int, int] | None:
    """Return indices of a collinear triple (or of a duplicate pair, padded), or None.

    For each point, the other points are bucketed by the primitive direction
    of the line through them; two points sharing a bucket are collinear with
    the base point. Quadratic rather than cubic.
    """
    seen: dict[Point, int] = {}
    for i, p in enumerate(points):
        if p in seen:
            return (seen[p], i, i)
        seen[p] = i
    for i, (px, py) in enumerate(points):
        lines: dict[tuple[int, int], int] = {}
        for j in range(i + 1, len(points)):
            dx, dy = _primitive(points[j][0] - px, points[j][1] - py)
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in lines:
                return (i, lines[(dx, dy)], j)
            lines[(dx, dy)] = j
    return None


def in_general_position(points: Sequence[Point]) -> bool:
    """All points distinct and no three collinear."""
    return find_collinear_triple(points) is None


def widest_gap_extremes(pivot: Point, dirs: Sequence[Point]) -> tuple[Point, Point] | None:
    """Angular extremes of ``dirs`` around ``pivot`` when they span a cone narrower than pi.

    Returns ``(first, last)`` where ``first`` follows the unique circular gap
    wider than pi in counterclockwise order and ``last`` precedes it, so every
    direction lies in the closed cone swept counterclockwise from ``first``
    to ``last``. Returns None when no gap exceeds pi.
    """
    if not dirs:
        raise ValueError("no directions given")
    if any(d == pivot for d in dirs):
        raise DegenerateInputError(f"direction coincides with pivot {tuple(pivot)}")
    ordered = sort_ccw(pivot, dirs)
    if len(ordered) == 1:
        return ordered[0], ordered[0]
    px, py = pivot
    found = None
    for i, a in enumerate(ordered):
        b = ordered[(i + 1) % len(ordered)]
        c = cross(a[0] - px, a[1] - py, b[0] - px, b[1] - py)
        if c == 0:
            raise DegenerateInputError(f"{tuple(a)} and {tuple(b)} are collinear with pivot {tuple(pivot)}")
        if c < 0:
            found = (b, a)
    return found


def convex_hull(points: Sequence[Point]) -> list[int]:
    """Indices of the strict convex hull vertices, counterclockwise (Andrew's monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) <= 2:
        return order

    def chain(indices):
        out: list[int] = []
        for i in indices:
            while len(out) >= 2 and orientation(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def convex_position_order(points: Sequence[Point]) -> list[int] | None:
    """Counterclockwise cyclic order of the points if all of them are hull vertices, else None."""
    hull = convex_hull(points)
    if len(hull) != len(points):
        return None
    return hull
