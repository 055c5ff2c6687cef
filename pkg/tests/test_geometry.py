from __future__ import annotations

import math
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from geodisjoint.geometry import (
    DegenerateInputError,
    Point,
    angle_sign,
    convex_hull,
    convex_position_order,
    find_collinear_triple,
    in_general_position,
    orientation,
    point_in_convex_hull,
    segments_disjoint,
    sort_ccw,
    widest_gap_extremes,
)

coord = st.integers(-50, 50)
point = st.builds(Point, coord, coord)
big_point = st.builds(Point, st.integers(-(2**30), 2**30), st.integers(-(2**30), 2**30))


def P(x, y):
    return Point(x, y)


@pytest.mark.parametrize(
    "p, q, r, expected",
    [
        ((0, 0), (1, 0), (0, 1), 1),
        ((0, 0), (1, 0), (2, 0), 0),
        ((0, 0), (0, 1), (1, 0), -1),
    ],
)
def test_orientation_examples(p, q, r, expected):
    assert orientation(P(*p), P(*q), P(*r)) == expected


@given(big_point, big_point, big_point)
def test_orientation_antisymmetric_and_cyclic(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)
    assert orientation(p, q, r) == orientation(q, r, p)


@pytest.mark.parametrize(
    "x, y, z, expected",
    [
        ((1, 0), (0, 0), (0, 1), 1),
        ((0, 1), (0, 0), (1, 0), -1),
        ((1, 1), (0, 0), (2, 2), 0),
    ],
)
def test_angle_sign_examples(x, y, z, expected):
    assert angle_sign(P(*x), P(*y), P(*z)) == expected


def test_angle_sign_rejects_zero_length_ray():
    with pytest.raises(DegenerateInputError):
        angle_sign(P(0, 0), P(0, 0), P(1, 0))
    with pytest.raises(DegenerateInputError):
        angle_sign(P(1, 0), P(0, 0), P(0, 0))


@given(point, point, point)
def test_angle_sign_antisymmetry(x, y, z):
    assume(x != y and z != y)
    assert angle_sign(x, y, z) == -angle_sign(z, y, x)


@pytest.mark.parametrize(
    "a, b, c, d, expected",
    [
        ((0, 0), (1, 0), (0, 1), (1, 1), True),
        ((0, 0), (2, 2), (0, 2), (2, 0), False),
        ((0, 0), (1, 0), (1, 0), (2, 1), False),
        ((0, 0), (2, 0), (1, 0), (1, 5), False),  # T-junction
        ((0, 0), (2, 0), (1, 0), (3, 0), False),  # collinear overlap
        ((0, 0), (1, 0), (2, 0), (3, 0), True),  # collinear, apart
    ],
)
def test_segments_disjoint_examples(a, b, c, d, expected):
    assert segments_disjoint(P(*a), P(*b), P(*c), P(*d)) is expected


def _on_segment_exact(p, a, b):
    # parametric oracle with Fractions
    if orientation(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _segments_meet_oracle(a, b, c, d):
    """Solve a + s(b - a) = c + t(d - c) by Cramer's rule; handle parallel cases by endpoint checks."""
    from fractions import Fraction

    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    den = rx * sy - ry * sx
    if den == 0:
        return any(
            [_on_segment_exact(c, a, b), _on_segment_exact(d, a, b), _on_segment_exact(a, c, d), _on_segment_exact(b, c, d)]
        )
    qx, qy = c.x - a.x, c.y - a.y
    s = Fraction(qx * sy - qy * sx, den)
    t = Fraction(qx * ry - qy * rx, den)
    return 0 <= s <= 1 and 0 <= t <= 1


@given(point, point, point, point)
def test_segments_disjoint_matches_parametric_oracle(a, b, c, d):
    assume(a != b and c != d)
    assert segments_disjoint(a, b, c, d) is not _segments_meet_oracle(a, b, c, d)


@given(point, point, point, point)
def test_segments_disjoint_symmetries(a, b, c, d):
    assume(a != b and c != d)
    base = segments_disjoint(a, b, c, d)
    assert segments_disjoint(c, d, a, b) is base
    assert segments_disjoint(b, a, c, d) is base
    assert segments_disjoint(a, b, d, c) is base


@given(st.lists(point, min_size=4, max_size=4, unique=True))
def test_four_general_points_trichotomy(pts):
    assume(in_general_position(pts))
    a, b, c, d = pts
    crossing = orientation(a, b, c) * orientation(a, b, d) < 0 and orientation(c, d, a) * orientation(c, d, b) < 0
    assert segments_disjoint(a, b, c, d) is not crossing
    # sharing an endpoint is never disjoint
    assert not segments_disjoint(a, b, b, c)


@pytest.mark.parametrize(
    "p, s, expected",
    [
        ((0, 0), [(1, 0), (0, 1), (-1, -1)], True),
        ((5, 5), [(0, 0), (1, 0), (0, 1)], False),
        ((0, 0), [(1, 1)], False),
        ((1, 1), [(1, 1)], True),
        ((1, 1), [(0, 0), (2, 2)], True),
        ((1, 2), [(0, 0), (2, 2)], False),
        ((3, 3), [(0, 0), (2, 2)], False),
    ],
)
def test_point_in_convex_hull_examples(p, s, expected):
    assert point_in_convex_hull(P(*p), [P(*q) for q in s]) is expected


def test_point_in_convex_hull_rejects_empty_set():
    with pytest.raises(ValueError):
        point_in_convex_hull(P(0, 0), [])


def _in_triangle(p, a, b, c):
    o = (orientation(a, b, p), orientation(b, c, p), orientation(c, a, p))
    return all(x >= 0 for x in o) or all(x <= 0 for x in o)


def _caratheodory_oracle(p, s):
    """p in hull(s) iff p lies in a point, segment or triangle spanned by at most three points of s."""
    if p in s:
        return True
    if any(_on_segment_exact(p, a, b) for a, b in combinations(s, 2)):
        return True
    return any(orientation(a, b, c) != 0 and _in_triangle(p, a, b, c) for a, b, c in combinations(s, 3))


@settings(max_examples=300)
@given(point, st.lists(point, min_size=1, max_size=7))
def test_point_in_convex_hull_matches_caratheodory(p, s):
    assert point_in_convex_hull(p, s) is _caratheodory_oracle(p, s)


@pytest.mark.parametrize(
    "pts, expected",
    [
        ([(0, 0), (1, 0), (0, 1), (2, 3)], True),
        ([(0, 0), (1, 1), (2, 2)], False),
        ([(0, 0), (0, 0)], False),
        ([], True),
        ([(4, 4)], True),
    ],
)
def test_in_general_position_examples(pts, expected):
    assert in_general_position([P(*q) for q in pts]) is expected


@given(st.lists(st.builds(Point, st.integers(-6, 6), st.integers(-6, 6)), max_size=9))
def test_in_general_position_matches_triple_brute_force(pts):
    brute = len(set(pts)) == len(pts) and all(orientation(a, b, c) != 0 for a, b, c in combinations(pts, 3))
    assert in_general_position(pts) is brute
    hit = find_collinear_triple(pts)
    if hit is not None:
        i, j, k = hit
        assert pts[i] == pts[j] or orientation(pts[i], pts[j], pts[k]) == 0


def test_sort_ccw_starts_at_positive_x_axis():
    pivot = P(0, 0)
    pts = [P(0, -1), P(-1, 0), P(1, 0), P(0, 1), P(1, 1), P(1, -1)]
    assert sort_ccw(pivot, pts) == [P(1, 0), P(1, 1), P(0, 1), P(-1, 0), P(0, -1), P(1, -1)]


@pytest.mark.parametrize(
    "dirs, expected",
    [
        ([(1, 1), (0, 1), (-1, 1)], ((1, 1), (-1, 1))),
        ([(1, 0), (0, 1), (-1, 0), (0, -1)], None),
        ([(2, 1)], ((2, 1), (2, 1))),
    ],
)
def test_widest_gap_examples(dirs, expected):
    got = widest_gap_extremes(P(0, 0), [P(*d) for d in dirs])
    if expected is None:
        assert got is None
    else:
        assert got == (P(*expected[0]), P(*expected[1]))


@pytest.mark.parametrize("dirs", [[(0, 0), (1, 0)], [(1, 0), (2, 0), (0, 1)], [(1, 0), (-1, 0)]])
def test_widest_gap_degenerate(dirs):
    with pytest.raises(DegenerateInputError):
        widest_gap_extremes(P(0, 0), [P(*d) for d in dirs])


def _argmax_oracle(pivot, dirs):
    """Pair (a, b) maximising the counterclockwise angle from a to b, if that angle is below pi.

    Float angles are fine here: this is only a test oracle on small integer inputs.
    """
    best, pair = -1.0, None
    for a in dirs:
        for b in dirs:
            ang = math.atan2(b.y - pivot.y, b.x - pivot.x) - math.atan2(a.y - pivot.y, a.x - pivot.x)
            ang = (ang + math.pi) % (2 * math.pi) - math.pi
            if ang > best:
                best, pair = ang, (a, b)
    return pair


@settings(max_examples=300)
@given(point, st.lists(point, min_size=1, max_size=8, unique=True))
def test_widest_gap_matches_atan2_argmax(pivot, dirs):
    assume(in_general_position([pivot] + dirs))
    got = widest_gap_extremes(pivot, dirs)
    inside = point_in_convex_hull(pivot, dirs)
    assert (got is None) is inside
    if got is None:
        return
    first, last = got
    assert _argmax_oracle(pivot, dirs) == (first, last)
    for d in dirs:
        if d not in (first, last):
            assert angle_sign(first, pivot, d) > 0
            assert angle_sign(d, pivot, last) > 0


def test_convex_hull_and_position_order():
    square = [P(0, 0), P(2, 0), P(2, 2), P(0, 2)]
    assert convex_position_order(square) == [0, 1, 2, 3]
    assert convex_position_order(square + [P(1, 1)]) is None
    assert sorted(convex_hull(square + [P(1, 1)])) == [0, 1, 2, 3]
