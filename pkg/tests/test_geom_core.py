import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadlab.errors import ModeMixError, NonPythagorean, ParallelLines
from quadlab.geom_core import (
    Line,
    PlanarQuad,
    Point2,
    exact_unit,
    format_scalar,
    is_convex,
    line_intersection,
    parse_scalar,
    rational_sqrt,
    rotate,
    scalar_mode,
    signed_area,
    signed_distance,
)


def test_intersection_exact_pythagorean_lines():
    # y = 3x/4 through the origin, y = -3x/4 + 24/7 through (16/7, 12/7)
    la = Line.through(Point2(F(0), F(0)), F(3, 4))
    lb = Line.through(Point2(F(16, 7), F(12, 7)), F(-3, 4))
    p = line_intersection(la, lb)
    assert p == (F(16, 7), F(12, 7))
    assert all(isinstance(v, F) for v in p)


def test_intersection_float():
    p = line_intersection(Line((0.0, 0.0), (1.0, 1.0)), Line((0.0, 2.0), (1.0, -1.0)))
    assert p == pytest.approx((1.0, 1.0), abs=1e-15)


def test_parallel_lines_raise():
    with pytest.raises(ParallelLines):
        line_intersection(Line.through((F(0), F(0)), F(1, 2)), Line.through((F(0), F(1)), F(1, 2)))
    with pytest.raises(ParallelLines):
        line_intersection(Line((0.0, 0.0), (1.0, 2.0)), Line((1.0, 0.0), (2.0, 4.0)))


def test_mode_mixing_rejected():
    with pytest.raises(ModeMixError):
        scalar_mode(F(1, 2), 0.5)
    # plain ints take either side
    assert scalar_mode(F(1, 2), 3) == scalar_mode(F(1, 2))
    assert scalar_mode(0.5, 3) == scalar_mode(0.5)


def test_signed_distance_examples():
    u = (F(3, 5), F(4, 5))
    assert signed_distance(Point2(F(3), F(4)), Point2(F(0), F(0)), u) == 5
    assert signed_distance(Point2(F(0), F(0)), Point2(F(3), F(4)), u) == -5
    assert signed_distance(Point2(F(1), F(1)), Point2(F(1), F(1)), u) == 0


def test_exact_unit():
    assert exact_unit(F(4), F(3)) == (F(4, 5), F(3, 5))
    with pytest.raises(NonPythagorean):
        exact_unit(F(1), F(1))


def test_shoelace_examples():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert signed_area(sq) == 1
    assert signed_area(sq[::-1]) == -1
    assert signed_area([(0, 0), (1, 0), (2, 0), (3, 0)]) == 0
    # bow-tie: equal lobes of opposite winding
    assert signed_area([(0, 0), (1, 1), (1, 0), (0, 1)]) == 0


def test_convexity():
    assert is_convex([(0, 0), (2, 0), (2, 1), (0, 1)])
    assert not is_convex([(0, 0), (2, 0), (1, 0.2), (1, 1)])
    assert not is_convex([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_rational_sqrt():
    assert rational_sqrt(F(25, 16)) == F(5, 4)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-1)) is None


def test_parse_format_roundtrip():
    assert parse_scalar("3/4") == F(3, 4)
    assert isinstance(parse_scalar("0.75"), float)
    assert format_scalar(F(3, 4)) == "3/4"
    assert parse_scalar(format_scalar(F(-7, 9))) == F(-7, 9)


def test_planar_quad_rejects_repeated_vertex():
    with pytest.raises(ValueError):
        PlanarQuad(((0, 0), (0, 0), (1, 1), (0, 1)))


coord = st.floats(-10, 10, allow_nan=False)
poly = st.lists(st.tuples(coord, coord), min_size=3, max_size=6)


@settings(max_examples=200, deadline=None)
@given(poly, st.floats(-math.pi, math.pi), coord, coord)
def test_area_invariant_under_rigid_motion(P, angle, dx, dy):
    moved = [(x + dx, y + dy) for x, y in (rotate(p, angle) for p in P)]
    scale = sum(x * x + y * y for x, y in P) + 1
    assert abs(signed_area(moved) - signed_area(P)) <= 1e-11 * scale


@settings(max_examples=200, deadline=None)
@given(poly)
def test_area_antisymmetric_under_reversal(P):
    assert signed_area(P[::-1]) == pytest.approx(-signed_area(P), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 20), st.integers(-20, 20), st.integers(1, 20))
def test_exact_intersection_lies_on_both_lines(px, py, qd, s1n, s2n):
    s1, s2 = F(s1n, qd), F(s2n, 7)
    if s1 == s2:
        return
    l1 = Line.through((F(0), F(0)), s1)
    l2 = Line.through((F(px), F(py)), s2)
    x, y = line_intersection(l1, l2)
    assert y == s1 * x
    assert y - py == s2 * (x - px)
