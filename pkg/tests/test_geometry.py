# bounded_treemaps/tests/test_geometry.py
import logging
import math

import numpy as np
import pytest

from models.errors import DegeneratePolygon, NoIntersection, NotOrthoconvex
from models.geometry import UNIT_SQUARE, Corner, DirectedLine, Point, Rect, ShapeKind
from shapes import random_convex_polygon
from utils import geometry as geo

TRIANGLE = geo.make_convex([(0, 0), (1, 0), (0, 1)])
SQUARE = geo.make_convex(UNIT_SQUARE.corners())
L_SHAPE = [(0, 0), (1, 0), (1, 1), (0.5, 1), (0.5, 0.5), (0, 0.5)]
S_SHAPE = [(0, 0), (0.6, 0), (0.6, 0.3), (1, 0.3), (1, 1), (0.3, 1), (0.3, 0.7), (0, 0.7)]
U_SHAPE = [(0, 0), (1, 0), (1, 1), (0.6, 1), (0.6, 0.7), (0.4, 0.7), (0.4, 1), (0, 1)]
PLUS = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3), (1, 2), (0, 2),
        (0, 1), (1, 1)]


@pytest.mark.parametrize("shape, expected", [
    (UNIT_SQUARE, 1.0),
    (TRIANGLE, 0.5),
    (L_SHAPE, 0.75),
])
def test_area(shape, expected):
    assert geo.area(shape) == pytest.approx(expected)


def test_area_rejects_degenerate_polygons():
    with pytest.raises(DegeneratePolygon):
        geo.area([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegeneratePolygon):
        geo.area([(0, 0), (1, 0)])


@pytest.mark.parametrize("shape, expected", [
    (UNIT_SQUARE, 1.0),
    (Rect(0, 0, 2, 1), 2.0),
    (L_SHAPE, 4 / 3),
])
def test_asp_ortho(shape, expected):
    assert geo.asp_ortho(shape) == pytest.approx(expected)


@pytest.mark.parametrize("shape, expected", [
    (UNIT_SQUARE, 2.0),
    (TRIANGLE, 4.0),
    (Rect(0, 0, 2, 1), 2.5),
])
def test_asp_convex(shape, expected):
    assert geo.asp_convex(shape) == pytest.approx(expected)


@pytest.mark.parametrize("shape", [UNIT_SQUARE, TRIANGLE, L_SHAPE, S_SHAPE, PLUS])
def test_aspect_bracket_is_ordered(shape):
    sigma, diam_sq, double_sigma = geo.aspect_bracket(shape)
    assert sigma <= diam_sq + 1e-12
    assert diam_sq <= double_sigma + 1e-12


@pytest.mark.parametrize("n", [6, geo.VECTOR_MIN_VERTICES, 64])
def test_measure_on_regular_polygons(n):
    vertices = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    value, box, ortho, convex = geo.measure(vertices)
    assert value == pytest.approx(0.5 * n * math.sin(2 * math.pi / n))
    assert geo.diameter_sq(vertices) == pytest.approx(4.0)
    assert box == geo.bbox(vertices)
    assert ortho == pytest.approx(geo.asp_ortho(vertices))
    assert convex == pytest.approx(4.0 / value)


@pytest.mark.parametrize("shape, expected", [
    (UNIT_SQUARE, True),
    (L_SHAPE, True),
    (S_SHAPE, True),
    (PLUS, True),
    (U_SHAPE, False),
])
def test_is_orthoconvex(shape, expected):
    assert geo.is_orthoconvex(shape) is expected


@pytest.mark.parametrize("shape, kind", [
    (UNIT_SQUARE, ShapeKind.RECTANGLE),
    (L_SHAPE, ShapeKind.L_SHAPE),
    (S_SHAPE, ShapeKind.S_SHAPE),
])
def test_classify_shape(shape, kind):
    assert geo.classify_shape(shape).kind is kind


def test_classify_shape_rejects_non_orthoconvex():
    with pytest.raises(NotOrthoconvex):
        geo.classify_shape(U_SHAPE)


def test_classify_region_handles_slanted_and_staircase_shapes():
    assert geo.classify_region(TRIANGLE).kind is ShapeKind.CONVEX
    assert geo.classify_region(U_SHAPE).kind is ShapeKind.ORTHO_OTHER
    staircase = [(0, 0), (1, 0), (1, 1), (0.8, 1), (0.8, 0.8), (0.6, 0.8), (0.6, 0.6),
                 (0.3, 0.6), (0.3, 0.4), (0, 0.4)]
    shape = geo.classify_region(staircase)
    assert shape.kind is ShapeKind.STAIRCASE
    assert shape.anchor is Corner.BOTTOM_RIGHT
    assert str(shape) == "staircase(bottomRight)"


@pytest.mark.parametrize("corner", list(Corner))
def test_rectangle_is_staircase_for_every_corner(corner):
    assert geo.is_staircase(UNIT_SQUARE, corner)


def test_l_shape_is_staircase_at_corner_opposite_its_notch():
    assert geo.is_staircase(L_SHAPE, Corner.BOTTOM_RIGHT)
    assert not geo.is_staircase(L_SHAPE, Corner.TOP_LEFT)


@pytest.mark.parametrize("corner", list(Corner))
def test_s_shape_is_never_staircase(corner):
    assert not geo.is_staircase(S_SHAPE, corner)


def test_clip_convex_vertical_line():
    left, right = geo.clip_convex(SQUARE, DirectedLine.vertical(0.3))
    assert geo.area(left) == pytest.approx(0.3)
    assert geo.area(right) == pytest.approx(0.7)
    assert geo.bbox(left).x1 == 0.3


def test_clip_convex_diagonal_gives_congruent_halves():
    neg, pos = geo.clip_convex(SQUARE, DirectedLine(math.pi / 4, 0.0))
    assert geo.area(neg) == pytest.approx(0.5)
    assert geo.area(pos) == pytest.approx(0.5)
    assert len(neg) == len(pos) == 3


def test_clip_convex_triangle():
    left, right = geo.clip_convex(TRIANGLE, DirectedLine.vertical(0.5))
    assert geo.area(left) == pytest.approx(0.375)
    assert geo.area(right) == pytest.approx(0.125)


def test_clip_convex_requires_crossing_line():
    with pytest.raises(NoIntersection):
        geo.clip_convex(SQUARE, DirectedLine.vertical(2.0))


@pytest.mark.parametrize("polygon, direction, fraction, offset", [
    (SQUARE, math.pi / 2, 0.5, 0.5),
    (SQUARE, math.pi / 2, 0.3, 0.3),
    (TRIANGLE, math.pi / 2, 0.75, 0.5),
    (SQUARE, math.pi / 4, 0.5, 0.0),
])
def test_area_cut(polygon, direction, fraction, offset):
    line = geo.area_cut(polygon, direction, fraction)
    assert line.offset == pytest.approx(offset, abs=1e-9)
    neg, _ = geo.clip_convex(polygon, line)
    assert geo.area(neg) == pytest.approx(fraction * geo.area(polygon), rel=1e-9)


@pytest.mark.slow
def test_aspect_bracket_on_random_convex_polygons():
    rng = np.random.default_rng(3)
    for _ in range(10_000):
        polygon = random_convex_polygon(rng)
        square, diam_sq, double_square = geo.aspect_bracket(polygon)
        assert square <= diam_sq * (1 + 1e-12)
        assert diam_sq <= double_square * (1 + 1e-12)
        ortho, convex = geo.asp_ortho(polygon), geo.asp_convex(polygon)
        assert ortho <= convex * (1 + 1e-12) <= 2 * ortho * (1 + 1e-11)


@pytest.mark.slow
def test_area_cut_is_accurate_without_warnings(caplog):
    rng = np.random.default_rng(5)
    caplog.set_level(logging.DEBUG, logger="utils.geometry")
    for _ in range(2_000):
        polygon = random_convex_polygon(rng)
        fraction = rng.uniform(0.02, 0.98)
        line = geo.area_cut(polygon, rng.uniform(0.0, math.pi), fraction)
        neg, _ = geo.clip_convex(polygon, line)
        total = geo.area(polygon)
        assert abs(geo.area(neg) - fraction * total) <= 1e-9 * total
    assert not [r for r in caplog.records if r.levelno >= logging.WARNING]


def test_canonicalize_wide_rect():
    rect = Rect(0, 0, 2, 1)
    identity = geo.canonicalize(rect, Corner.BOTTOM_RIGHT)
    assert (identity.swap, identity.flip_u, identity.flip_v) == (False, False, False)
    flipped = geo.canonicalize(rect, Corner.BOTTOM_LEFT)
    assert flipped.flip_u and not flipped.swap
    assert flipped.forward((0, 0)) == Point(2, 0)


def test_canonicalize_tall_rect_top_right():
    rect = Rect(0, 0, 1, 2)
    iso = geo.canonicalize(rect, Corner.TOP_RIGHT)
    assert iso.swap
    assert (iso.width, iso.height) == (2, 1)
    assert iso.forward((1, 2)) == Point(2, 0)
    assert iso.corner_to_world(Corner.BOTTOM_RIGHT) is Corner.TOP_RIGHT
    for p in [(0.25, 0.5), (1, 0), (0, 2)]:
        assert iso.inverse(iso.forward(p)) == pytest.approx(p)


def test_normalize_vertices_drops_collinear_points_and_orients():
    clockwise = [(0, 0), (0, 1), (1, 1), (1, 0.5), (1, 0)]
    assert geo.normalize_vertices(clockwise) == [(1, 0), (1, 1), (0, 1), (0, 0)]


def test_shapely_round_trip_keeps_ccw_order():
    vertices = geo.from_shapely(geo.to_shapely(L_SHAPE))
    assert geo.signed_area(vertices) > 0
    assert geo.area(vertices) == pytest.approx(0.75)
