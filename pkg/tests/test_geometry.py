import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull
from shapely.geometry import Polygon

from rotakit import ANALYTIC, Tolerance, clip_halfplane, diameter, normalize_body, rotate_about
from rotakit.errors import DegenerateInput, NonConvexInput, NumericalFailure, PolygonFormatError
from rotakit.generators import circle_polygon, regular_polygon
from rotakit.geometry import (
    ConvexBody,
    circumradius,
    format_polygon,
    inradius,
    load_body,
    parse_polygon,
    polygon_area,
    ray_boundary_intersection,
    write_polygon,
)

UNIT_SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def hull_points(seed, n):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n, 2)) * rng.uniform(0.2, 5, size=2)
    return pts[ConvexHull(pts).vertices]


convex_polygons = st.builds(hull_points, st.integers(0, 2**32 - 1), st.integers(3, 60))


def test_tolerance_validation():
    Tolerance(1e-9, 1e-9)
    for g, d in [(0, 1e-7), (1e-6, 1e-7), (1e-4, 1e-3)]:
        with pytest.raises(ValueError):
            Tolerance(g, d)


def test_clockwise_square_is_reoriented():
    body = normalize_body(UNIT_SQUARE[::-1])
    assert polygon_area(body.vertices, signed=True) > 0
    assert body.area == pytest.approx(1.0)
    assert {tuple(v) for v in body.vertices} == {tuple(v) for v in UNIT_SQUARE}
    assert body.center == pytest.approx((0.5, 0.5))


def test_collinear_points_are_degenerate():
    with pytest.raises(DegenerateInput):
        normalize_body([[0, 0], [1, 0], [2, 0], [3, 0]])


def test_pushed_in_vertex_is_nonconvex():
    with pytest.raises(NonConvexInput):
        normalize_body([[0, 0], [0.5, 0.1], [1, 0], [1, 1], [0, 1]])


def test_collinear_vertices_are_merged():
    body = normalize_body([[0, 0], [0.5, 0], [1, 0], [1, 0.5], [1, 1], [0, 1], [0, 1], [0, 0.25]])
    assert body.n == 4


def test_diameter_examples(hexagon):
    assert diameter(UNIT_SQUARE) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert diameter(hexagon.vertices) == pytest.approx(2.0, abs=1e-12)
    assert diameter(UNIT_SQUARE[:1]) == 0.0
    # half of a flat-topped hexagon cut through opposite edge midpoints
    h = math.sqrt(3) / 2
    half = [[h, 0], [h, 0.5], [0, 1], [-h, 0.5], [-h, 0]]
    assert diameter(half) == pytest.approx(math.sqrt(3.25), abs=1e-12)
    assert diameter(half, method="brute") == pytest.approx(math.sqrt(3.25), abs=1e-12)


@given(convex_polygons)
def test_calipers_agree_with_brute_force(pts):
    scale = np.max(np.abs(pts))
    assert abs(diameter(pts) - diameter(pts, method="brute")) <= 1e-12 * scale


@given(convex_polygons, st.floats(0, 2 * math.pi), st.floats(-1, 1), st.floats(-1, 1))
def test_clip_is_contained_and_convex(pts, angle, ox, oy):
    nrm = np.array([math.cos(angle), math.sin(angle)])
    out = clip_halfplane(pts, (ox, oy), nrm)
    if len(out) == 0:
        return
    scale = np.max(np.abs(pts))
    assert np.all((out - (ox, oy)) @ nrm >= -1e-12 * scale)
    if len(out) >= 3 and polygon_area(out) > 1e-9 * scale**2:
        assert Polygon(pts).buffer(1e-9 * scale).contains(Polygon(out))
        e = np.diff(np.vstack([out, out[:1]]), axis=0)
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        assert np.all(cross >= -1e-9 * scale**2)
        # the piece is never wider than the polygon it came from
        assert diameter(out) <= diameter(pts) + 1e-12 * scale


@given(convex_polygons, st.floats(0, 2 * math.pi))
def test_clip_matches_shapely(pts, angle):
    nrm = np.array([math.cos(angle), math.sin(angle)])
    c = pts.mean(axis=0)
    out = clip_halfplane(pts, c, nrm)
    big = 100 * np.max(np.abs(pts - c))
    t = np.array([-nrm[1], nrm[0]])
    half = Polygon([c + big * t, c + big * t + big * nrm, c - big * t + big * nrm, c - big * t])
    expected = Polygon(pts).intersection(half).area
    assert polygon_area(out) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_clip_examples(hexagon):
    right = clip_halfplane(UNIT_SQUARE - 0.5, (0, 0), (1, 0))
    assert polygon_area(right) == pytest.approx(0.5)
    same = clip_halfplane(UNIT_SQUARE, (-5, 0), (1, 0))
    assert polygon_area(same) == pytest.approx(1.0) and len(same) == 4
    upper = clip_halfplane(hexagon.vertices, (0, 0), (0, 1))
    # the y = 0 cut goes through two vertices of this pointy hexagon
    assert len(upper) == 4 and polygon_area(upper) == pytest.approx(hexagon.area / 2)
    flat = normalize_body(rotate_about(hexagon.vertices, (0, 0), math.pi / 6))
    upper = clip_halfplane(flat.vertices, (0, 0), (0, 1))
    assert len(upper) == 5
    assert clip_halfplane(UNIT_SQUARE, (5, 0), (1, 0)).shape == (0, 2)


def test_radii(hexagon, square):
    assert inradius(hexagon) == pytest.approx(math.cos(math.pi / 6), abs=1e-12)
    assert inradius(square) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert abs(inradius(circle_polygon(2520)) - 1) <= 1e-6
    rect = normalize_body([[-2, -1], [2, -1], [2, 1], [-2, 1]])
    assert circumradius(rect) == pytest.approx(math.sqrt(5), abs=1e-12)
    assert rect.inradius == pytest.approx(1.0)


@pytest.mark.parametrize("m", range(3, 61))
def test_regular_polygon_radii(m):
    body = regular_polygon(m)
    assert body.circumradius == pytest.approx(1.0, rel=1e-12)
    assert body.inradius == pytest.approx(math.cos(math.pi / m), rel=1e-12)


def test_rotation_examples(hexagon):
    assert rotate_about([[1, 0]], (0, 0), math.pi / 2) == pytest.approx(np.array([[0, 1]]), abs=1e-15)
    pts = np.array([[1.5, -2.0], [3.0, 4.0]])
    assert np.array_equal(rotate_about(pts, (0.3, 0.1), 0.0), pts)
    turned = rotate_about(hexagon.vertices, hexagon.center, math.pi / 3)
    d = np.hypot(*(turned[:, None, :] - hexagon.vertices[None, :, :]).transpose(2, 0, 1))
    assert d.min(axis=1).max() <= 1e-9


@given(convex_polygons, st.integers(2, 40))
def test_k_rotations_are_identity(pts, k):
    c = pts.mean(axis=0)
    out = pts
    for _ in range(k):
        out = rotate_about(out, c, 2 * math.pi / k)
    assert np.max(np.abs(out - pts)) <= 1e-9 * max(1.0, np.max(np.abs(pts)))


@given(convex_polygons)
def test_normalized_body_invariants(pts):
    body = normalize_body(pts, ANALYTIC)
    assert isinstance(body, ConvexBody) and body.n >= 3
    assert 0 < body.inradius <= body.circumradius
    assert Polygon(body.vertices).contains(Polygon(body.vertices).centroid)
    assert polygon_area(body.vertices, signed=True) > 0


def test_ray_boundary_examples(hexagon):
    assert ray_boundary_intersection(hexagon, (1, 0)) == pytest.approx((1, 0), abs=1e-12)
    mid = np.array(ray_boundary_intersection(hexagon, (math.cos(math.pi / 6), math.sin(math.pi / 6))))
    assert math.hypot(*mid) == pytest.approx(hexagon.inradius, abs=1e-12)
    circle = circle_polygon(2520)
    for a in np.linspace(0, 2 * math.pi, 37):
        p = ray_boundary_intersection(circle, (math.cos(a), math.sin(a)))
        assert abs(math.hypot(*p) - 1) <= 1e-5
    with pytest.raises(NumericalFailure):
        ray_boundary_intersection(hexagon, (1, 0), origin=(5, 5))


def test_polygon_text_round_trip(tmp_path, hexagon):
    path = write_polygon(tmp_path / "h.poly", hexagon.vertices, comment="hexagon")
    body = load_body(path)
    assert np.array_equal(body.vertices, hexagon.vertices)
    text = format_polygon(hexagon.vertices)
    assert np.array_equal(parse_polygon(text), hexagon.vertices)
    assert parse_polygon("# c\n\n1 2\n3.5 -4e-1\n").tolist() == [[1, 2], [3.5, -0.4]]
    for bad in ["1 2 3\n", "1 x\n", "nan 1\n"]:
        with pytest.raises(PolygonFormatError):
            parse_polygon(bad)
