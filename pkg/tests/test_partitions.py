import math

import numpy as np
import pytest
from conftest import shapely_dM, wedge_pieces
from hypothesis import given
from hypothesis import strategies as st

from rotakit import ANALYTIC, GENERATED, diameter, rotate_about
from rotakit.errors import FormulaNotApplicable, NotMultiRotational, NotSymmetric
from rotakit.generators import SectorProfile, circle_polygon, modified_sector_body, regular_polygon
from rotakit.geometry import polygon_area
from rotakit.partitions import (
    chain_report,
    classify_equality_chain,
    dM_bruteforce,
    dM_formula,
    nearest_boundary_points,
    standard_partition,
    supporting_line_check,
    supporting_line_slack,
)
from rotakit.symmetry import divisors_gt1

# closed forms evaluated with mpmath at 30 digits
E9_P3 = 1.6275953626987473857  # 2 cos(pi/9) sin(pi/3)
E45_P3 = 1.7278316188542086848  # 2 cos(pi/45) sin(pi/3)
E45_P5 = 1.1727068739197442804  # 2 cos(pi/45) sin(pi/5)
E6_P2 = 1.8027756377319946466  # sqrt(13/4): edge midpoint to the far vertex of its half
SQUARE_P2 = 1.5811388300841898  # sqrt(5/2)


def test_nearest_points_examples(hexagon, square):
    near = nearest_boundary_points(hexagon)
    assert len(near) == 6
    assert np.allclose(np.hypot(*near.T), math.cos(math.pi / 6), atol=1e-12)
    assert len(nearest_boundary_points(square)) == 4
    circle = circle_polygon(2520)
    near = nearest_boundary_points(circle)
    # every edge midpoint of the 2520-gon realizes the inradius
    assert len(near) == 2520
    assert np.allclose(np.hypot(*near.T), circle.inradius, atol=1e-12)


def test_hexagon_partitions(hexagon):
    p6 = standard_partition(hexagon, 6)
    assert len(p6.subsets) == 6 and all(len(s) == 4 for s in p6.subsets)
    assert np.allclose(np.hypot(*p6.endpoints.T), hexagon.inradius)
    p2 = standard_partition(hexagon, 2)
    assert [polygon_area(s) for s in p2.subsets] == pytest.approx([hexagon.area / 2] * 2)
    assert dM_bruteforce(p2) == pytest.approx(E6_P2, abs=1e-12)
    assert dM_bruteforce(p6) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NotSymmetric):
        standard_partition(hexagon, 4)


def test_octagon_four_partition():
    body = regular_polygon(8)
    p = standard_partition(body, 4)
    for a, b in zip(p.subsets, p.subsets[1:] + p.subsets[:1]):
        turned = rotate_about(a, body.center, math.pi / 2)
        assert polygon_area(turned) == pytest.approx(polygon_area(b))
        assert diameter(turned) == pytest.approx(diameter(b))


def test_square_two_partition(square):
    assert dM_bruteforce(standard_partition(square, 2)) == pytest.approx(SQUARE_P2, abs=1e-12)


def test_formula_examples(hexagon):
    e9 = regular_polygon(9)
    assert dM_formula(e9, 3) == pytest.approx(E9_P3, abs=1e-12)
    assert dM_formula(e9, 9) == 1.0
    assert dM_formula(hexagon, 6) == 1.0
    with pytest.raises(FormulaNotApplicable):
        dM_formula(hexagon, 2)


@pytest.mark.parametrize("m", range(3, 31))
def test_pieces_match_shapely(m):
    body = regular_polygon(m)
    for k in divisors_gt1(m):
        part = standard_partition(body, k)
        ref = wedge_pieces(body.vertices, body.center, part.endpoints)
        assert sorted(polygon_area(s) for s in part.subsets) == pytest.approx(sorted(p.area for p in ref), abs=1e-12)
        assert dM_bruteforce(part) == pytest.approx(shapely_dM(ref), abs=1e-12)
        if k >= 3:
            assert abs(dM_bruteforce(part) - dM_formula(body, k)) <= 1e-9


@given(st.sampled_from([3, 4, 5, 6, 9, 10]), st.integers(0, 10_000), st.sampled_from(["cos2", "quartic", "skewed"]))
def test_sector_bodies_formula_and_chain(m, seed, bump):
    body = modified_sector_body(SectorProfile(m, 12, 0.1 * min(1, (4 / m) ** 2), bump, seed))
    R = body.circumradius
    part = standard_partition(body, m, GENERATED)
    assert supporting_line_slack(body, part) <= GENERATED.eps_geom * R
    assert sum(polygon_area(s) for s in part.subsets) == pytest.approx(body.area, rel=1e-9)
    if m >= 3:
        assert abs(dM_bruteforce(part) - dM_formula(body, m)) <= GENERATED.eps_dm * R
        ref = wedge_pieces(body.vertices, body.center, part.endpoints)
        assert dM_bruteforce(part) == pytest.approx(shapely_dM(ref), abs=1e-9)


def test_e45_chain():
    rep = chain_report(regular_polygon(45))
    assert [e.k for e in rep.entries] == [3, 5, 9, 15, 45]
    got = [e.dM for e in rep.entries]
    assert got == pytest.approx([E45_P3, E45_P5, 1.0, 1.0, 1.0], abs=1e-9)
    assert not rep.equality_chain and not rep.unique_minimum
    assert [e.equals_R for e in rep.entries] == [False, False, True, True, True]


def test_e49_chain_is_equality():
    rep = chain_report(regular_polygon(49))
    assert [e.dM for e in rep.entries] == [1.0, 1.0]
    assert rep.equality_chain
    assert classify_equality_chain(rep).all_agree


def test_square_chain(square):
    rep = chain_report(square)
    assert rep.entries[0].dM_formula is None
    assert rep.entries[0].dM == pytest.approx(SQUARE_P2, abs=1e-12)
    assert rep.entries[1].dM == 1.0
    assert not rep.equality_chain


def test_e9_chain_has_unique_minimum():
    rep = chain_report(regular_polygon(9))
    assert rep.unique_minimum and not rep.equality_chain
    cls = classify_equality_chain(rep)
    assert cls.all_agree and not cls.equality_chain


@pytest.mark.parametrize("m", [49, 77, 91])
def test_classification_all_true(m):
    cls = classify_equality_chain(chain_report(regular_polygon(m)))
    assert (cls.equality_chain, cls.dM_chi_equals_R, cls.chi_ge_7, cls.kC_primes_ge_7) == (True,) * 4


@pytest.mark.parametrize("m", [9, 15, 25, 45])
def test_classification_all_false(m):
    cls = classify_equality_chain(chain_report(regular_polygon(m)))
    assert (cls.equality_chain, cls.dM_chi_equals_R, cls.chi_ge_7, cls.kC_primes_ge_7) == (False,) * 4


def test_single_degree_has_no_chain():
    with pytest.raises(NotMultiRotational):
        chain_report(regular_polygon(7))
    with pytest.raises(ValueError):
        classify_equality_chain(chain_report(regular_polygon(4)))


def test_supporting_lines(hexagon):
    assert supporting_line_check(hexagon, standard_partition(hexagon, 6))
    circle = circle_polygon(2520)
    assert supporting_line_check(circle, standard_partition(circle, 5))


@pytest.mark.parametrize("m", [6, 12])
def test_endpoint_choice_does_not_change_dM(m):
    body = regular_polygon(m)
    n_near = len(nearest_boundary_points(body))
    for k in divisors_gt1(m):
        values = {round(dM_bruteforce(standard_partition(body, k, ANALYTIC, first_endpoint=i)), 12) for i in range(n_near)}
        assert len(values) == 1
