import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import factorint

from rotakit import ANALYTIC, GENERATED, normalize_body
from rotakit.errors import NoRotationalSymmetry
from rotakit.generators import SectorProfile, modified_sector_body, regular_polygon
from rotakit.symmetry import (
    SymmetryProfile,
    all_prime_factors_ge,
    detect_symmetry,
    divisors_gt1,
    is_k_symmetric,
    prime_factors,
    smallest_prime_factor,
)


def test_divisor_examples():
    assert divisors_gt1(45) == [3, 5, 9, 15, 45]
    assert divisors_gt1(7) == [7]
    assert divisors_gt1(6) == [2, 3, 6]


def test_smallest_prime_factor_examples():
    assert smallest_prime_factor(45) == 3
    assert smallest_prime_factor(49) == 7
    assert smallest_prime_factor(210) == 2


def test_prime_factor_bound_examples():
    for k in (49, 77, 91, 121):
        assert all_prime_factors_ge(k, 7)
    assert not all_prime_factors_ge(45, 7)


@given(st.integers(2, 10**6))
def test_number_theory_against_sympy(k):
    f = factorint(k)
    assert prime_factors(k) == sorted(p for p, e in f.items() for _ in range(e))
    assert smallest_prime_factor(k) == min(f)
    assert all_prime_factors_ge(k, 7) == (min(f) >= 7)


@given(st.integers(2, 5000))
def test_divisors_against_brute_force(k):
    assert divisors_gt1(k) == [d for d in range(2, k + 1) if k % d == 0]


def test_profile_fields():
    p = SymmetryProfile.from_max_degree(45)
    assert (p.kC, p.chi, p.divisors, p.is_multi) == (45, 3, (3, 5, 9, 15, 45), True)
    assert not SymmetryProfile.from_max_degree(7).is_multi
    with pytest.raises(ValueError):
        SymmetryProfile(6, 3, (2, 3, 6))


def test_is_k_symmetric_examples(hexagon, square):
    assert is_k_symmetric(hexagon, 3)
    assert not is_k_symmetric(hexagon, 4)
    assert is_k_symmetric(square, 2) and is_k_symmetric(square, 4)
    body = modified_sector_body(SectorProfile(6, 12, 0.05, "cos2", seed=3))
    assert is_k_symmetric(body, 6, GENERATED)


def test_detect_examples():
    assert detect_symmetry(regular_polygon(10)).divisors == (2, 5, 10)
    p = detect_symmetry(regular_polygon(45))
    assert (p.max_degree, p.min_degree) == (45, 3)
    with pytest.raises(NoRotationalSymmetry):
        detect_symmetry(normalize_body([[0, 0], [4, 0], [1, 2]]))


@pytest.mark.parametrize("m", range(3, 61))
def test_regular_polygons_have_their_own_degree(m):
    body = regular_polygon(m)
    p = detect_symmetry(body, ANALYTIC)
    assert p.max_degree == m
    assert p.min_degree == smallest_prime_factor(m)
    assert (p.min_degree == 2) == (m % 2 == 0)
    for k in range(2, m + 1):
        assert is_k_symmetric(body, k) == (m % k == 0)


def test_rectangle_is_only_two_fold():
    rect = normalize_body([[-2, -1], [2, -1], [2, 1], [-2, 1]])
    p = detect_symmetry(rect)
    assert p.divisors == (2,) and not p.is_multi


@given(st.integers(2, 12), st.integers(0, 10_000), st.sampled_from(["cos2", "quartic", "skewed"]))
def test_sector_bodies_have_their_base_degree(m, seed, bump):
    body = modified_sector_body(SectorProfile(m, 10, 0.08 * min(1, (4 / m) ** 2), bump, seed))
    assert detect_symmetry(body, GENERATED).max_degree == m


def test_rotated_copy_keeps_symmetry():
    body = regular_polygon(12)
    pts = body.vertices @ [[math.cos(0.3), math.sin(0.3)], [-math.sin(0.3), math.cos(0.3)]] + (5, -2)
    assert detect_symmetry(normalize_body(pts)).max_degree == 12
