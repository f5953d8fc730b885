"""Rotational symmetry detection and divisor arithmetic of the maximal degree."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rotakit.errors import DivisorClosureViolation, NoRotationalSymmetry
from rotakit.geometry import ANALYTIC, ConvexBody, Tolerance


def divisors_gt1(k: int) -> list[int]:
    """Ascending divisors of ``k`` excluding 1."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return [d for d in small + large[::-1] if d > 1]


def smallest_prime_factor(k: int) -> int:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k % 2 == 0:
        return 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return d
        d += 2
    return k


def prime_factors(k: int) -> list[int]:
    """Prime factorization of ``k`` with multiplicity, ascending."""
    out = []
    while k > 1:
        p = smallest_prime_factor(k)
        out.append(p)
        k //= p
    return out


def all_prime_factors_ge(k: int, bound: int) -> bool:
    return smallest_prime_factor(k) >= bound


@dataclass(frozen=True)
class SymmetryProfile:
    max_degree: int
    min_degree: int
    divisors: tuple[int, ...]

    def __post_init__(self):
        if tuple(self.divisors) != tuple(divisors_gt1(self.max_degree)):
            raise ValueError(f"divisors {self.divisors} do not match k_C={self.max_degree}")
        if self.min_degree != smallest_prime_factor(self.max_degree):
            raise ValueError(f"minimal degree {self.min_degree} is not the smallest prime factor of {self.max_degree}")

    @property
    def kC(self) -> int:
        return self.max_degree

    @property
    def chi(self) -> int:
        return self.min_degree

    @property
    def is_multi(self) -> bool:
        return len(self.divisors) >= 2

    @classmethod
    def from_max_degree(cls, k_c: int) -> "SymmetryProfile":
        divs = tuple(divisors_gt1(k_c))
        return cls(k_c, divs[0], divs)


class _PolarIndex:
    """Vertices sorted by polar angle about the center, for rotation matching."""

    def __init__(self, body: ConvexBody):
        d = body.vertices - np.asarray(body.center)
        ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), 2 * math.pi)
        order = np.argsort(ang, kind="stable")
        self.pts = d[order]
        self.ang = ang[order]
        self.R = body.circumradius

    def mismatch(self, k: int) -> float:
        """Largest distance from a rotated vertex to its nearest vertex."""
        theta = 2 * math.pi / k
        c, s = math.cos(theta), math.sin(theta)
        x, y = self.pts[:, 0], self.pts[:, 1]
        rot = np.column_stack([c * x - s * y, s * x + c * y])
        n = len(self.ang)
        idx = np.searchsorted(self.ang, np.mod(self.ang + theta, 2 * math.pi))
        best = np.full(n, np.inf)
        for cand in (idx % n, (idx - 1) % n):
            diff = rot - self.pts[cand]
            best = np.minimum(best, np.hypot(diff[:, 0], diff[:, 1]))
        return float(best.max())


def is_k_symmetric(body: ConvexBody, k: int, tol: Tolerance = ANALYTIC) -> bool:
    """True iff rotating by 2*pi/k about the center maps the vertex set onto itself."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return _PolarIndex(body).mismatch(k) <= tol.eps_geom * body.circumradius


def detect_symmetry(body: ConvexBody, tol: Tolerance = ANALYTIC) -> SymmetryProfile:
    """Maximal degree by a scan over divisors of the vertex count.

    Every other symmetry degree must then divide it; that closure is checked for
    all 2 <= k <= k_C and a failure signals a misconfigured tolerance.
    """
    index = _PolarIndex(body)
    atol = tol.eps_geom * body.circumradius
    k_c = None
    for d in reversed(divisors_gt1(body.n)):
        if index.mismatch(d) <= atol:
            k_c = d
            break
    if k_c is None:
        raise NoRotationalSymmetry(f"no rotation of order >= 2 fixes this {body.n}-gon")
    for k in range(2, k_c + 1):
        if (index.mismatch(k) <= atol) != (k_c % k == 0):
            raise DivisorClosureViolation(
                f"k={k} symmetric={k_c % k != 0} contradicts k_C={k_c}"
            )
    return SymmetryProfile.from_max_degree(k_c)
