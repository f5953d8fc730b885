"""Standard k-partitions, their maximum relative diameter, and divisor chains."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rotakit.errors import (
    EquivalenceViolation,
    FormulaNotApplicable,
    NotMultiRotational,
    NotSymmetric,
    TheoremViolation,
    ToleranceViolation,
)
from rotakit.geometry import (
    ANALYTIC,
    ConvexBody,
    Point2,
    Tolerance,
    clip_halfplane,
    diameter,
    hausdorff_convex,
    polar_angle,
    polygon_area,
    rotate_about,
)
from rotakit.symmetry import (
    SymmetryProfile,
    all_prime_factors_ge,
    detect_symmetry,
    is_k_symmetric,
)


@dataclass(frozen=True, eq=False)
class StandardPartition:
    k: int
    center: Point2
    endpoints: np.ndarray
    subsets: list[np.ndarray]


def nearest_boundary_points(body: ConvexBody, tol: Tolerance = ANALYTIC) -> np.ndarray:
    """Boundary points at distance r from the center, sorted by polar angle.

    One candidate per edge (foot of the perpendicular, clamped to the edge);
    a vertex shared by two edges is reported once.
    """
    c = np.asarray(body.center)
    p = body.vertices
    e = np.concatenate([p[1:], p[:1]]) - p
    ee = np.einsum("ij,ij->i", e, e)
    t = np.clip(np.einsum("ij,ij->i", c - p, e) / ee, 0.0, 1.0)
    foot = p + t[:, None] * e
    dist = np.hypot(foot[:, 0] - c[0], foot[:, 1] - c[1])
    atol = tol.eps_geom * body.circumradius
    pts = foot[dist <= body.inradius + atol]
    ang = polar_angle(pts, c)
    order = np.argsort(ang, kind="stable")
    pts, ang = pts[order], ang[order]
    if len(pts) > 1:
        step = np.hypot(*(pts - np.concatenate([pts[-1:], pts[:-1]])).T)
        keep = step > atol
        keep[0] = True
        if np.hypot(*(pts[-1] - pts[0])) <= atol:
            keep[-1] = False
        return pts[keep]
    return pts[keep]


def _perp(u):
    return np.array([-u[1], u[0]])


class _PolarArc:
    """Vertices in increasing polar angle, to cut out the arc under a wedge."""

    def __init__(self, body: ConvexBody):
        self.c = np.asarray(body.center)
        ang = polar_angle(body.vertices, self.c)
        s = int(np.argmin(ang))
        self.v = np.roll(body.vertices, -s, axis=0)
        self.ang = np.roll(ang, -s)

    def window(self, a, b) -> np.ndarray:
        """Polygon [center, arc from just before ``a`` to just after ``b``].

        The wedge from ``a`` to ``b`` (CCW, opening < pi) meets the body exactly
        where it meets this polygon, because the body is star-shaped about c.
        """
        n = len(self.v)
        t0, t1 = polar_angle(np.vstack([a, b]), self.c)
        i0 = int(np.searchsorted(self.ang, t0, side="right")) - 1
        i1 = int(np.searchsorted(self.ang, t1, side="left"))
        if t1 <= t0:
            i1 += n
        idx = np.arange(i0, i1 + 1) % n
        return np.vstack([self.c[None, :], self.v[idx]])


def standard_partition(
    body: ConvexBody,
    k: int,
    tol: Tolerance = ANALYTIC,
    first_endpoint: int = 0,
) -> StandardPartition:
    """Cut the body by k inradius segments placed symmetrically.

    ``first_endpoint`` selects which nearest boundary point (in polar order)
    seeds the rotation orbit; the default is the one of smallest angle.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if not is_k_symmetric(body, k, tol):
        raise NotSymmetric(f"body is not {k}-rotationally symmetric")
    c = np.asarray(body.center)
    near = nearest_boundary_points(body, tol)
    x1 = near[first_endpoint]
    ends = np.vstack([rotate_about(x1[None, :], c, 2 * math.pi * i / k) for i in range(k)])
    dirs = ends - c
    dirs /= np.hypot(dirs[:, 0], dirs[:, 1])[:, None]
    if k == 2:
        nrm = _perp(dirs[0])
        subsets = [clip_halfplane(body.vertices, c, nrm), clip_halfplane(body.vertices, c, -nrm)]
    else:
        arc = _PolarArc(body)
        subsets = []
        for i in range(k):
            j = (i + 1) % k
            piece = arc.window(ends[i], ends[j])
            piece = clip_halfplane(piece, c, _perp(dirs[i]))
            piece = clip_halfplane(piece, c, -_perp(dirs[j]))
            subsets.append(piece)
    part = StandardPartition(k, body.center, ends, subsets)
    _check_partition(body, part, tol)
    return part


def _check_partition(body: ConvexBody, part: StandardPartition, tol: Tolerance) -> None:
    R = body.circumradius
    atol = tol.eps_geom * R
    c = np.asarray(body.center)
    radii = np.hypot(*(part.endpoints - c).T)
    if np.max(np.abs(radii - body.inradius)) > atol:
        raise ToleranceViolation(f"endpoint radius off by {np.max(np.abs(radii - body.inradius)):.3g}")
    area = sum(polygon_area(s) for s in part.subsets)
    if abs(area - body.area) > atol * R:
        raise ToleranceViolation(f"subset areas sum to {area}, body area {body.area}")
    step = 2 * math.pi / part.k
    for i in range(part.k):
        nxt = part.subsets[(i + 1) % part.k]
        h = hausdorff_convex(rotate_about(part.subsets[i], c, step), nxt)
        if h > atol:
            raise ToleranceViolation(f"subsets {i} and {i + 1} not congruent (hausdorff {h:.3g})")


def dM_formula(body: ConvexBody, k: int) -> float:
    """max{R, 2 r sin(pi/k)}, valid for standard partitions with k >= 3."""
    if k == 2:
        raise FormulaNotApplicable("closed form needs k >= 3; use dM_bruteforce for k = 2")
    if k < 2:
        raise ValueError(f"k must be >= 3, got {k}")
    return max(body.circumradius, 2.0 * body.inradius * math.sin(math.pi / k))


def dM_bruteforce(partition) -> float:
    """Largest subset diameter, by all-pairs vertex distances."""
    return max(diameter(s, method="brute") for s in partition.subsets)


def supporting_line_slack(body: ConvexBody, partition: StandardPartition) -> float:
    """Max of (v - x) . u over vertices v and endpoints x, u the unit spoke direction."""
    c = np.asarray(body.center)
    worst = -math.inf
    for x in partition.endpoints:
        u = (x - c) / math.hypot(*(x - c))
        worst = max(worst, float(np.max((body.vertices - x) @ u)))
    return worst


def supporting_line_check(
    body: ConvexBody, partition: StandardPartition, tol: Tolerance = ANALYTIC
) -> bool:
    """Is the line through each endpoint, normal to its spoke, a supporting line?"""
    return supporting_line_slack(body, partition) <= tol.eps_geom * body.circumradius


@dataclass(frozen=True)
class ChainEntry:
    k: int
    dM_formula: float | None
    dM_brute: float
    equals_R: bool

    @property
    def dM(self) -> float:
        return self.dM_brute if self.dM_formula is None else self.dM_formula


@dataclass(frozen=True)
class ChainReport:
    profile: SymmetryProfile
    entries: tuple[ChainEntry, ...]
    equality_chain: bool
    unique_minimum: bool
    R: float
    r: float


def chain_report(
    body: ConvexBody,
    tol: Tolerance = ANALYTIC,
    profile: SymmetryProfile | None = None,
) -> ChainReport:
    """d_M of the standard partition for every divisor of the maximal degree.

    Checks the chain is nonincreasing, strictly so at the first step when the
    minimal degree is 2, and (minimal degree >= 3) that the observed uniqueness
    of the minimum matches the criterion ``d_M(P_{k_{n-1}}) != R``.
    """
    profile = profile or detect_symmetry(body, tol)
    if not profile.is_multi:
        raise NotMultiRotational(f"only k={profile.max_degree}; need two symmetry degrees")
    R, r = body.circumradius, body.inradius
    atol = tol.eps_dm * R
    entries = []
    for k in profile.divisors:
        brute = dM_bruteforce(standard_partition(body, k, tol))
        formula = None if k == 2 else dM_formula(body, k)
        value = brute if formula is None else formula
        entries.append(ChainEntry(k, formula, brute, abs(value - R) <= atol))
    values = [e.dM for e in entries]

    for a, b, e in zip(values, values[1:], entries[1:]):
        if b > a + atol:
            raise TheoremViolation(f"chain increases at k={e.k}: {a!r} -> {b!r}")
    if profile.min_degree == 2 and not values[0] - values[1] > atol:
        raise TheoremViolation(
            f"d_M(P_2)={values[0]!r} not strictly above d_M(P_{entries[1].k})={values[1]!r}",
            check="chi2_strict",
        )
    equality_chain = max(values) - min(values) <= atol
    unique_minimum = values[-1] < min(values[:-1]) - atol
    if profile.min_degree >= 3 and unique_minimum != (not entries[-2].equals_R):
        raise TheoremViolation(
            f"unique minimum {unique_minimum} but d_M(P_{entries[-2].k}) == R is {entries[-2].equals_R}",
            check="unique_minimum",
        )
    return ChainReport(profile, tuple(entries), equality_chain, unique_minimum, R, r)


@dataclass(frozen=True)
class EqualityClassification:
    equality_chain: bool
    dM_chi_equals_R: bool
    chi_ge_7: bool
    kC_primes_ge_7: bool

    @property
    def all_agree(self) -> bool:
        return len({self.equality_chain, self.dM_chi_equals_R, self.chi_ge_7, self.kC_primes_ge_7}) == 1


def classify_equality_chain(report: ChainReport) -> EqualityClassification:
    """The four predicates that characterize a chain of equalities (minimal degree >= 3)."""
    prof = report.profile
    if prof.min_degree < 3:
        raise ValueError("classification needs minimal degree >= 3")
    cls = EqualityClassification(
        equality_chain=report.equality_chain,
        dM_chi_equals_R=report.entries[0].equals_R,
        chi_ge_7=prof.min_degree >= 7,
        kC_primes_ge_7=all_prime_factors_ge(prof.max_degree, 7),
    )
    if not cls.all_agree:
        raise EquivalenceViolation(f"predicates disagree for k_C={prof.max_degree}: {cls}")
    return cls
