"""Numerical search over non-standard partitions.

Two experiments: a sweep of chords through the center for 2-partitions, and
random fan ("spoke") partitions with hill-climbing for k >= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from rotakit import _kernels
from rotakit.errors import MinimalityViolation, NotSymmetric
from rotakit.geometry import (
    ANALYTIC,
    ConvexBody,
    Point2,
    Tolerance,
    clip_halfplane,
    diameter,
    polar_angle,
    polygon_area,
    ray_boundary_intersection,
)
from rotakit.partitions import dM_formula, nearest_boundary_points, standard_partition
from rotakit.symmetry import is_k_symmetric

TWO_PI = 2 * math.pi


@dataclass(frozen=True, eq=False)
class ChordPartition2:
    angle: float
    center: Point2
    endpoints: np.ndarray
    halves: tuple[np.ndarray, np.ndarray]

    @property
    def subsets(self) -> list[np.ndarray]:
        return list(self.halves)

    @property
    def dM(self) -> float:
        return max(diameter(h) for h in self.halves)


def chord_partition(body: ConvexBody, angle: float) -> ChordPartition2:
    """Cut by the full line through the center at ``angle``."""
    c = np.asarray(body.center)
    d = np.array([math.cos(angle), math.sin(angle)])
    nrm = np.array([-d[1], d[0]])
    halves = (clip_halfplane(body.vertices, c, nrm), clip_halfplane(body.vertices, c, -nrm))
    ends = np.array([ray_boundary_intersection(body, d), ray_boundary_intersection(body, -d)])
    return ChordPartition2(float(np.mod(angle, math.pi)), body.center, ends, halves)


class ChordSweep(NamedTuple):
    best_angle: float
    best_dM: float
    profile: np.ndarray  # rows (angle, d_M)
    areas: np.ndarray  # rows (area left of chord, area right of chord)
    standard_dM: float


def standard_chord_angle(body: ConvexBody, tol: Tolerance = ANALYTIC) -> float:
    x1 = nearest_boundary_points(body, tol)[0]
    return float(polar_angle(x1[None, :], body.center)[0] % math.pi)


def sweep_center_chords(body: ConvexBody, n_angles: int = 360, tol: Tolerance = ANALYTIC) -> ChordSweep:
    """d_M of center chords at ``n_angles`` equally spaced directions.

    The grid is anchored at the standard 2-partition's chord so that chord is
    always one of the candidates.
    """
    if n_angles < 8:
        raise ValueError("n_angles must be >= 8")
    if not is_k_symmetric(body, 2, tol):
        raise NotSymmetric("chord sweep needs a 2-rotationally symmetric body")
    a0 = standard_chord_angle(body, tol)
    angles = np.mod(a0 + math.pi * np.arange(n_angles) / n_angles, math.pi)
    dms = np.empty(n_angles)
    areas = np.empty((n_angles, 2))
    for i, a in enumerate(angles):
        part = chord_partition(body, a)
        dms[i] = part.dM
        areas[i] = [polygon_area(h) for h in part.halves]
    i = int(np.argmin(dms))
    return ChordSweep(float(angles[i]), float(dms[i]), np.column_stack([angles, dms]), areas, float(dms[0]))


@dataclass(frozen=True, eq=False)
class SpokePartition:
    hub: Point2
    angles: np.ndarray
    boundary_points: np.ndarray
    subsets: list[np.ndarray]

    @property
    def k(self) -> int:
        return len(self.angles)

    @property
    def dM(self) -> float:
        return max(diameter(s) for s in self.subsets)


def _max_gap(angles: np.ndarray) -> float:
    a = np.sort(np.mod(angles, TWO_PI))
    return float(np.max(np.diff(np.concatenate([a, a[:1] + TWO_PI]))))


def spoke_partition(body: ConvexBody, hub, angles) -> SpokePartition:
    """Fan partition from ``hub`` with cuts at polar ``angles`` (about the hub).

    Consecutive cuts must be less than pi apart so every piece is convex.
    """
    h = np.asarray(hub, dtype=float)
    a = np.sort(np.mod(np.asarray(angles, dtype=float), TWO_PI))
    if len(a) < 2:
        raise ValueError("need at least 2 cuts")
    if _max_gap(a) >= math.pi:
        raise ValueError("consecutive cuts must be less than pi apart")
    dirs = np.column_stack([np.cos(a), np.sin(a)])
    pts = np.array([ray_boundary_intersection(body, d, origin=h) for d in dirs])
    subsets = []
    for i in range(len(a)):
        j = (i + 1) % len(a)
        piece = clip_halfplane(body.vertices, h, [-dirs[i, 1], dirs[i, 0]])
        piece = clip_halfplane(piece, h, [dirs[j, 1], -dirs[j, 0]])
        subsets.append(piece)
    return SpokePartition(Point2(*h), a, pts, subsets)


def _draw_spokes(rng: np.random.Generator, body: ConvexBody, k: int, count: int):
    """Hubs uniform in the disk of radius 0.8 r; cut angles sorted uniform.

    Draws with a cut gap of pi or more (or coincident cuts) are redrawn.
    """
    c = np.asarray(body.center)
    hubs = np.empty((0, 2))
    angs = np.empty((0, k))
    while len(hubs) < count:
        need = count - len(hubs)
        rad = 0.8 * body.inradius * np.sqrt(rng.uniform(size=need))
        phi = rng.uniform(0, TWO_PI, size=need)
        h = c + np.column_stack([rad * np.cos(phi), rad * np.sin(phi)])
        a = np.sort(rng.uniform(0, TWO_PI, size=(need, k)), axis=1)
        gaps = np.diff(np.concatenate([a, a[:, :1] + TWO_PI], axis=1), axis=1)
        ok = (gaps.max(axis=1) < math.pi) & (gaps.min(axis=1) > 0)
        hubs = np.vstack([hubs, h[ok]])
        angs = np.vstack([angs, a[ok]])
    return hubs[:count], angs[:count]


def sample_spoke_partition(body: ConvexBody, k: int, rng_seed: int) -> SpokePartition:
    if k < 3:
        raise ValueError("spoke sampling needs k >= 3")
    hubs, angs = _draw_spokes(np.random.default_rng(rng_seed), body, k, 1)
    return spoke_partition(body, hubs[0], angs[0])


class _SpokeObjective:
    """Compiled d_M of a fan partition, +inf outside the admissible set."""

    def __init__(self, body: ConvexBody):
        self.vx = np.ascontiguousarray(body.vertices[:, 0])
        self.vy = np.ascontiguousarray(body.vertices[:, 1])
        self.c = np.asarray(body.center)
        self.r = body.inradius

    def batch(self, hubs, angles) -> np.ndarray:
        return _kernels.batch_spoke_dm(
            self.vx, self.vy, np.ascontiguousarray(hubs), np.ascontiguousarray(angles)
        )

    def __call__(self, x: np.ndarray) -> float:
        return _kernels.admissible_spoke_dm(self.vx, self.vy, self.c[0], self.c[1], self.r, x)


def hill_climb(f, x0: np.ndarray, r: float, iterations: int = 200, max_evals: int | None = 4000):
    """Coordinate search: try +/- step on each coordinate, halve the step after a
    sweep without improvement. Steps are lengths; angle coordinates use step/r.

    One iteration is one sweep over the coordinates. ``max_evals`` caps the
    objective calls, which only binds for fans with many cuts.
    """
    x = np.array(x0, dtype=float)
    fx = f(x)
    evals = 1
    step = 0.1 * r
    floor = 1e-6 * r
    scale = np.ones_like(x)
    scale[2:] = 1.0 / r
    for _ in range(iterations):
        improved = False
        for i in range(len(x)):
            for sign in (1.0, -1.0):
                if max_evals is not None and evals >= max_evals:
                    return x, fx
                y = x.copy()
                y[i] += sign * step * scale[i]
                fy = f(y)
                evals += 1
                if fy < fx:
                    x, fx, improved = y, fy, True
                    break
        if not improved:
            step /= 2
            if step < floor:
                break
    return x, fx


class SearchResult(NamedTuple):
    best: SpokePartition
    best_dM: float
    formula_dM: float
    best_random_dM: float
    refined_random_dM: float
    refined_standard_dM: float


def search_min_dM(
    body: ConvexBody,
    k: int,
    n_samples: int = 10_000,
    rng_seed: int = 42,
    tol: Tolerance = ANALYTIC,
    iterations: int = 200,
    max_evals: int | None = 4000,
) -> SearchResult:
    """Try to beat the standard k-partition with random fan partitions.

    The best of ``n_samples`` random draws is refined by :func:`hill_climb`;
    so is the standard configuration itself (hub at the center, cuts at its
    endpoints), which probes the neighbourhood where a counterexample would be.
    """
    if k < 3:
        raise ValueError("search needs k >= 3")
    if not is_k_symmetric(body, k, tol):
        raise NotSymmetric(f"body is not {k}-rotationally symmetric")
    formula = dM_formula(body, k)
    f = _SpokeObjective(body)

    hubs, angs = _draw_spokes(np.random.default_rng(rng_seed), body, k, n_samples)
    values = f.batch(hubs, angs)
    i = int(np.argmin(values))  # first index among ties
    x_rand, f_rand = hill_climb(
        f, np.concatenate([hubs[i], angs[i]]), body.inradius, iterations, max_evals
    )

    std = standard_partition(body, k, tol)
    std_angles = polar_angle(std.endpoints, body.center)
    x_std, f_std = hill_climb(
        f, np.concatenate([np.asarray(body.center), std_angles]), body.inradius, iterations, max_evals
    )

    x_best = x_rand if f_rand <= f_std else x_std
    best = spoke_partition(body, x_best[:2], x_best[2:])
    best_dM = min(f_rand, f_std)
    if best_dM < formula - 10 * tol.eps_dm * body.circumradius:
        raise MinimalityViolation(f"found d_M={best_dM!r} below standard value {formula!r} for k={k}")
    return SearchResult(best, best_dM, formula, float(values[i]), f_rand, f_std)


class ChordImprovement(NamedTuple):
    body_id: str
    params: dict
    standard_dM: float
    sweep: ChordSweep

    @property
    def improvement(self) -> float:
        return self.standard_dM - self.sweep.best_dM


def scan_chord_improvements(entries, n_angles: int = 360, margin: float = 1e-4, first_only: bool = False):
    """Generated 2-symmetric bodies whose best center chord beats the standard 2-partition.

    ``entries`` are corpus entries (anything with body_id, body, generator,
    params, tol). A body qualifies when the sweep minimum lies more than
    ``margin * R`` below d_M of the standard 2-partition, computed by brute force.
    """
    found = []
    for e in entries:
        if e.generator != "sector" or e.kC % 2:
            continue
        std = max(diameter(s, method="brute") for s in standard_partition(e.body, 2, e.tol).subsets)
        sweep = sweep_center_chords(e.body, n_angles, e.tol)
        if sweep.best_dM < std - margin * e.body.circumradius:
            found.append(ChordImprovement(e.body_id, dict(e.params), std, sweep))
            if first_only:
                break
    return found
