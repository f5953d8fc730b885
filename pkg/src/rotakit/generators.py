"""Exact and randomized multi-rotationally symmetric bodies, and the seeded corpus."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rotakit.errors import ConvexityUnreachable, NonConvexInput, SymmetryBroken
from rotakit.geometry import (
    ANALYTIC,
    GENERATED,
    ConvexBody,
    Tolerance,
    format_polygon,
    normalize_body,
    read_polygon,
)
from rotakit.symmetry import detect_symmetry

_SKEW_PEAK = (1 / 3) ** 2 * (2 / 3) ** 4

# Each bump is C^1 on [0, 1], zero with zero slope at both ends, peak value 1.
BUMPS = {
    "cos2": lambda t: np.sin(np.pi * t) ** 2,
    "quartic": lambda t: 16.0 * t**2 * (1 - t) ** 2,
    "skewed": lambda t: t**2 * (1 - t) ** 4 / _SKEW_PEAK,
}

SECTOR_DEGREES = (2, 3, 4, 5, 6, 7, 9, 10, 14, 15, 21, 35, 45, 49)
SECTOR_BODIES_PER_DEGREE = 50
CIRCLE_SIZES = (360, 2520)
MAX_HALVINGS = 8
# minimum sin(turn angle) demanded of a generated polygon, well above the
# collinearity threshold used by normalize_body for GENERATED tolerances
CONVEXITY_MARGIN = 1e-5


def regular_polygon(m: int, R: float = 1.0) -> ConvexBody:
    if m < 3 or R <= 0:
        raise ValueError(f"need m >= 3 and R > 0, got m={m}, R={R}")
    a = 2 * math.pi * np.arange(m) / m
    pts = R * np.column_stack([np.cos(a), np.sin(a)])
    return normalize_body(pts, ANALYTIC, meta={"generator": "regular", "m": m, "R": R})


def circle_polygon(n: int, R: float = 1.0) -> ConvexBody:
    """Regular n-gon standing in for the circle; boundary within R(1 - cos(pi/n))."""
    if n < 360:
        raise ValueError(f"circle approximation needs n >= 360, got {n}")
    a = 2 * math.pi * np.arange(n) / n
    pts = R * np.column_stack([np.cos(a), np.sin(a)])
    meta = {"generator": "circle", "n": n, "R": R, "delta": R * (1 - math.cos(math.pi / n))}
    return normalize_body(pts, ANALYTIC, meta=meta)


@dataclass(frozen=True)
class SectorProfile:
    """Radial profile R(1 + epsilon * bump(t)) over one sector of angle 2*pi/m."""

    base_degree: int
    samples_per_sector: int
    epsilon: float
    bump: str = "cos2"
    seed: int = 0

    def __post_init__(self):
        if self.base_degree < 2:
            raise ValueError("base_degree must be >= 2")
        if self.samples_per_sector < 8:
            raise ValueError("samples_per_sector must be >= 8")
        if not 0 <= self.epsilon <= 0.3:
            raise ValueError("epsilon must lie in [0, 0.3]")
        if self.bump not in BUMPS:
            raise ValueError(f"unknown bump {self.bump!r}; choose from {sorted(BUMPS)}")

    @property
    def phase(self) -> float:
        """Seeded orientation of the whole body, inside one sector."""
        rng = np.random.default_rng(self.seed)
        return float(rng.uniform(0, 2 * math.pi / self.base_degree))


def sector_points(profile: SectorProfile, epsilon: float, R: float = 1.0) -> np.ndarray:
    m, s = profile.base_degree, profile.samples_per_sector
    t = np.arange(s) / s
    rho = R * (1 + epsilon * BUMPS[profile.bump](t))
    rho = np.tile(rho, m)
    theta = 2 * math.pi * (np.repeat(np.arange(m), s) + np.tile(t, m)) / m + profile.phase
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta)])


def _min_turn(p: np.ndarray) -> float:
    a = p - np.concatenate([p[-1:], p[:-1]])
    b = np.concatenate([p[1:], p[:1]]) - p
    cr = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    return float(np.min(cr / (np.hypot(*a.T) * np.hypot(*b.T))))


def modified_sector_body(profile: SectorProfile, R: float = 1.0) -> ConvexBody:
    """Replicate a bumped circular arc around the center; halve epsilon until convex."""
    eps = profile.epsilon
    for halvings in range(MAX_HALVINGS + 1):
        pts = sector_points(profile, eps, R)
        if _min_turn(pts) >= CONVEXITY_MARGIN:
            break
        eps /= 2
    else:
        raise ConvexityUnreachable(f"no convex body after {MAX_HALVINGS} halvings of {profile}")
    meta = {
        "generator": "sector",
        "m": profile.base_degree,
        "samples_per_sector": profile.samples_per_sector,
        "bump": profile.bump,
        "seed": profile.seed,
        "epsilon_requested": profile.epsilon,
        "epsilon": eps,
        "halvings": halvings,
        "R": R,
        "degenerate": eps == 0,
    }
    try:
        body = normalize_body(pts, GENERATED, meta=meta)
    except NonConvexInput as exc:
        raise ConvexityUnreachable(str(exc)) from None
    if eps > 0:
        k_c = detect_symmetry(body, GENERATED).max_degree
        if k_c != profile.base_degree:
            raise SymmetryBroken(f"built for m={profile.base_degree}, detected k_C={k_c}")
    return body


def tolerance_for(generator: str) -> Tolerance:
    return GENERATED if generator == "sector" else ANALYTIC


@dataclass(frozen=True)
class Directive:
    """One corpus instruction: ``regular`` (m), ``circle`` (n) or ``sector`` (m, count)."""

    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    body_id: str
    body: ConvexBody
    generator: str
    params: dict
    kC: int
    chi: int

    @property
    def tol(self) -> Tolerance:
        return tolerance_for(self.generator)


def default_directives() -> list[Directive]:
    out = [Directive("regular", {"m": m}) for m in range(3, 61)]
    out += [Directive("circle", {"n": n}) for n in CIRCLE_SIZES]
    out += [
        Directive("sector", {"m": m, "count": SECTOR_BODIES_PER_DEGREE}) for m in SECTOR_DEGREES
    ]
    return out


def random_sector_profile(m: int, index: int, master_seed: int) -> SectorProfile:
    """Profile of corpus body ``index`` for degree ``m``, sub-seeded from the master seed."""
    rng = np.random.default_rng([master_seed, m, index])
    bump = sorted(BUMPS)[int(rng.integers(len(BUMPS)))]
    samples = int(rng.integers(8, 25))
    # the curvature of the bump grows like m^2; start near what convexity allows
    eps = float(rng.uniform(0.02, 0.3)) * min(1.0, (4.0 / m) ** 2)
    return SectorProfile(m, samples, eps, bump, seed=int(rng.integers(2**31)))


def _entry(body_id, body, generator, params, tol) -> CorpusEntry:
    prof = detect_symmetry(body, tol)
    return CorpusEntry(body_id, body, generator, params, prof.max_degree, prof.min_degree)


def generate_corpus(directives=None, master_seed: int = 42) -> list[CorpusEntry]:
    entries = []
    for d in directives if directives is not None else default_directives():
        if d.kind == "regular":
            m = d.params["m"]
            body = regular_polygon(m, d.params.get("R", 1.0))
            entries.append(_entry(f"regular_m{m:03d}", body, "regular", {"m": m}, ANALYTIC))
        elif d.kind == "circle":
            n = d.params["n"]
            body = circle_polygon(n, d.params.get("R", 1.0))
            entries.append(_entry(f"circle_n{n}", body, "circle", {"n": n}, ANALYTIC))
        elif d.kind == "sector":
            m = d.params["m"]
            for j in range(d.params.get("count", SECTOR_BODIES_PER_DEGREE)):
                prof = random_sector_profile(m, j, master_seed)
                body = modified_sector_body(prof, d.params.get("R", 1.0))
                params = {
                    "m": m,
                    "samples_per_sector": prof.samples_per_sector,
                    "bump": prof.bump,
                    "epsilon": body.meta["epsilon"],
                    "seed": prof.seed,
                }
                entries.append(_entry(f"sector_m{m:02d}_{j:03d}", body, "sector", params, GENERATED))
        else:
            raise ValueError(f"unknown directive kind {d.kind!r}")
    return entries


MANIFEST_FIELDS = ("body_id", "generator", "parameters", "kC", "chi")


def write_corpus(entries, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for e in entries:
        text = format_polygon(e.body.vertices, comment=f"{e.body_id} ({e.generator})")
        (directory / f"{e.body_id}.poly").write_text(text, encoding="utf-8")
    with open(directory / "manifest.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MANIFEST_FIELDS)
        for e in sorted(entries, key=lambda e: e.body_id):
            w.writerow([e.body_id, e.generator, json.dumps(e.params, sort_keys=True), e.kC, e.chi])
    return directory


def read_manifest(directory) -> list[dict]:
    with open(Path(directory) / "manifest.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row["kC"] = int(row["kC"])
        row["chi"] = int(row["chi"])
        row["parameters"] = json.loads(row["parameters"])
    return rows


def load_entry(directory, row: dict) -> ConvexBody:
    """Load and normalize one manifest row's polygon (errors propagate)."""
    pts = read_polygon(Path(directory) / f"{row['body_id']}.poly")
    meta = {"generator": row["generator"], **row["parameters"]}
    return normalize_body(pts, tolerance_for(row["generator"]), meta=meta)
