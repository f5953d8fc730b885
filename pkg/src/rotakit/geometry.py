"""Planar primitives for convex polygons.

Polygons are ``(n, 2)`` float arrays in counterclockwise order. A
:class:`ConvexBody` is a normalized polygon that also caches its center of
symmetry (the area centroid), inradius and circumradius about that center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
from scipy.spatial.distance import pdist

from rotakit import _kernels
from rotakit.errors import (
    DegenerateInput,
    NonConvexInput,
    NumericalFailure,
    PolygonFormatError,
)


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerances; absolute thresholds are these times the body's R."""

    eps_geom: float = 1e-9
    eps_dm: float = 1e-7

    def __post_init__(self):
        if not 0 < self.eps_geom <= self.eps_dm < 1e-3:
            raise ValueError(
                f"need 0 < eps_geom <= eps_dm < 1e-3, got {self.eps_geom}, {self.eps_dm}"
            )


# exact trigonometric constructions (regular polygons, circle approximations)
ANALYTIC = Tolerance(1e-9, 1e-7)
# sampled bodies (modified sectors)
GENERATED = Tolerance(1e-6, 1e-5)


@dataclass(frozen=True, eq=False)
class ConvexBody:
    vertices: np.ndarray
    center: Point2
    inradius: float
    circumradius: float
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        return polygon_area(self.vertices)

    def __len__(self):
        return len(self.vertices)


def as_points(points) -> np.ndarray:
    """Coerce a body, a list of pairs or an array to a float ``(n, 2)`` array."""
    if isinstance(points, ConvexBody):
        return points.vertices
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim == 1:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected (n, 2) coordinates, got shape {arr.shape}")
    return arr


def _next(a):
    """Cyclic successor (cheaper than np.roll on small arrays)."""
    return np.concatenate([a[1:], a[:1]])


def _prev(a):
    return np.concatenate([a[-1:], a[:-1]])


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def polygon_area(points, signed: bool = False) -> float:
    p = as_points(points)
    if len(p) < 3:
        return 0.0
    q = _next(p)
    a = 0.5 * float(np.sum(p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1]))
    return a if signed else abs(a)


def polygon_centroid(points) -> Point2:
    p = as_points(points)
    q = _next(p)
    w = p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1]
    a = 0.5 * w.sum()
    cx = ((p[:, 0] + q[:, 0]) * w).sum() / (6.0 * a)
    cy = ((p[:, 1] + q[:, 1]) * w).sum() / (6.0 * a)
    return Point2(float(cx), float(cy))


def _dedupe_cyclic(p: np.ndarray, atol: float) -> np.ndarray:
    """Drop points within ``atol`` of their predecessor (cyclically)."""
    if len(p) < 2:
        return p
    step = np.hypot(*(p - _prev(p)).T)
    keep = step > atol
    if not keep.any():
        return p[:1]
    return p[keep]


def _merge_collinear(p: np.ndarray, eps: float, scale: float) -> np.ndarray:
    """Drop straight-angle vertices; raise on a reflex turn beyond tolerance."""
    while len(p) >= 3:
        a = p - _prev(p)
        b = _next(p) - p
        cr = _cross(a, b)
        norm = np.hypot(a[:, 0], a[:, 1]) * np.hypot(b[:, 0], b[:, 1])
        turn = cr / norm
        reflex = (cr < -eps * scale**2) & (turn < -eps)
        if reflex.any():
            i = int(np.argmax(reflex))
            raise NonConvexInput(
                f"reflex turn at vertex ({p[i, 0]:.6g}, {p[i, 1]:.6g}), cross={cr[i]:.3g}"
            )
        flat = turn <= eps
        if not flat.any():
            break
        # never drop two neighbours in one pass
        idx = np.flatnonzero(flat)
        drop = [idx[0]]
        for i in idx[1:]:
            if i != drop[-1] + 1:
                drop.append(i)
        if drop[-1] == len(p) - 1 and drop[0] == 0 and len(drop) > 1:
            drop.pop()
        p = np.delete(p, drop, axis=0)
    return p


def _point_segment_distances(c, p: np.ndarray) -> np.ndarray:
    """Distances from point ``c`` to each closed edge ``p[i] -> p[i+1]``."""
    q = _next(p)
    e = q - p
    ee = np.einsum("ij,ij->i", e, e)
    t = np.einsum("ij,ij->i", np.asarray(c) - p, e) / np.where(ee > 0, ee, 1.0)
    t = np.clip(t, 0.0, 1.0)
    foot = p + t[:, None] * e
    return np.hypot(foot[:, 0] - c[0], foot[:, 1] - c[1])


def contains_point(points, c, atol: float = 0.0) -> bool:
    """Closed containment test for a CCW convex polygon."""
    p = as_points(points)
    e = _next(p) - p
    side = _cross(e, np.asarray(c) - p) / np.maximum(np.hypot(e[:, 0], e[:, 1]), 1e-300)
    return bool(np.all(side >= -atol))


def normalize_body(raw_vertices, tol: Tolerance = ANALYTIC, meta=None) -> ConvexBody:
    """Build a :class:`ConvexBody` from vertices given in any order."""
    p = as_points(raw_vertices)
    if len(p) < 3:
        raise DegenerateInput(f"need at least 3 points, got {len(p)}")
    if not np.all(np.isfinite(p)):
        raise DegenerateInput("non-finite coordinate")
    mean = p.mean(axis=0)
    rel = p - mean
    scale = float(np.max(np.hypot(rel[:, 0], rel[:, 1])))
    if scale == 0.0:
        raise DegenerateInput("all points coincide")
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    order = np.lexsort((np.hypot(rel[:, 0], rel[:, 1]), ang))
    p = _dedupe_cyclic(p[order], tol.eps_geom * scale)
    if len(p) < 3 or polygon_area(p) <= tol.eps_geom * scale**2:
        raise DegenerateInput("polygon has (near) zero area")
    p = _merge_collinear(p, tol.eps_geom, scale)
    if len(p) < 3 or polygon_area(p) <= tol.eps_geom * scale**2:
        raise DegenerateInput("polygon has (near) zero area")
    p = np.ascontiguousarray(p)
    p.setflags(write=False)

    center = polygon_centroid(p)
    if not contains_point(p, center):
        raise NumericalFailure("centroid outside polygon")
    r = float(np.min(_point_segment_distances(center, p)))
    R = float(np.max(np.hypot(p[:, 0] - center.x, p[:, 1] - center.y)))
    if not 0 < r <= R:
        raise DegenerateInput(f"invalid radii r={r}, R={R}")
    return ConvexBody(p, center, r, R, dict(meta or {}))


def inradius(body: ConvexBody) -> float:
    return float(np.min(_point_segment_distances(body.center, body.vertices)))


def circumradius(body: ConvexBody) -> float:
    v = body.vertices
    return float(np.max(np.hypot(v[:, 0] - body.center.x, v[:, 1] - body.center.y)))


def diameter(points, method: str = "calipers") -> float:
    """Diameter of a convex polygon, from its vertices.

    ``method="brute"`` takes the max over all vertex pairs; ``"calipers"``
    walks antipodal pairs in linear time. Both must agree on convex input.
    """
    p = as_points(points)
    if len(p) < 2:
        return 0.0
    if method == "brute":
        return float(pdist(p).max())
    if method != "calipers":
        raise ValueError(f"unknown method {method!r}")
    if polygon_area(p, signed=True) < 0:
        p = p[::-1]
    xs = np.ascontiguousarray(p[:, 0])
    ys = np.ascontiguousarray(p[:, 1])
    return float(_kernels.caliper_diameter(xs, ys, len(p)))


def rotate_about(points, center, angle: float) -> np.ndarray:
    p = as_points(points)
    c, s = math.cos(angle), math.sin(angle)
    d = p - np.asarray(center, dtype=float)
    out = np.empty_like(d)
    out[:, 0] = c * d[:, 0] - s * d[:, 1] + center[0]
    out[:, 1] = s * d[:, 0] + c * d[:, 1] + center[1]
    return out


def clip_halfplane(polygon, line_point, inward_normal) -> np.ndarray:
    """Sutherland-Hodgman against ``{z : (z - line_point) . inward_normal >= 0}``."""
    p = as_points(polygon)
    if len(p) == 0:
        return p.copy()
    nrm = np.asarray(inward_normal, dtype=float)
    d = (p - np.asarray(line_point, dtype=float)) @ nrm
    inside = d >= 0.0
    if inside.all():
        return p.copy()
    if not inside.any():
        return np.empty((0, 2))
    q = _next(p)
    dq = _next(d)
    inq = _next(inside)
    cross = inside != inq
    t = np.where(cross, d / np.where(cross, d - dq, 1.0), 0.0)
    x = p + t[:, None] * (q - p)
    # per edge (p -> q) emit [intersection?, q?] in that order
    cand = np.stack([x, q], axis=1).reshape(-1, 2)
    emit = np.stack([cross, inq], axis=1).reshape(-1)
    out = cand[emit]
    if len(out):
        scale = float(np.max(np.abs(out))) or 1.0
        out = _dedupe_cyclic(out, 1e-14 * scale)
    return out


def ray_boundary_intersection(body, direction, origin=None) -> Point2:
    """First boundary point hit by the ray from ``origin`` (default: center)."""
    p = as_points(body)
    o = np.asarray(body.center if origin is None else origin, dtype=float)
    dvec = np.asarray(direction, dtype=float)
    if not np.any(dvec):
        raise ValueError("zero direction")
    e = _next(p) - p
    w = p - o
    den = _cross(dvec, e)
    ok = np.abs(den) > 1e-300
    safe = np.where(ok, den, 1.0)
    t = _cross(w, e) / safe
    s = _cross(w, dvec) / safe
    valid = ok & (t > 0) & (s >= -1e-12) & (s <= 1 + 1e-12)
    if not valid.any():
        raise NumericalFailure("ray from interior point missed the boundary")
    i = int(np.flatnonzero(valid)[np.argmin(t[valid])])
    hit = o + t[i] * dvec
    return Point2(float(hit[0]), float(hit[1]))


def hausdorff_convex(a, b) -> float:
    """Hausdorff distance between two convex polygons (attained at vertices)."""
    a, b = as_points(a), as_points(b)
    ax, ay = np.ascontiguousarray(a[:, 0]), np.ascontiguousarray(a[:, 1])
    bx, by = np.ascontiguousarray(b[:, 0]), np.ascontiguousarray(b[:, 1])
    return max(
        _kernels.max_dist_to_convex(ax, ay, bx, by),
        _kernels.max_dist_to_convex(bx, by, ax, ay),
    )


def polar_angle(points, center) -> np.ndarray:
    """Polar angles in ``[0, 2*pi)`` about ``center``."""
    d = as_points(points) - np.asarray(center, dtype=float)
    return np.mod(np.arctan2(d[:, 1], d[:, 0]), 2 * math.pi)


def parse_polygon(text: str) -> np.ndarray:
    """Parse the polygon text format: ``x y`` per line, ``#`` comments."""
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise PolygonFormatError(f"line {lineno}: expected 'x y', got {line!r}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise PolygonFormatError(f"line {lineno}: {exc}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PolygonFormatError(f"line {lineno}: non-finite coordinate")
        pts.append((x, y))
    return np.array(pts, dtype=float).reshape(-1, 2)


def read_polygon(path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise PolygonFormatError(f"cannot read {path}: {exc}") from None
    return parse_polygon(text)


def format_polygon(points, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    # repr round-trips doubles exactly
    lines.extend(f"{x!r} {y!r}" for x, y in as_points(points).tolist())
    return "\n".join(lines) + "\n"


def write_polygon(path, points, comment: str | None = None) -> Path:
    path = Path(path)
    path.write_text(format_polygon(points, comment), encoding="utf-8")
    return path


def load_body(path, tol: Tolerance = ANALYTIC) -> ConvexBody:
    return normalize_body(read_polygon(path), tol, meta={"source": str(path)})
