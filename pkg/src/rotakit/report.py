"""CSV serialization of results and SVG rendering of partitions."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from rotakit.geometry import ConvexBody
from rotakit.partitions import ChainReport

CHAIN_FIELDS = (
    "body_id", "kC", "chi", "k", "dM_formula", "dM_brute", "R", "r",
    "equals_R", "equality_chain", "unique_minimum",
)
SEARCH_FIELDS = ("body_id", "k", "n_samples", "seed", "best_dM", "formula_dM", "gap")
SWEEP_FIELDS = ("angle", "dM", "area_left", "area_right")
VIOLATION_FIELDS = ("body_id", "check", "message")
SUMMARY_FIELDS = ("check", "checked", "violations")

FORMULA_NA = "formula_na"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.13g" % v
    return str(v)


def format_csv(rows: Iterable[dict], fields: Sequence[str]) -> str:
    """RFC 4180 CSV with a fixed header; floats round-trip within 1e-12 relative."""
    buf = io.StringIO(newline="")
    w = csv.writer(buf)
    w.writerow(fields)
    for row in rows:
        w.writerow([_cell(row.get(f)) for f in fields])
    return buf.getvalue()


def write_csv(rows: Iterable[dict], path, fields: Sequence[str]) -> Path:
    path = Path(path)
    path.write_text(format_csv(rows, fields), encoding="utf-8", newline="")
    return path


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def chain_rows(body_id: str, report: ChainReport) -> list[dict]:
    prof = report.profile
    return [
        {
            "body_id": body_id,
            "kC": prof.max_degree,
            "chi": prof.min_degree,
            "k": e.k,
            "dM_formula": FORMULA_NA if e.dM_formula is None else e.dM_formula,
            "dM_brute": e.dM_brute,
            "R": report.R,
            "r": report.r,
            "equals_R": e.equals_R,
            "equality_chain": report.equality_chain,
            "unique_minimum": report.unique_minimum,
        }
        for e in report.entries
    ]


def search_row(body_id: str, k: int, n_samples: int, seed: int, result) -> dict:
    return {
        "body_id": body_id,
        "k": k,
        "n_samples": n_samples,
        "seed": seed,
        "best_dM": result.best_dM,
        "formula_dM": result.formula_dM,
        "gap": result.best_dM - result.formula_dM,
    }


def sweep_rows(sweep) -> list[dict]:
    return [
        {"angle": a, "dM": d, "area_left": al, "area_right": ar}
        for (a, d), (al, ar) in zip(sweep.profile, sweep.areas)
    ]


# SVG

CANVAS = 800
MARGIN = 0.05
_COLORS = ("#dbe9f6", "#fde0c5", "#d9f0d3", "#eadcf2", "#fbe3e8", "#e6e6cf")


def _realizing_segment(subsets) -> tuple[int, np.ndarray, np.ndarray]:
    """Index of the widest subset and its diameter-realizing vertex pair."""
    best = (-1.0, 0, 0, 0)
    for idx, s in enumerate(subsets):
        if len(s) < 2:
            continue
        d = squareform(pdist(s))
        i, j = np.unravel_index(int(np.argmax(d)), d.shape)
        if d[i, j] > best[0] + 1e-12:
            best = (d[i, j], idx, i, j)
    _, idx, i, j = best
    return idx, subsets[idx][i], subsets[idx][j]


def _hub_and_points(part):
    hub = getattr(part, "center", None)
    if hub is None:
        hub = getattr(part, "hub", None)
    pts = getattr(part, "endpoints", None)
    if pts is None:
        pts = getattr(part, "boundary_points", None)
    return hub, pts


def render_svg(body: ConvexBody, partitions: Sequence = (), annotations: Sequence[str] | None = None) -> str:
    """One panel per partition (outline only when there are none).

    Each panel shows the body, the pieces lightly filled, the cuts from the
    hub, their boundary endpoints, and the segment realizing d_M dashed in red
    over the piece that contains it.
    """
    panels = list(partitions) or [None]
    cols = math.ceil(math.sqrt(len(panels)))
    rows = math.ceil(len(panels) / cols)
    size = CANVAS / max(cols, rows)
    top = (CANVAS - rows * size) / 2
    lo = body.vertices.min(axis=0)
    hi = body.vertices.max(axis=0)
    span = float(max(hi - lo))
    scale = size * (1 - 2 * MARGIN) / span
    mid = (lo + hi) / 2

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    for p_idx, part in enumerate(panels):
        ox = (p_idx % cols + 0.5) * size
        oy = top + (p_idx // cols + 0.5) * size

        def xy(pt, ox=ox, oy=oy):
            return ox + (pt[0] - mid[0]) * scale, oy - (pt[1] - mid[1]) * scale

        def path(points):
            return " ".join("%.3f,%.3f" % xy(p) for p in points)

        out.append(f'<g id="panel{p_idx}">')
        stroke_w = "%.3f" % max(size / 400, 0.5)
        if part is not None:
            widest, a, b = _realizing_segment(part.subsets)
            for i, s in enumerate(part.subsets):
                fill = _COLORS[i % len(_COLORS)]
                extra = ' stroke="#c0392b" stroke-width="%s"' % stroke_w if i == widest else ' stroke="none"'
                out.append(f'<polygon points="{path(s)}" fill="{fill}"{extra}/>')
        out.append(f'<polygon points="{path(body.vertices)}" fill="none" stroke="black" stroke-width="{stroke_w}"/>')
        if part is not None:
            hub, pts = _hub_and_points(part)
            if hub is not None and pts is not None:
                hx, hy = xy(hub)
                for q in pts:
                    qx, qy = xy(q)
                    out.append(
                        f'<line x1="{hx:.3f}" y1="{hy:.3f}" x2="{qx:.3f}" y2="{qy:.3f}" '
                        f'stroke="#1f4e79" stroke-width="{stroke_w}"/>'
                    )
                for q in pts:
                    qx, qy = xy(q)
                    out.append(f'<circle cx="{qx:.3f}" cy="{qy:.3f}" r="{size / 120:.3f}" fill="#1f4e79"/>')
                out.append(f'<circle cx="{hx:.3f}" cy="{hy:.3f}" r="{size / 150:.3f}" fill="black"/>')
            (ax, ay), (bx, by) = xy(a), xy(b)
            out.append(
                f'<line x1="{ax:.3f}" y1="{ay:.3f}" x2="{bx:.3f}" y2="{by:.3f}" stroke="#c0392b" '
                f'stroke-width="{float(stroke_w) * 1.5:.3f}" stroke-dasharray="6,4"/>'
            )
        if annotations is not None and p_idx < len(annotations):
            tx, ty = ox, oy + size / 2 - size * MARGIN / 3
            out.append(
                f'<text x="{tx:.3f}" y="{ty:.3f}" font-family="sans-serif" font-size="{size / 25:.1f}" '
                f'text-anchor="middle">{_escape(annotations[p_idx])}</text>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
