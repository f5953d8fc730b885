"""Maximum relative diameter of standard k-partitions of rotationally symmetric convex bodies."""

from rotakit.geometry import (
    ANALYTIC,
    GENERATED,
    ConvexBody,
    Point2,
    Tolerance,
    clip_halfplane,
    diameter,
    normalize_body,
    rotate_about,
)

__all__ = [
    "ANALYTIC",
    "GENERATED",
    "ConvexBody",
    "Point2",
    "Tolerance",
    "clip_halfplane",
    "diameter",
    "normalize_body",
    "rotate_about",
]
