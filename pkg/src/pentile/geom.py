"""Planar primitives: points, rigid motions (with reflections), polygons,
and the tolerance-aware predicates everything else is built on.

All coordinates live in canonical length units (hexagon side = 1).  Angles
cross module boundaries in degrees; radians stay internal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon

ORTHO_TOL = 1e-12


def unit(angle_deg: float) -> np.ndarray:
    """Unit vector at the given angle (degrees, counter-clockwise from +x)."""
    r = np.radians(angle_deg)
    return np.array([np.cos(r), np.sin(r)])


@dataclass(frozen=True)
class Isometry:
    """Rigid motion of the plane: x -> linear @ x + translation.

    The linear part is orthogonal; det +1 is a rotation, det -1 a reflection.
    """

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.linear, dtype=float).reshape(2, 2)
        t = np.asarray(self.translation, dtype=float).reshape(2)
        object.__setattr__(self, "linear", m)
        object.__setattr__(self, "translation", t)
        if np.max(np.abs(m @ m.T - np.eye(2))) > 1e-9:
            raise ValueError("linear part is not orthogonal")

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(np.eye(2), np.zeros(2))

    @staticmethod
    def translation_by(vec) -> "Isometry":
        return Isometry(np.eye(2), np.asarray(vec, dtype=float))

    @staticmethod
    def rotation(angle_deg: float, center=(0.0, 0.0)) -> "Isometry":
        r = np.radians(angle_deg)
        c, s = np.cos(r), np.sin(r)
        m = np.array([[c, -s], [s, c]])
        center = np.asarray(center, dtype=float)
        return Isometry(m, center - m @ center)

    @staticmethod
    def reflection(axis_angle_deg: float, through=(0.0, 0.0)) -> "Isometry":
        """Reflection across the line at axis_angle_deg through a point."""
        r = np.radians(2.0 * axis_angle_deg)
        m = np.array([[np.cos(r), np.sin(r)], [np.sin(r), -np.cos(r)]])
        p = np.asarray(through, dtype=float)
        return Isometry(m, p - m @ p)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    @property
    def is_reflection(self) -> bool:
        return self.det < 0.0

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear.T + self.translation

    def inverse(self) -> "Isometry":
        inv = self.linear.T
        return Isometry(inv, -inv @ self.translation)


def compose(f: Isometry, g: Isometry) -> Isometry:
    """Isometry applying g first, then f."""
    return Isometry(f.linear @ g.linear, f.linear @ g.translation + f.translation)


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with counter-clockwise vertex order."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        if len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon has non-finite coordinates")
        if _signed_area(v) < 0:
            v = v[::-1].copy()
        object.__setattr__(self, "vertices", v)

    @property
    def signed_area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def edges(self) -> np.ndarray:
        """(N, 2, 2) array of directed edges (start, end)."""
        v = self.vertices
        return np.stack([v, np.roll(v, -1, axis=0)], axis=1)

    def side_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)

    def interior_angles(self) -> np.ndarray:
        """Interior angle at each vertex, degrees, in vertex order."""
        v = self.vertices
        prev = v - np.roll(v, 1, axis=0)
        nxt = np.roll(v, -1, axis=0) - v
        cross = prev[:, 0] * nxt[:, 1] - prev[:, 1] * nxt[:, 0]
        ang = np.degrees(np.arctan2(cross, np.einsum("ij,ij->i", prev, nxt)))
        return 180.0 - ang

    def bounds(self) -> np.ndarray:
        return np.concatenate([self.vertices.min(axis=0), self.vertices.max(axis=0)])

    def is_simple(self) -> bool:
        return ShapelyPolygon(self.vertices).is_valid

    def to_shapely(self) -> ShapelyPolygon:
        return ShapelyPolygon(self.vertices)


def apply(f: Isometry, p: Polygon) -> Polygon:
    """Map a polygon; vertex order re-normalizes to CCW for reflections."""
    return Polygon(f(p.vertices))


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygons_interiors_intersect(p: Polygon, q: Polygon, eps: float) -> bool:
    """True iff the open interiors, shrunk by eps, intersect.

    Shared boundary segments alone do not count as intersection.
    """
    bp, bq = p.bounds(), q.bounds()
    if (
        bp[2] < bq[0] - 2 * eps
        or bq[2] < bp[0] - 2 * eps
        or bp[3] < bq[1] - 2 * eps
        or bq[3] < bp[1] - 2 * eps
    ):
        return False
    sp = p.to_shapely().buffer(-eps, join_style=2)
    sq = q.to_shapely().buffer(-eps, join_style=2)
    if sp.is_empty or sq.is_empty:
        return False
    return sp.intersects(sq)


def segment_coverage(target, pieces, eps: float) -> bool:
    """True iff pieces collinear with target cover it up to gaps <= eps.

    target is a (2, 2) segment, pieces an iterable of (2, 2) segments.
    """
    target = np.asarray(target, dtype=float)
    p0, p1 = target
    d = p1 - p0
    length = float(np.linalg.norm(d))
    if length <= eps:
        raise ValueError("target segment shorter than eps")
    d = d / length
    normal = np.array([-d[1], d[0]])

    intervals = []
    for seg in pieces:
        seg = np.asarray(seg, dtype=float)
        if max(abs(float(np.dot(seg[0] - p0, normal))),
               abs(float(np.dot(seg[1] - p0, normal)))) > eps:
            continue  # not collinear with the target line
        t0 = float(np.dot(seg[0] - p0, d))
        t1 = float(np.dot(seg[1] - p0, d))
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, 0.0), min(hi, length)
        if hi - lo > 0:
            intervals.append((lo, hi))
    return covered_length(intervals, length, eps)


def covered_length(intervals, length: float, eps: float) -> bool:
    """Whether merged intervals cover [0, length] with gaps <= eps."""
    if not intervals:
        return length <= eps
    intervals = sorted(intervals)
    cursor = 0.0
    for lo, hi in intervals:
        if lo > cursor + eps:
            return False
        cursor = max(cursor, hi)
    return cursor >= length - eps


def uncovered_intervals(intervals, length: float, eps: float):
    """Maximal sub-intervals of [0, length] not covered, ignoring slivers < eps."""
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1] + eps:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    gaps = []
    cursor = 0.0
    for lo, hi in merged:
        if lo - cursor > eps:
            gaps.append((cursor, lo))
        cursor = max(cursor, hi)
    if length - cursor > eps:
        gaps.append((cursor, length))
    return gaps
