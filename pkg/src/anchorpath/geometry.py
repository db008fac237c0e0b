"""Planar geometry primitives shared by the path generators and analyzers."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from itertools import accumulate, pairwise
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, slots=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def distance_to(self, other: Point2D) -> float:
        return math.hypot(other.x - self.x, other.y - self.y)

    def lerp(self, other: Point2D, f: float) -> Point2D:
        return Point2D(self.x + (other.x - self.x) * f, self.y + (other.y - self.y) * f)

    def translated(self, dx: float, dy: float) -> Point2D:
        return Point2D(self.x + dx, self.y + dy)


@dataclass(frozen=True, slots=True)
class Rect:
    min: Point2D
    max: Point2D

    def __post_init__(self) -> None:
        if self.min.x > self.max.x or self.min.y > self.max.y:
            raise ValueError("rect min must not exceed max")

    @property
    def width(self) -> float:
        return self.max.x - self.min.x

    @property
    def height(self) -> float:
        return self.max.y - self.min.y

    def contains(self, p: Point2D, tol: float = 0.0) -> bool:
        return (self.min.x - tol <= p.x <= self.max.x + tol
                and self.min.y - tol <= p.y <= self.max.y + tol)


@dataclass(frozen=True)
class Polyline:
    """Ordered waypoints; consecutive duplicates are rejected."""

    points: tuple[Point2D, ...]

    def __init__(self, points: Iterable[Point2D | tuple[float, float]]):
        pts = tuple(p if isinstance(p, Point2D) else Point2D(*p) for p in points)
        if not pts:
            raise ValueError("polyline needs at least one point")
        for i, (a, b) in enumerate(pairwise(pts)):
            if a == b:
                raise ValueError(f"zero-length segment at index {i}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point2D]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def first(self) -> Point2D:
        return self.points[0]

    @property
    def last(self) -> Point2D:
        return self.points[-1]

    def segment_lengths(self) -> list[float]:
        return [a.distance_to(b) for a, b in pairwise(self.points)]

    def cumulative_lengths(self) -> list[float]:
        """Arc length at each waypoint, starting at 0."""
        return [0.0, *accumulate(self.segment_lengths())]


def polyline_length(p: Polyline) -> float:
    # same summation order as cumulative_lengths so the two agree bit for bit
    return p.cumulative_lengths()[-1]


def point_at_arclength(p: Polyline, s: float) -> Point2D:
    if s < 0:
        raise ValueError(f"arclength out of range: {s}")
    cum = p.cumulative_lengths()
    if s >= cum[-1]:
        return p.last
    k = bisect.bisect_right(cum, s) - 1
    seg = cum[k + 1] - cum[k]
    return p[k].lerp(p[k + 1], (s - cum[k]) / seg)


def cross(o: Point2D, a: Point2D, b: Point2D) -> float:
    """z-component of (a - o) x (b - o); twice the signed triangle area."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def collinear(a: Point2D, b: Point2D, c: Point2D, eps: float = 1e-6) -> bool:
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return abs(cross(a, b, c)) <= eps


def bounding_box(p: Polyline | Sequence[Point2D]) -> Rect:
    pts = p.points if isinstance(p, Polyline) else p
    xs = [q.x for q in pts]
    ys = [q.y for q in pts]
    return Rect(Point2D(min(xs), min(ys)), Point2D(max(xs), max(ys)))


def distance_to_segment(p: Point2D, a: Point2D, b: Point2D) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    seg2 = dx * dx + dy * dy
    if seg2 == 0:
        return p.distance_to(a)
    f = max(0.0, min(1.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / seg2))
    return p.distance_to(a.lerp(b, f))
