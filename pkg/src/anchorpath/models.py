"""Static anchor path models (SCAN, DOUBLE-SCAN, HILBERT, SPIRAL) and their statistics.

Coordinates are y-up meters. Every generator is a pure function of
:class:`ModelParams`; new models are added with :func:`register`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .geometry import Point2D, Polyline, bounding_box, polyline_length


@dataclass(frozen=True)
class ModelParams:
    nR: int = 10
    resolution: float = 50.0
    curve_level: int = 1
    origin: Point2D = Point2D(1.0, 1.0)
    spiral_step: float = 0.25

    def __post_init__(self) -> None:
        if self.nR < 1:
            raise ValueError(f"invalid segment count: {self.nR}")
        if not self.resolution > 0:
            raise ValueError(f"invalid resolution: {self.resolution}")
        if self.curve_level < 1:
            raise ValueError(f"invalid curve level: {self.curve_level}")
        if not self.spiral_step > 0:
            raise ValueError(f"invalid spiral step: {self.spiral_step}")


@dataclass(frozen=True)
class Trajectory:
    model: str
    params: ModelParams
    path: Polyline


@dataclass(frozen=True)
class ModelStats:
    area_width: float
    area_height: float
    total_length: float
    sim_time: int
    extras: list[tuple[str, object]] = field(default_factory=list)


def _boustrophedon(start: Point2D, lanes: int, spacing: float, span: float,
                   lane_dir: tuple[int, int], sweep_dir: tuple[int, int]) -> list[Point2D]:
    """Back-and-forth sweep of ``lanes`` parallel lanes of length ``span``.

    Lanes run along ``sweep_dir`` (first lane forward, then alternating) and
    are offset from each other by ``spacing`` along ``lane_dir``.
    """
    pts = []
    for i in range(lanes):
        ox = start.x + lane_dir[0] * i * spacing
        oy = start.y + lane_dir[1] * i * spacing
        a = Point2D(ox, oy)
        b = Point2D(ox + sweep_dir[0] * span, oy + sweep_dir[1] * span)
        pts.extend((a, b) if i % 2 == 0 else (b, a))
    return pts


def _scan_points(params: ModelParams) -> list[Point2D]:
    side = params.nR * params.resolution
    return _boustrophedon(params.origin, params.nR + 1, params.resolution, side,
                          lane_dir=(1, 0), sweep_dir=(0, 1))


def generate_scan(params: ModelParams) -> Trajectory:
    return Trajectory("scan", params, Polyline(_scan_points(params)))


def generate_double_scan(params: ModelParams) -> Trajectory:
    """Vertical SCAN pass followed by the transposed (row-wise) pass over the same square."""
    first = _scan_points(params)
    side = params.nR * params.resolution
    o = params.origin
    end = first[-1]
    corners = {Point2D(o.x, o.y), Point2D(o.x + side, o.y),
               Point2D(o.x, o.y + side), Point2D(o.x + side, o.y + side)}
    # the vertical pass always finishes on a corner; the fallback keeps
    # the construction total for any future variant that does not
    start = end if end in corners else o
    lane_dir = (0, 1) if start.y == o.y else (0, -1)
    sweep_dir = (1, 0) if start.x == o.x else (-1, 0)
    second = _boustrophedon(start, params.nR + 1, params.resolution, side,
                            lane_dir=lane_dir, sweep_dir=sweep_dir)
    if second[0] == end:
        second = second[1:]
    return Trajectory("double-scan", params, Polyline(first + second))


def _hilbert_cells(level: int) -> list[tuple[int, int]]:
    """Lattice walk from (0, 0) to (2**level - 1, 0): up, across, down at level 1."""
    if level == 1:
        return [(0, 0), (0, 1), (1, 1), (1, 0)]
    sub = _hilbert_cells(level - 1)
    h = 1 << (level - 1)
    return ([(y, x) for x, y in sub]
            + [(x, y + h) for x, y in sub]
            + [(x + h, y + h) for x, y in sub]
            + [(2 * h - 1 - y, h - 1 - x) for x, y in sub])


def hilbert_cells(level: int) -> list[tuple[int, int]]:
    """Integer lattice order of the level-``level`` curve.

    Even levels are transposed so that every level begins with the previous
    level's curve as its first quarter, e.g. level 2 opens with the level-1
    hook (0,0)->(0,1)->(1,1)->(1,0).
    """
    if level < 1:
        raise ValueError(f"invalid curve level: {level}")
    cells = _hilbert_cells(level)
    if level % 2 == 0:
        cells = [(y, x) for x, y in cells]
    return cells


def generate_hilbert(params: ModelParams) -> Trajectory:
    o, d = params.origin, params.resolution
    pts = [Point2D(o.x + i * d, o.y + j * d) for i, j in hilbert_cells(params.curve_level)]
    return Trajectory("hilbert", params, Polyline(pts))


@dataclass(frozen=True)
class SpiralShape:
    center: Point2D
    growth: float  # radial gain per radian
    final_radius: float
    final_angle: float

    @property
    def turns(self) -> int:
        return math.floor(self.final_angle / (2 * math.pi))


def spiral_shape(params: ModelParams) -> SpiralShape:
    side = (params.nR + 1) * params.resolution
    half = side / 2
    growth = params.resolution / (2 * math.pi)
    return SpiralShape(params.origin.translated(half, half), growth, half, half / growth)


def spiral_arclength(growth: float, theta: float) -> float:
    """Closed-form arc length of r = growth * theta from 0 to ``theta``."""
    return growth / 2 * (theta * math.sqrt(1 + theta * theta) + math.asinh(theta))


def _theta_at_arclength(growth: float, s: float, guess: float) -> float:
    theta = max(guess, math.sqrt(2 * s / growth))
    for _ in range(50):
        step = (spiral_arclength(growth, theta) - s) / (growth * math.sqrt(1 + theta * theta))
        theta -= step
        if abs(step) < 1e-13 * max(1.0, theta):
            break
    return theta


def generate_spiral(params: ModelParams) -> Trajectory:
    shape = spiral_shape(params)
    b, c = shape.growth, shape.center
    total = spiral_arclength(b, shape.final_angle)
    thetas = [0.0]
    k = 1
    while (s := k * params.spiral_step) < total:
        thetas.append(_theta_at_arclength(b, s, thetas[-1]))
        k += 1
    thetas.append(shape.final_angle)
    pts = [Point2D(c.x + b * t * math.cos(t), c.y + b * t * math.sin(t)) for t in thetas]
    # a sub-ulp last step could repeat the previous sample
    if len(pts) > 2 and pts[-1] == pts[-2]:
        pts.pop(-2)
    return Trajectory("spiral", params, Polyline(pts))


def compute_stats(t: Trajectory, speed: float) -> ModelStats:
    if not speed > 0:
        raise ValueError(f"invalid speed: {speed}")
    box = bounding_box(t.path)
    length = polyline_length(t.path)
    p = t.params
    extras: list[tuple[str, object]] = []
    if t.model in ("scan", "double-scan"):
        extras += [("Length of Vertical Segment (m)", round(p.nR * p.resolution)),
                   ("Number of Vertical Segments", p.nR + 1)]
        if t.model == "double-scan":
            extras.append(("Number of Horizontal Segments", p.nR + 1))
    elif t.model == "hilbert":
        n = 4 ** p.curve_level
        extras += [("Number of Horizontal Segments", 2 ** p.curve_level - 1),
                   ("Number of Waypoints", n),
                   ("Vertex-Count Length (m)", round(n * p.resolution)),
                   ("Length Convention",
                    f"{n - 1} lattice steps of {p.resolution:g} m; "
                    f"counting {n} steps instead gives {n * p.resolution:g} m")]
    elif t.model == "spiral":
        sh = spiral_shape(p)
        extras += [("Number of Spiral Turns", sh.turns),
                   ("Spiral Final Radius (m)", round(sh.final_radius)),
                   ("Spiral Growth Rate (m)", round(sh.growth)),
                   ("Spiral Final Angle (rad)", round(sh.final_angle)),
                   ("Anchor Initial Position (x, y)",
                    f"({sh.center.x:g}, {sh.center.y:g})"),
                   ("Spiral Growth Rate Exact (m)", sh.growth),
                   ("Spiral Final Angle Exact (rad)", sh.final_angle)]
    return ModelStats(box.width, box.height, length, math.floor(length / speed), extras)


class UnknownModelError(LookupError):
    pass


Generator = Callable[[ModelParams], Trajectory]

_REGISTRY: dict[str, Generator] = {
    "scan": generate_scan,
    "double-scan": generate_double_scan,
    "hilbert": generate_hilbert,
    "spiral": generate_spiral,
}


def register(name: str, generator: Generator) -> None:
    """Add a path model; call at startup, before concurrent use."""
    if name in _REGISTRY:
        raise ValueError(f"model already registered: {name}")
    _REGISTRY[name] = generator


def registry_list() -> list[str]:
    return list(_REGISTRY)


def registry_get(name: str) -> Generator:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownModelError(
            f"unknown model {name!r}; available: {', '.join(_REGISTRY)}") from None
