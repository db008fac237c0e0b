"""Constant-speed replay of anchor trajectories and parsed scenarios."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterator

from .geometry import Point2D, Polyline
from .models import Trajectory
from .ns2 import ScenarioError, ScenarioFile

TIMING_TOLERANCE = 1e-6  # seconds


@dataclass(frozen=True)
class TimedPath:
    """Waypoints with their arrival times at a fixed speed."""

    times: tuple[float, ...]
    points: tuple[Point2D, ...]
    speed: float

    def __post_init__(self) -> None:
        if not self.speed > 0:
            raise ValueError(f"invalid speed: {self.speed}")
        if len(self.times) != len(self.points) or not self.points:
            raise ValueError("times and points must be non-empty and aligned")
        if self.times[0] != 0:
            raise ValueError("first arrival time must be 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("arrival times must be strictly increasing")

    @property
    def total_time(self) -> float:
        return self.times[-1]

    @property
    def waypoints(self) -> list[tuple[float, Point2D]]:
        return list(zip(self.times, self.points))

    @property
    def path(self) -> Polyline:
        return Polyline(self.points)


@dataclass(frozen=True)
class BeaconEvent:
    time: float
    position: Point2D
    seq: int


@dataclass(frozen=True)
class Progress:
    elapsed: float
    fraction: float
    position: Point2D
    finished: bool


def _timed(points, speed: float) -> TimedPath:
    cum = Polyline(points).cumulative_lengths()
    return TimedPath(tuple(s / speed for s in cum), tuple(points), speed)


def build_timed_path(t: Trajectory, speed: float) -> TimedPath:
    if not speed > 0:
        raise ValueError(f"invalid speed: {speed}")
    if len(t.path) < 2:
        raise ValueError("trajectory has no motion")
    return _timed(t.path.points, speed)


@dataclass(frozen=True)
class TimingViolation:
    index: int  # 0-based command index
    expected: float
    actual: float

    def __str__(self) -> str:
        return (f"scenario timing infeasible at line {self.index + 1}: "
                f"expected t={self.expected:g} s, found t={self.actual:g} s")


def timing_violations(f: ScenarioFile, start: Point2D | None) -> list[TimingViolation]:
    """Commands whose departure time disagrees with the previous leg's travel time.

    Times are measured from the first command, so a leading hold before the
    first departure is not a violation. Without ``start`` the first leg
    cannot be checked and is skipped.
    """
    out = []
    cmds = f.commands
    prev = start
    for k in range(1, len(cmds)):
        if prev is None:
            prev = cmds[k - 1].dest
            continue
        leg = prev.distance_to(cmds[k - 1].dest) / cmds[k - 1].speed
        expected = cmds[k - 1].time + leg
        if abs(cmds[k].time - expected) > TIMING_TOLERANCE:
            out.append(TimingViolation(k, expected, cmds[k].time))
        prev = cmds[k - 1].dest
    return out


def from_scenario(f: ScenarioFile, start: Point2D) -> TimedPath:
    cmds = f.commands
    if not cmds:
        raise ScenarioError("scenario has no commands")
    speeds = {c.speed for c in cmds}
    if len(speeds) > 1:
        raise ScenarioError(f"mixed speeds {sorted(speeds)}; replay needs one speed")
    violations = timing_violations(f, start)
    if violations:
        v = violations[0]
        raise ScenarioError(str(v), v.index + 1)
    points = [start] + [c.dest for c in cmds]
    for k, (a, b) in enumerate(zip(points, points[1:])):
        if a == b:
            raise ScenarioError("zero-length move", k + 1)
    return _timed(points, cmds[0].speed)


def position_at(tp: TimedPath, t: float) -> Progress:
    if t < 0 or math.isnan(t):
        raise ValueError(f"negative time: {t}")
    total = tp.total_time
    if t >= total:
        return Progress(total, 1.0, tp.points[-1], True)
    k = bisect.bisect_right(tp.times, t) - 1
    t0, t1 = tp.times[k], tp.times[k + 1]
    pos = tp.points[k].lerp(tp.points[k + 1], (t - t0) / (t1 - t0))
    return Progress(t, t / total, pos, False)


def beacon_schedule(tp: TimedPath, interval: float) -> list[BeaconEvent]:
    if not interval > 0:
        raise ValueError(f"invalid beacon interval: {interval}")
    total = tp.total_time
    times = []
    k = 0
    while (t := k * interval) <= total:
        times.append(t)
        k += 1
    if times[-1] < total:
        times.append(total)
    return [BeaconEvent(t, position_at(tp, t).position, i) for i, t in enumerate(times)]


def step_iterator(tp: TimedPath, tick: float) -> Iterator[Progress]:
    """Snapshots at 0, tick, 2*tick, ... up to and including the first finished one."""
    if not tick > 0:
        raise ValueError(f"invalid tick: {tick}")
    k = 0
    while True:
        snap = position_at(tp, k * tick)
        yield snap
        if snap.finished:
            return
        k += 1
