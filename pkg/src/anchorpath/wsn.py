"""Sensor field, anchor energy bookkeeping and beacon coverage analysis.

Random sensor placement uses :class:`random.Random` (MT19937) seeded with
``NetworkConfig.seed``; each random sensor draws ``x`` then ``y`` via
``uniform(0, width)`` and ``uniform(0, height)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from itertools import combinations

from .geometry import Point2D, collinear
from .mobility import BeaconEvent

BASE_STATION_COUNT = 5


@dataclass(frozen=True)
class NetworkConfig:
    width: float = 550.0
    height: float = 550.0
    total_nodes: int = 10
    comm_range: float = 75.0
    beacon_interval: float = 5.0
    speed: float = 10.0
    seed: int = 0
    initial_energy: float = 100.0
    beacon_cost: float = 0.0

    def __post_init__(self) -> None:
        if self.total_nodes < 2:
            raise ValueError(f"total_nodes must be at least 2, got {self.total_nodes}")
        for name in ("width", "height", "comm_range", "beacon_interval", "speed"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.initial_energy < 0 or self.beacon_cost < 0:
            raise ValueError("energy values must be non-negative")


@dataclass(frozen=True)
class Anchor:
    id: int
    position: Point2D
    radius: float
    initial_energy: float
    remaining_energy: float

    def __post_init__(self) -> None:
        if not 0 <= self.remaining_energy <= self.initial_energy:
            raise ValueError("remaining energy outside [0, initial]")


@dataclass(frozen=True)
class Sensor:
    id: int
    position: Point2D
    is_base_station: bool = False


@dataclass(frozen=True)
class Network:
    config: NetworkConfig
    anchor: Anchor
    sensors: tuple[Sensor, ...]


@dataclass(frozen=True)
class SensorCoverage:
    sensor_id: int
    beacons_heard: int
    localizable: bool


@dataclass(frozen=True)
class CoverageReport:
    per_sensor: tuple[SensorCoverage, ...]
    localizable_fraction: float
    total_beacons: int
    localizable_count: int
    eligible_count: int


def base_station_positions(width: float, height: float) -> list[Point2D]:
    return [Point2D(0.0, 0.0), Point2D(0.0, height), Point2D(width, 0.0),
            Point2D(width, height), Point2D(width / 2, height / 2)]


def deploy(cfg: NetworkConfig, start: Point2D) -> Network:
    """Anchor at ``start`` (id ``total_nodes - 1``) plus base stations and random sensors."""
    n_sensors = cfg.total_nodes - 1
    fixed = base_station_positions(cfg.width, cfg.height)[:n_sensors]
    sensors = [Sensor(i, p, True) for i, p in enumerate(fixed)]
    rng = random.Random(cfg.seed)
    for i in range(len(fixed), n_sensors):
        x = rng.uniform(0.0, cfg.width)
        y = rng.uniform(0.0, cfg.height)
        sensors.append(Sensor(i, Point2D(x, y)))
    anchor = Anchor(cfg.total_nodes - 1, start, cfg.comm_range,
                    cfg.initial_energy, cfg.initial_energy)
    return Network(cfg, anchor, tuple(sensors))


def beacons_heard(s: Sensor, events: list[BeaconEvent], comm_range: float) -> list[BeaconEvent]:
    if not comm_range > 0:
        raise ValueError(f"invalid range: {comm_range}")
    return [e for e in events if s.position.distance_to(e.position) <= comm_range]


def has_noncollinear_triple(points: list[Point2D], eps: float = 1e-6) -> bool:
    return any(not collinear(a, b, c, eps) for a, b, c in combinations(points, 3))


def coverage_report(sensors, events: list[BeaconEvent], comm_range: float,
                    eps: float = 1e-6) -> CoverageReport:
    """Beacons heard and localizability for every sensor.

    Base stations are listed but do not count towards the localizable fraction.
    ``sensors`` may be a :class:`Network` or any iterable of :class:`Sensor`.
    """
    if isinstance(sensors, Network):
        sensors = sensors.sensors
    rows = []
    hits = eligible = 0
    for s in sensors:
        heard = beacons_heard(s, events, comm_range)
        ok = has_noncollinear_triple([e.position for e in heard], eps)
        rows.append(SensorCoverage(s.id, len(heard), ok))
        if not s.is_base_station:
            eligible += 1
            hits += ok
    frac = hits / eligible if eligible else 0.0
    return CoverageReport(tuple(rows), frac, len(events), hits, eligible)


def apply_beacon_energy(a: Anchor, beacons_sent: int,
                        cost_per_beacon: float) -> tuple[Anchor, int | None]:
    """Charge ``cost_per_beacon`` per beacon.

    Returns the updated anchor and the number of beacons after which the
    battery was empty, or None if it lasted the whole schedule.
    """
    if cost_per_beacon < 0:
        raise ValueError("beacon cost must be non-negative")
    spent = beacons_sent * cost_per_beacon
    remaining = max(0.0, a.initial_energy - spent)
    depleted_at = None
    if cost_per_beacon > 0 and spent >= a.initial_energy:
        depleted_at = math.ceil(a.initial_energy / cost_per_beacon)
    return replace(a, remaining_energy=remaining), depleted_at
