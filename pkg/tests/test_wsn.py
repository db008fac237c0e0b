import random

import pytest
from hypothesis import given, strategies as st

from anchorpath.geometry import Point2D
from anchorpath.mobility import BeaconEvent, beacon_schedule, build_timed_path
from anchorpath.wsn import (Anchor, NetworkConfig, Sensor, apply_beacon_energy, beacons_heard,
                            coverage_report, deploy)

from oracles import brute_force_coverage


def ev(*pts):
    return [BeaconEvent(float(i), Point2D(*p), i) for i, p in enumerate(pts)]


def test_deploy_ten_nodes():
    net = deploy(NetworkConfig(total_nodes=10, seed=42), Point2D(1, 1))
    assert net.anchor.id == 9
    assert net.anchor.position == Point2D(1, 1)
    assert [s.id for s in net.sensors] == list(range(9))
    assert [s.is_base_station for s in net.sensors] == [True] * 5 + [False] * 4
    assert [s.position for s in net.sensors[:5]] == [
        Point2D(0, 0), Point2D(0, 550), Point2D(550, 0), Point2D(550, 550), Point2D(275, 275)]
    assert all(0 <= s.position.x <= 550 and 0 <= s.position.y <= 550 for s in net.sensors)


def test_deploy_documented_generator():
    net = deploy(NetworkConfig(total_nodes=8, seed=7, width=300, height=200), Point2D(0, 0))
    rng = random.Random(7)
    expected = []
    for _ in range(2):
        x = rng.uniform(0, 300)
        expected.append(Point2D(x, rng.uniform(0, 200)))
    assert [s.position for s in net.sensors[5:]] == expected


def test_deploy_six_nodes():
    net = deploy(NetworkConfig(total_nodes=6), Point2D(0, 0))
    assert len(net.sensors) == 5 and all(s.is_base_station for s in net.sensors)


def test_deploy_few_nodes():
    net = deploy(NetworkConfig(total_nodes=3), Point2D(0, 0))
    assert [s.position for s in net.sensors] == [Point2D(0, 0), Point2D(0, 550)]


def test_deploy_deterministic():
    cfg = NetworkConfig(total_nodes=30, seed=123)
    assert deploy(cfg, Point2D(1, 1)) == deploy(cfg, Point2D(1, 1))


def test_config_validation():
    with pytest.raises(ValueError):
        NetworkConfig(total_nodes=1)
    with pytest.raises(ValueError):
        NetworkConfig(comm_range=0)


def test_beacons_heard():
    s = Sensor(0, Point2D(0, 0))
    assert beacons_heard(s, ev((0, 50), (0, 200)), 100) == ev((0, 50), (0, 200))[:1]
    assert len(beacons_heard(s, ev((0, 0)), 0.0001)) == 1
    assert beacons_heard(s, [], 10) == []


@given(st.lists(st.tuples(st.integers(-100, 100), st.integers(-100, 100)), max_size=30),
       st.floats(0.1, 100), st.floats(0.1, 100))
def test_beacons_heard_monotone(pts, r1, r2):
    s = Sensor(0, Point2D(3, -4))
    events = ev(*pts)
    small, big = sorted((r1, r2))
    a, b = beacons_heard(s, events, small), beacons_heard(s, events, big)
    assert set(a) <= set(b)
    assert b == [e for e in events if e in set(b)]


def test_localizable_cases():
    sensors = [Sensor(0, Point2D(10, 0))]
    assert not coverage_report(sensors, ev((0, 0), (10, 0), (20, 0)), 50).per_sensor[0].localizable
    assert coverage_report(sensors, ev((0, 0), (10, 0), (10, 10)), 50).per_sensor[0].localizable


def test_base_stations_excluded():
    sensors = [Sensor(0, Point2D(0, 0), True), Sensor(1, Point2D(5, 5))]
    rep = coverage_report(sensors, ev((0, 0), (10, 0), (10, 10)), 1)
    assert rep.eligible_count == 1 and rep.localizable_fraction == 0.0
    assert rep.per_sensor[0].beacons_heard == 1


def _scan_instance(scan10, seed=42, interval=5.0):
    net = deploy(NetworkConfig(total_nodes=10, seed=seed), scan10.path.first)
    events = beacon_schedule(build_timed_path(scan10, 10), interval)
    return net, events


def test_coverage_matches_oracle(scan10):
    net, events = _scan_instance(scan10)
    rep = coverage_report(net, events, 75)
    oracle = brute_force_coverage(net.sensors, events, 75)
    assert {r.sensor_id: (r.beacons_heard, r.localizable) for r in rep.per_sensor} == oracle
    assert rep.total_beacons == 121
    for r in rep.per_sensor:
        assert not r.localizable or r.beacons_heard >= 3


def test_coverage_monotone_sweep(scan10):
    net, _ = _scan_instance(scan10, seed=5)
    tp = build_timed_path(scan10, 10)
    # nested beacon grids: each interval divides the next
    intervals = [2.5, 5, 10, 20, 40]
    ranges = [20, 40, 60, 80, 120, 200]
    table = {(i, r): coverage_report(net, beacon_schedule(tp, i), r).localizable_fraction
             for i in intervals for r in ranges}
    for i in intervals:
        col = [table[i, r] for r in ranges]
        assert col == sorted(col)
    for r in ranges:
        row = [table[i, r] for i in intervals]
        assert row == sorted(row, reverse=True)


@pytest.mark.parametrize("initial, count, cost, remaining, depleted", [
    (100, 121, 0.5, 39.5, None),
    (100, 121, 0.0, 100, None),
    (1, 121, 0.5, 0.0, 2),
])
def test_energy(initial, count, cost, remaining, depleted):
    a = Anchor(9, Point2D(1, 1), 75, initial, initial)
    b, when = apply_beacon_energy(a, count, cost)
    assert b.remaining_energy == remaining
    assert when == depleted


@given(st.floats(0, 1000), st.integers(0, 1000), st.floats(0, 10))
def test_energy_never_negative(initial, count, cost):
    a = Anchor(0, Point2D(0, 0), 1, initial, initial)
    b, _ = apply_beacon_energy(a, count, cost)
    assert 0 <= b.remaining_energy <= initial
    if count * cost <= initial:
        assert b.remaining_energy == pytest.approx(initial - count * cost)
