"""Command-line pipeline: generate -> emit -> replay -> analyze.

Exit status: 0 success, 1 validation/scenario failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import models, ns2, reports
from .geometry import Point2D
from .mobility import beacon_schedule, from_scenario, step_iterator, timing_violations
from .ns2 import ScenarioError
from .wsn import NetworkConfig, Sensor, coverage_report, deploy

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str
    params: models.ModelParams
    speed: float
    total_nodes: int
    comm_range: float
    beacon_interval: float
    seed: int
    output_dir: Path
    width: float = 550.0
    height: float = 550.0
    anchor_id: int | None = None


# ModelParams error prefix -> CLI flag
_PARAM_FLAGS = {
    "invalid segment count": "--segments",
    "invalid resolution": "--resolution",
    "invalid curve level": "--level",
    "invalid spiral step": "--spiral-step",
}


def _run_config(args: argparse.Namespace) -> RunConfig:
    try:
        params = models.ModelParams(nR=args.segments, resolution=args.resolution,
                                    curve_level=args.level, origin=Point2D(*args.origin),
                                    spiral_step=args.spiral_step)
    except ValueError as exc:
        msg = str(exc)
        flag = next((f for p, f in _PARAM_FLAGS.items() if msg.startswith(p)), "--origin")
        raise UsageError(f"{flag}: {msg}") from None
    checks = [
        ("--speed", args.speed > 0, "invalid speed"),
        ("--nodes", args.nodes >= 2, "need at least 2 nodes (sensors + anchor)"),
        ("--range", args.range > 0, "invalid communication range"),
        ("--interval", args.interval > 0, "invalid beacon interval"),
        ("--seed", args.seed >= 0, "seed must be non-negative"),
        ("--width", args.width > 0, "invalid width"),
        ("--height", args.height > 0, "invalid height"),
    ]
    for flag, ok, msg in checks:
        if not ok:
            raise UsageError(f"{flag}: {msg}")
    if args.anchor_id is not None and args.anchor_id < 0:
        raise UsageError("--anchor-id: must be non-negative")
    try:
        models.registry_get(args.model)
    except models.UnknownModelError as exc:
        raise UsageError(f"--model: {exc}") from None
    return RunConfig(args.model, params, args.speed, args.nodes, args.range, args.interval,
                     args.seed, Path(args.out), args.width, args.height, args.anchor_id)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _output_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"--out: cannot create {path}: {exc.strerror}") from None
    return path


def _write(path: Path, text: str) -> None:
    try:
        reports.write_atomic(path, text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    print(f"wrote {path}", file=sys.stderr)


def cmd_generate(cfg: RunConfig) -> int:
    traj = models.registry_get(cfg.model)(cfg.params)
    stats = models.compute_stats(traj, cfg.speed)
    net_cfg = NetworkConfig(width=cfg.width, height=cfg.height, total_nodes=cfg.total_nodes,
                            comm_range=cfg.comm_range, beacon_interval=cfg.beacon_interval,
                            speed=cfg.speed, seed=cfg.seed)
    net = deploy(net_cfg, traj.path.first)
    anchor_id = net.anchor.id if cfg.anchor_id is None else cfg.anchor_id
    if any(s.id == anchor_id for s in net.sensors):
        raise UsageError(f"--anchor-id: {anchor_id} collides with a sensor id")
    scenario = ns2.build_commands(traj, cfg.speed, anchor_id)
    topo = ns2.TopologyFile(
        tuple(ns2.TopologyEntry(s.id, s.position, s.is_base_station) for s in net.sensors)
        + (ns2.TopologyEntry(anchor_id, traj.path.first),))

    out = _output_dir(cfg.output_dir)
    block = reports.stats_csv(stats)
    _write(out / f"{cfg.model}_scenario.txt", ns2.render_scenario(scenario))
    _write(out / "topology.txt", ns2.render_topology(topo))
    _write(out / "stats.csv", block)
    _write(out / "chart.csv", reports.export_chart_csv(traj))
    _write(out / "trajectory.svg", reports.export_svg(traj, net))
    sys.stdout.write(block)
    return EXIT_OK


def _start_point(args: argparse.Namespace, node_id: int | None) -> Point2D | None:
    if args.start is not None:
        return Point2D(*args.start)
    if getattr(args, "topology", None):
        entry = ns2.parse_topology(_read(args.topology)).get(node_id)
        if entry is None:
            raise ScenarioError(f"topology has no entry for anchor node {node_id}")
        return entry.position
    return None


def cmd_replay(args: argparse.Namespace) -> int:
    if args.tick <= 0:
        raise UsageError("--tick: must be positive")
    scenario = ns2.parse_scenario(_read(args.scenario))
    start = _start_point(args, scenario.node_id)
    if start is None:
        raise UsageError("--start or --topology is required to place the anchor")
    tp = from_scenario(scenario, start)
    out = _output_dir(Path(args.out))
    _write(out / "trace.csv", reports.trace_csv(step_iterator(tp, args.tick)))
    print(f"total simulated time: {ns2.format_time(tp.total_time)} s")
    return EXIT_OK


def cmd_coverage(args: argparse.Namespace) -> int:
    if args.range <= 0:
        raise UsageError("--range: must be positive")
    if args.interval <= 0:
        raise UsageError("--interval: must be positive")
    scenario = ns2.parse_scenario(_read(args.scenario))
    topo = ns2.parse_topology(_read(args.topology))
    anchor = topo.get(scenario.node_id)
    if anchor is None:
        raise ScenarioError(f"topology has no entry for anchor node {scenario.node_id}")
    tp = from_scenario(scenario, anchor.position)
    events = beacon_schedule(tp, args.interval)
    sensors = [Sensor(e.node_id, e.position, e.is_base_station)
               for e in topo.entries if e.node_id != anchor.node_id]
    report = coverage_report(sensors, events, args.range, args.eps)
    out = _output_dir(Path(args.out))
    _write(out / "coverage.csv", reports.coverage_csv(report, sensors))
    print(reports.coverage_summary(report))
    return EXIT_OK


def validate_text(text: str, start: Point2D | None = None) -> list[str]:
    """All problems in a scenario text, each prefixed with its line number."""
    problems = []
    parsed: list[tuple[int, ns2.ScenarioCommand]] = []
    for lineno, line in ns2.iter_scenario_lines(text):
        try:
            parsed.append((lineno, ns2.parse_command(line, lineno)))
        except ScenarioError as exc:
            problems.append(str(exc))
    for (_, a), (lineno, b) in zip(parsed, parsed[1:]):
        if b.time < a.time:
            problems.append(f"line {lineno}: non-monotonic time ({ns2.format_time(b.time)} "
                            f"after {ns2.format_time(a.time)})")
    if len({c.node_id for _, c in parsed}) > 1:
        ids = sorted({c.node_id for _, c in parsed})
        problems.append(f"multiple mobile nodes: {ids}")
    if parsed and not problems:
        f = ns2.ScenarioFile(tuple(c for _, c in parsed))
        for v in timing_violations(f, start):
            lineno = parsed[v.index][0]
            prev = f.commands[v.index - 1]
            problems.append(
                f"line {lineno}: scenario timing infeasible: expected t={v.expected:g} s "
                f"(leg needs {v.expected - prev.time:g} s), found t={v.actual:g} s "
                f"(allows {v.actual - prev.time:g} s)")
    if not parsed and not problems:
        problems.append("no setdest commands")
    return problems


def cmd_validate(args: argparse.Namespace) -> int:
    text = _read(args.scenario)
    start = None
    if args.start is not None or args.topology:
        try:
            node_id = ns2.parse_scenario(text).node_id
        except ScenarioError:
            node_id = None  # syntax problems are reported below
        start = _start_point(args, node_id)
    problems = validate_text(text, start)
    if problems:
        for p in problems:
            print(p)
        print(f"INVALID: {len(problems)} problem(s)")
        return EXIT_INVALID
    f = ns2.parse_scenario(text)
    last = f.commands[-1]
    prev = start if len(f.commands) == 1 else f.commands[-2].dest
    total = last.time + (prev.distance_to(last.dest) / last.speed if prev else 0.0)
    note = "" if prev else " (final leg unknown without --start)"
    if f.commands[0].time > 0:
        note += f"; first departure at {ns2.format_time(f.commands[0].time)} s"
    print(f"OK: {len(f.commands)} commands, {ns2.format_time(total)} s total{note}")
    return EXIT_OK


def cmd_models(args: argparse.Namespace) -> int:
    for name in models.registry_list():
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anchorpath",
                                description="Mobile-anchor trajectory generator and replayer.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a trajectory and its scenario files")
    g.add_argument("--model", default="scan", help="path model (see `models`)")
    g.add_argument("--segments", type=int, default=10, help="number of horizontal segments")
    g.add_argument("--resolution", type=float, default=50.0, help="trajectory resolution (m)")
    g.add_argument("--level", type=int, default=1, help="Hilbert curve level")
    g.add_argument("--speed", type=float, default=10.0, help="anchor mobility speed (m/s)")
    g.add_argument("--nodes", type=int, default=10, help="total nodes, sensors plus anchor")
    g.add_argument("--range", type=float, default=75.0, help="communication range (m)")
    g.add_argument("--interval", type=float, default=5.0, help="beacon interval (s)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--origin", type=float, nargs=2, default=(1.0, 1.0), metavar=("X", "Y"))
    g.add_argument("--spiral-step", type=float, default=0.25, help="spiral sample spacing (m)")
    g.add_argument("--width", type=float, default=550.0, help="deployment field width (m)")
    g.add_argument("--height", type=float, default=550.0, help="deployment field height (m)")
    g.add_argument("--anchor-id", type=int, default=None, help="default: nodes - 1")
    g.add_argument("--out", default=".", help="output directory")

    r = sub.add_parser("replay", help="replay a scenario file at a fixed tick")
    r.add_argument("scenario")
    r.add_argument("--start", type=float, nargs=2, metavar=("X", "Y"))
    r.add_argument("--topology", help="take the anchor start from this topology file")
    r.add_argument("--tick", type=float, default=1.0)
    r.add_argument("--out", default=".")

    c = sub.add_parser("coverage", help="beacon coverage of the sensors in a topology")
    c.add_argument("scenario")
    c.add_argument("topology")
    c.add_argument("--range", type=float, default=75.0)
    c.add_argument("--interval", type=float, default=5.0)
    c.add_argument("--eps", type=float, default=1e-6, help="collinearity area threshold (m^2)")
    c.add_argument("--out", default=".")

    v = sub.add_parser("validate", help="check syntax, ordering and timing of a scenario")
    v.add_argument("scenario")
    v.add_argument("--start", type=float, nargs=2, metavar=("X", "Y"))
    v.add_argument("--topology")

    sub.add_parser("models", help="list available path models")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(_run_config(args))
        handler = {"replay": cmd_replay, "coverage": cmd_coverage,
                   "validate": cmd_validate, "models": cmd_models}[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
