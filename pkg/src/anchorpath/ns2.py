"""NS-2 movement scenario (``setdest``) and node topology files.

The writer is strict and canonical; the parser accepts integer or decimal
numbers and arbitrary whitespace between tokens.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal

from .geometry import Point2D
from .models import Trajectory


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario/topology text."""

    def __init__(self, message: str, lineno: int | None = None, line: str | None = None):
        self.lineno = lineno
        self.line = line
        if lineno is not None:
            message = f"line {lineno}: {message}"
            if line is not None:
                message += f": {line.strip()!r}"
        super().__init__(message)


@dataclass(frozen=True)
class ScenarioCommand:
    time: float
    node_id: int
    dest: Point2D
    speed: float

    def __post_init__(self) -> None:
        if not self.time >= 0:
            raise ValueError(f"negative time: {self.time}")
        if self.node_id < 0:
            raise ValueError(f"negative node id: {self.node_id}")
        if not self.speed > 0:
            raise ValueError(f"invalid speed: {self.speed}")


@dataclass(frozen=True)
class ScenarioFile:
    commands: tuple[ScenarioCommand, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "commands", tuple(self.commands))
        for a, b in zip(self.commands, self.commands[1:]):
            if b.time < a.time:
                raise ValueError("non-monotonic time")
        if len({c.node_id for c in self.commands}) > 1:
            raise ValueError("multiple mobile nodes")

    @property
    def node_id(self) -> int | None:
        return self.commands[0].node_id if self.commands else None


@dataclass(frozen=True)
class TopologyEntry:
    node_id: int
    position: Point2D
    is_base_station: bool = False


@dataclass(frozen=True)
class TopologyFile:
    entries: tuple[TopologyEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for e in self.entries:
            if e.node_id in seen:
                raise ValueError(f"duplicate node id {e.node_id}")
            seen.add(e.node_id)

    def get(self, node_id: int) -> TopologyEntry | None:
        return next((e for e in self.entries if e.node_id == node_id), None)


def _shortest(x: float) -> str:
    # repr is the shortest round-tripping form; Decimal removes exponents
    s = format(Decimal(repr(x)), "f")
    return "0" if s in ("-0", "-0.0") else s


def format_time(t: float) -> str:
    """``0``, ``50``, ``8.3``: shortest round-trip, no trailing ``.0``."""
    s = _shortest(float(t))
    return s[:-2] if s.endswith(".0") else s


def format_coord(v: float) -> str:
    """``1.0``, ``276.078323503122``: shortest round-trip, at least one decimal."""
    s = _shortest(float(v))
    if s == "0":
        return "0.0"
    return s if "." in s else s + ".0"


def build_commands(t: Trajectory, speed: float, anchor_id: int) -> ScenarioFile:
    pts = t.path.points
    if len(pts) < 2:
        raise ValueError("trajectory has no motion")
    if not speed > 0:
        raise ValueError(f"invalid speed: {speed}")
    cum = t.path.cumulative_lengths()
    return ScenarioFile(tuple(
        ScenarioCommand(cum[k] / speed, anchor_id, pts[k + 1], float(speed))
        for k in range(len(pts) - 1)))


def render_command(c: ScenarioCommand) -> str:
    return (f'$ns_ at {format_time(c.time)} "$node_({c.node_id}) setdest '
            f'{format_coord(c.dest.x)} {format_coord(c.dest.y)} {format_coord(c.speed)}"')


def render_scenario(f: ScenarioFile) -> str:
    return "".join(render_command(c) + "\n" for c in f.commands)


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_SETDEST = re.compile(
    rf'^\s*\$ns_\s+at\s+(?P<t>{_NUM})\s+"\s*\$node_\(\s*(?P<id>\d+)\s*\)\s+setdest\s+'
    rf'(?P<x>{_NUM})\s+(?P<y>{_NUM})\s+(?P<s>{_NUM})\s*"\s*$')


def parse_command(line: str, lineno: int) -> ScenarioCommand:
    m = _SETDEST.match(line)
    if not m:
        raise ScenarioError("malformed setdest command", lineno, line)
    try:
        return ScenarioCommand(float(m["t"]), int(m["id"]),
                               Point2D(float(m["x"]), float(m["y"])), float(m["s"]))
    except ValueError as exc:
        raise ScenarioError(str(exc), lineno, line) from None


def iter_scenario_lines(text: str):
    """Yield ``(lineno, line)`` for every non-blank line."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            yield lineno, line


def parse_scenario(text: str) -> ScenarioFile:
    commands: list[ScenarioCommand] = []
    for lineno, line in iter_scenario_lines(text):
        cmd = parse_command(line, lineno)
        if commands and cmd.time < commands[-1].time:
            raise ScenarioError("non-monotonic time", lineno, line)
        if commands and cmd.node_id != commands[0].node_id:
            raise ScenarioError("multiple mobile nodes", lineno, line)
        commands.append(cmd)
    return ScenarioFile(tuple(commands))


def render_topology(t: TopologyFile) -> str:
    lines = []
    for e in t.entries:
        if e.is_base_station:
            lines.append(f"# base_station {e.node_id}")
        for axis, v in (("X_", e.position.x), ("Y_", e.position.y), ("Z_", 0.0)):
            lines.append(f"$node_({e.node_id}) set {axis} {format_coord(v)}")
    return "".join(line + "\n" for line in lines)


_SET = re.compile(rf"^\s*\$node_\(\s*(?P<id>\d+)\s*\)\s+set\s+(?P<axis>[XYZ])_\s+(?P<v>{_NUM})\s*$")
_BASE = re.compile(r"^\s*#\s*base_station\s+(?P<id>\d+)\s*$")


def parse_topology(text: str) -> TopologyFile:
    coords: dict[int, dict[str, float]] = {}
    first_line: dict[int, int] = {}
    base: set[int] = set()
    done: set[int] = set()
    order: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if m := _BASE.match(line):
            base.add(int(m["id"]))
            continue
        if line.lstrip().startswith("#"):
            continue
        m = _SET.match(line)
        if not m:
            raise ScenarioError("malformed topology line", lineno, line)
        nid, axis, v = int(m["id"]), m["axis"], float(m["v"])
        if nid in done or axis in coords.get(nid, {}):
            raise ScenarioError(f"duplicate node id {nid}", lineno, line)
        if not math.isfinite(v):
            raise ScenarioError("non-finite coordinate", lineno, line)
        if nid not in coords:
            coords[nid] = {}
            first_line[nid] = lineno
            order.append(nid)
        coords[nid][axis] = v
        if len(coords[nid]) == 3:
            done.add(nid)
    for nid in order:
        missing = {"X", "Y", "Z"} - coords[nid].keys()
        if missing:
            raise ScenarioError(f"node {nid} missing {', '.join(sorted(missing))}_",
                                first_line[nid])
    for nid in base - set(order):
        raise ScenarioError(f"base_station marker for unknown node {nid}")
    return TopologyFile(tuple(
        TopologyEntry(nid, Point2D(coords[nid]["X"], coords[nid]["Y"]), nid in base)
        for nid in order))
