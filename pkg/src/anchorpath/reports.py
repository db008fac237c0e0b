"""CSV and SVG exporters plus atomic file output."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable

from .geometry import Point2D, bounding_box
from .mobility import Progress
from .models import ModelStats, Trajectory
from .ns2 import format_coord, format_time
from .wsn import CoverageReport, Network, Sensor


def _csv(rows: Iterable[Iterable[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _meters(v: float) -> int:
    return math.floor(v + 0.5)


def stats_rows(stats: ModelStats) -> list[tuple[str, object]]:
    """Display rows: lengths and areas to the meter, time floored to the second.

    Full-precision length and area are appended so no information is lost.
    """
    return [
        ("Area Size (m^2)", f"{_meters(stats.area_width)} x {_meters(stats.area_height)}"),
        *stats.extras,
        ("Total Trajectory Length (m)", _meters(stats.total_length)),
        ("Simulation Time (Sec)", stats.sim_time),
        ("Area Width Exact (m)", repr(float(stats.area_width))),
        ("Area Height Exact (m)", repr(float(stats.area_height))),
        ("Total Trajectory Length Exact (m)", repr(float(stats.total_length))),
    ]


def stats_csv(stats: ModelStats) -> str:
    return _csv([("Results", "Value"), *stats_rows(stats)])


def export_chart_csv(t: Trajectory) -> str:
    return _csv([("x", "y"), *((format_coord(p.x), format_coord(p.y)) for p in t.path)])


def trace_csv(snapshots: Iterable[Progress]) -> str:
    return _csv([("t", "x", "y", "fraction"),
                 *((format_time(s.elapsed), format_coord(s.position.x),
                    format_coord(s.position.y), format_coord(s.fraction)) for s in snapshots)])


def coverage_csv(report: CoverageReport, sensors: Iterable[Sensor]) -> str:
    by_id = {s.id: s for s in sensors}
    rows = [("sensor_id", "x", "y", "is_base", "beacons_heard", "localizable")]
    for r in report.per_sensor:
        s = by_id[r.sensor_id]
        rows.append((r.sensor_id, format_coord(s.position.x), format_coord(s.position.y),
                     int(s.is_base_station), r.beacons_heard, int(r.localizable)))
    return _csv(rows)


def coverage_summary(report: CoverageReport) -> str:
    k, n = report.localizable_count, report.eligible_count
    pct = f"{100 * k / n:.1f}%" if n else "n/a"
    return f"localizable: {k}/{n} ({pct})"


def export_svg(t: Trajectory, net: Network | None = None, size: float = 800.0) -> str:
    """Standalone y-up SVG of the path, sensors and anchor start."""
    pts = list(t.path)
    if net is not None:
        pts += [s.position for s in net.sensors]
    box = bounding_box(pts)
    span = max(box.width, box.height) or 1.0
    margin = 0.05 * span
    x0, y0 = box.min.x - margin, box.min.y - margin
    w, h = box.width + 2 * margin, box.height + 2 * margin
    flip = box.min.y + box.max.y
    stroke = span / 400

    def fy(p: Point2D) -> float:
        return flip - p.y

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"{format_coord(x0)} {format_coord(y0)} {format_coord(w)} {format_coord(h)}",
        "width": format_coord(size),
        "height": format_coord(size * h / w),
    })
    ET.SubElement(root, "polyline", {
        "class": "path", "fill": "none", "stroke": "black",
        "stroke-width": format_coord(stroke),
        "points": " ".join(f"{format_coord(p.x)},{format_coord(fy(p))}" for p in t.path),
    })
    r = span / 100
    if net is not None:
        for s in net.sensors:
            base = s.is_base_station
            ET.SubElement(root, "circle", {
                "class": "base-station" if base else "sensor",
                "cx": format_coord(s.position.x), "cy": format_coord(fy(s.position)),
                "r": format_coord(r), "fill": "royalblue" if base else "white",
                "stroke": "royalblue", "stroke-width": format_coord(stroke),
            })
    start = t.path.first
    ET.SubElement(root, "circle", {
        "class": "anchor-start", "cx": format_coord(start.x), "cy": format_coord(fy(start)),
        "r": format_coord(1.5 * r), "fill": "orange",
    })
    return ET.tostring(root, encoding="unicode") + "\n"


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
