import xml.etree.ElementTree as ET

from anchorpath.geometry import Point2D, Polyline
from anchorpath.models import ModelParams, Trajectory, compute_stats, generate_hilbert
from anchorpath.reports import (export_chart_csv, export_svg, stats_csv, stats_rows,
                                write_atomic)
from anchorpath.wsn import NetworkConfig, deploy

SVG = "{http://www.w3.org/2000/svg}"


def test_chart_hilbert_level1():
    t = generate_hilbert(ModelParams(resolution=35, curve_level=1))
    assert export_chart_csv(t) == "x,y\n1.0,1.0\n1.0,36.0\n36.0,36.0\n36.0,1.0\n"


def test_chart_rows(scan10):
    assert len(export_chart_csv(scan10).splitlines()) == 1 + 22
    t = Trajectory("manual", ModelParams(), Polyline([(0, 0), (3, 4)]))
    assert len(export_chart_csv(t).splitlines()) == 3


def test_stats_rows_scan(scan10):
    rows = dict(stats_rows(compute_stats(scan10, 10)))
    assert rows["Area Size (m^2)"] == "500 x 500"
    assert rows["Total Trajectory Length (m)"] == 6000
    assert rows["Simulation Time (Sec)"] == 600


def test_stats_csv_quotes_text(hilbert4):
    text = stats_csv(compute_stats(hilbert4, 10))
    assert text.startswith("Results,Value\n")
    assert "Vertex-Count Length (m),8960\n" in text
    assert "8960 m" in text


def test_svg_two_points():
    t = Trajectory("manual", ModelParams(), Polyline([(0, 0), (10, 5)]))
    root = ET.fromstring(export_svg(t))
    lines = root.findall(f"{SVG}polyline")
    assert len(lines) == 1
    assert len(lines[0].get("points").split()) == 2


def test_svg_network(scan10):
    net = deploy(NetworkConfig(total_nodes=10, seed=42), scan10.path.first)
    root = ET.fromstring(export_svg(scan10, net))
    circles = root.findall(f"{SVG}circle")
    sensors = [c for c in circles if c.get("class") in ("sensor", "base-station")]
    assert len(sensors) == 9
    assert sum(c.get("class") == "base-station" for c in sensors) == 5
    assert sum(c.get("class") == "anchor-start" for c in circles) == 1


def test_svg_flips_y_and_fits_box():
    t = Trajectory("manual", ModelParams(), Polyline([(0, 0), (0, 100), (100, 100)]))
    root = ET.fromstring(export_svg(t))
    x0, y0, w, h = map(float, root.get("viewBox").split())
    assert (x0, y0, w, h) == (-5, -5, 110, 110)
    pts = root.find(f"{SVG}polyline").get("points").split()
    # first waypoint (y=0) is drawn at the bottom of the image
    assert pts[0] == "0.0,100.0" and pts[1] == "0.0,0.0"
    start = [c for c in root.findall(f"{SVG}circle") if c.get("class") == "anchor-start"][0]
    assert (start.get("cx"), start.get("cy")) == ("0.0", "100.0")


def test_write_atomic(tmp_path):
    p = tmp_path / "a.txt"
    write_atomic(p, "one\n")
    write_atomic(p, "two\n")
    assert p.read_text() == "two\n"
    assert [f.name for f in tmp_path.iterdir()] == ["a.txt"]
