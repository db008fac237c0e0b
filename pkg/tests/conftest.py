from pathlib import Path

import pytest

from anchorpath.geometry import Point2D
from anchorpath.models import ModelParams, generate_hilbert, generate_scan, generate_spiral

DATA = Path(__file__).parent / "data"


def read_data(name: str) -> str:
    return (DATA / name).read_text()


@pytest.fixture(scope="session")
def scan10():
    return generate_scan(ModelParams(nR=10, resolution=50))


@pytest.fixture(scope="session")
def hilbert4():
    return generate_hilbert(ModelParams(resolution=35, curve_level=4))


@pytest.fixture(scope="session")
def spiral10():
    return generate_spiral(ModelParams(nR=10, resolution=50, origin=Point2D(0, 0)))


_acceptance: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criterion")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1].split("[")[0]
        _acceptance.setdefault(name, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        ok = all(o == "passed" for o in _acceptance[name])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
