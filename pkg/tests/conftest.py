import math

import numpy as np
import pytest

from hudg.hypgeo import polar_to_hyperboloid
from hudg.reduction import LabeledGraph

_acceptance: list[tuple[str, str, float]] = []


def star_graph(leaves: int = 6) -> LabeledGraph:
    return LabeledGraph.plain(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


def star_certificate() -> np.ndarray:
    """Center at the origin, six leaves at polar (2, k * 60 degrees)."""
    leaves = polar_to_hyperboloid(np.full(6, 2.0), np.arange(6) * math.pi / 3)
    return np.vstack([[0.0, 0.0, 1.0], leaves])


@pytest.fixture
def star():
    return star_graph()


@pytest.fixture
def star_points():
    return star_certificate()


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for name, value in report.user_properties:
        if name == "criterion":
            _acceptance.append((value, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, duration in sorted(_acceptance, key=lambda r: int(r[0].split(".")[0])):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label} ({duration:.2f}s)")
