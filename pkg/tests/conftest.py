import numpy as np
import pytest

from evds.geometry import Point2D, UnitDiskGraph, build_udg

# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def graph(coords) -> UnitDiskGraph:
    return build_udg(Point2D(i, float(x), float(y)) for i, (x, y) in enumerate(coords))


def line_graph(k, step=0.9):
    """k+1 collinear points spaced ``step`` apart: a path with k edges."""
    return graph([(i * step, 0.0) for i in range(k + 1)])


def ring(k, side=0.99):
    """Cycle on k points with consecutive distance ``side``."""
    radius = side / (2 * np.sin(np.pi / k))
    ang = 2 * np.pi * np.arange(k) / k
    return graph(np.column_stack([radius * np.cos(ang), radius * np.sin(ang)]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
