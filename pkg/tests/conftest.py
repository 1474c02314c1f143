import math

import pytest

from bornolib import FiniteTopology, FiniteUniverse, PointCloud, SizeTable

# acceptance criteria record their outcome here; printed at session end
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def square():
    return PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]])


@pytest.fixture
def triangle():
    return PointCloud([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])


@pytest.fixture
def sierpinski():
    """Sierpinski space on {a, b} with the table ∅:0, {a}:1, {b}:1, E:2."""
    t = FiniteTopology.sierpinski()
    s = SizeTable(t.universe, [0, 1, 1, 2])
    return t, s


@pytest.fixture
def u3():
    return FiniteUniverse.of_size(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")
