import pytest

from beecolony.benchmarks import ProblemSpec
from beecolony.core import Bounds

ACCEPTANCE_LINES = []


class ScriptedRng:
    """Stand-in for RngStream that replays a fixed list of U[0,1) values."""

    def __init__(self, values):
        self.values = list(values)
        self.calls = 0

    def _next(self):
        self.calls += 1
        return self.values.pop(0)

    def uniform(self, lo=0.0, hi=1.0):
        return lo + (hi - lo) * self._next()

    def random(self, size=None):
        if size is None:
            return self._next()
        import numpy as np

        return np.array([self._next() for _ in range(size)])

    def integers(self, n):
        return int(self._next() * n)


def _sphere(x):
    return float(sum(v * v for v in x))


@pytest.fixture
def sphere2():
    return ProblemSpec("sphere", "test", 2, Bounds([-5.0, -5.0], [5.0, 5.0]), _sphere, 0.0, 1e-8)


@pytest.fixture
def acceptance_report():
    def report(number, description, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
