import sys

import pytest

from kassign.maxplus import NEG_INF

EXAMPLE1 = (
    (-1, 8, 4, -2),
    (10, 6, 1, 1),
    (3, -1, 5, 4),
    (-3, -2, -1, 0),
)
EXAMPLE1_OMEGAS = [0, 10, 18, 23, 23]
EXAMPLE1_POLY = "x^4 (+) 10x^3 (+) 18x^2 (+) 23x (+) 23"
EXAMPLE1_TEXT = "# worked example\nmax 4 4\n-1 8 4 -2\n10 6 1 1\n3 -1 5 4\n-3 -2 -1 0\n"
N = NEG_INF


@pytest.fixture
def example1():
    return EXAMPLE1


@pytest.fixture
def example1_file(tmp_path):
    path = tmp_path / "example1.txt"
    path.write_text(EXAMPLE1_TEXT)
    return path


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
