from fractions import Fraction as F

import pytest

STANDARD = (0.3, -0.2, 0.5)
ORTHO = (0.6, -0.15, 0.5)
RATIONAL_POINTS = [(F(1, 3), F(-1, 4), F(1, 5)),
                   (F(2, 5), F(-1, 7), F(1, 3)),
                   (F(1, 2), F(-1, 3), F(1, 4))]


@pytest.fixture
def std():
    return STANDARD


@pytest.fixture
def ortho():
    return ORTHO


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
