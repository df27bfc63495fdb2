from fractions import Fraction

import mpmath
import pytest

ACCEPTANCE_LINES: list[str] = []


def mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def inside(iv, value) -> bool:
    """Whether an mpmath value lies in a RationalInterval (at the current mpmath precision)."""
    return mp(iv.lo) <= value <= mp(iv.hi)


@pytest.fixture
def mp_dps():
    saved = mpmath.mp.dps

    def set_dps(d):
        mpmath.mp.dps = d

    yield set_dps
    mpmath.mp.dps = saved


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
