from fractions import Fraction as F

import mpmath
import pytest

from cfcert.constants import (
    CBRT2,
    E,
    LN2,
    PI,
    ZETA3,
    Constant,
    Kind,
    approximate,
    parse_constant,
    pi_interval,
    product,
    reciprocal,
    sqrt,
)
from cfcert.exact import PrecisionCeilingError

from conftest import inside

ORACLES = {
    "e": lambda: mpmath.e,
    "pi": lambda: mpmath.pi,
    "sqrt(2)": lambda: mpmath.sqrt(2),
    "sqrt(7)": lambda: mpmath.sqrt(7),
    "cbrt2": lambda: mpmath.cbrt(2),
    "ln2": lambda: mpmath.log(2),
    "zeta3": lambda: mpmath.zeta(3),
    "e*pi": lambda: mpmath.e * mpmath.pi,
    "1/pi": lambda: 1 / mpmath.pi,
}


@pytest.mark.parametrize("name", sorted(ORACLES))
@pytest.mark.parametrize("digits", [10, 100, 1000])
def test_against_mpmath(name, digits, mp_dps):
    mp_dps(digits + 30)
    iv = approximate(parse_constant(name), digits)
    assert iv.width < F(1, 10**digits)
    assert inside(iv, ORACLES[name]())


def test_e_ten_digits_refines_at_twenty():
    a, b = approximate(E, 10), approximate(E, 20)
    assert a.overlaps(b)
    assert str(a.lo)[:1] == "2" and float(a.mid) == pytest.approx(2.718281828459045)


def test_e_times_pi_six_digits():
    iv = approximate(product(E, PI), 6)
    # 8.539734... : every point starts with these digits
    assert F(8539734, 10**6) < iv.lo and iv.hi < F(8539735, 10**6)


def test_sqrt2_defining_property():
    iv = approximate(sqrt(2), 5)
    assert iv.lo**2 <= 2 <= iv.hi**2 and iv.width < F(1, 10**5)


def test_sqrt_perfect_square_rejected():
    with pytest.raises(ValueError, match="rational input"):
        sqrt(9)
    with pytest.raises(ValueError):
        parse_constant("sqrt(16)")


def test_precision_bounds():
    with pytest.raises(ValueError):
        approximate(E, 0)
    with pytest.raises(PrecisionCeilingError):
        approximate(E, 200, ceiling=100)


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("CFCERT_MAX_DIGITS", "50")
    with pytest.raises(PrecisionCeilingError):
        approximate(PI, 60)
    assert approximate(PI, 50).width < F(1, 10**50)


@pytest.mark.parametrize("const", [E, PI, LN2, ZETA3, CBRT2, sqrt(3)])
def test_monotone_refinement(const):
    coarse, fine = approximate(const, 20), approximate(const, 45)
    common = coarse.round_outward(80)
    assert common.contains(fine.mid) and coarse.contains(fine.mid)
    assert fine.contains(fine.mid) and fine.width < coarse.width


@pytest.mark.parametrize("digits", [1, 2, 5, 17, 50, 123, 400, 1000])
def test_pi_cross_method(digits):
    a, b = pi_interval(digits, "machin"), pi_interval(digits, "hutton")
    assert a.overlaps(b)
    assert a.width < F(1, 10**digits) and b.width < F(1, 10**digits)


def test_sqrt_endpoints_exact():
    for d in (2, 3, 5, 10, 9973):
        iv = approximate(sqrt(d), 30)
        assert iv.lo**2 <= d <= iv.hi**2


def test_names_and_kinds():
    assert parse_constant("e*pi").name == "e*pi"
    assert parse_constant("1/pi") == reciprocal(PI)
    assert parse_constant("2^(1/3)") is CBRT2
    assert Constant(Kind.SQRT, d=7).name == "sqrt(7)"
    with pytest.raises(ValueError):
        parse_constant("gamma")
