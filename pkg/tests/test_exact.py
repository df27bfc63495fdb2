import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfcert.constants import E, PI, approximate
from cfcert.exact import (
    Op,
    RationalInterval,
    certified_decimal,
    certified_floor,
    fmt_sci,
    fmt_sci_bound,
    interval_arith,
    iroot,
    rational_power_bracket,
    root_bracket,
)

from conftest import inside


def test_mul_positive():
    assert interval_arith(RationalInterval(1, 2), RationalInterval(3, 4), "mul") == RationalInterval(3, 8)


def test_mul_mixed_signs():
    a = RationalInterval(-1, 1)
    assert interval_arith(a, a, Op.MUL) == RationalInterval(-1, 1)


def test_add_sub():
    a, b = RationalInterval(F(1, 3), F(1, 2)), RationalInterval(-2, F(1, 7))
    assert interval_arith(a, b, "add") == RationalInterval(F(1, 3) - 2, F(1, 2) + F(1, 7))
    assert interval_arith(a, b, "sub") == RationalInterval(F(1, 3) - F(1, 7), F(5, 2))


def test_e_times_pi(mp_dps):
    mp_dps(80)
    import mpmath

    iv = interval_arith(approximate(E, 50), approximate(PI, 50), "mul")
    assert iv.width < F(1, 10**48)
    assert inside(iv, mpmath.e * mpmath.pi)
    assert certified_decimal(iv, 7) == "8.539734e+00"


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        RationalInterval(2, 1)


def test_reciprocal_needs_zero_free():
    with pytest.raises(ZeroDivisionError):
        RationalInterval(-1, 1).reciprocal()
    assert RationalInterval(2, 4).reciprocal() == RationalInterval(F(1, 4), F(1, 2))


@pytest.mark.parametrize(
    "lo, hi, expected",
    [(F(5, 2), F(8, 3), 2), (F(29, 10), F(31, 10), None), (F(-7, 3), F(-9, 4), -3), (F(3), F(3), 3)],
)
def test_certified_floor(lo, hi, expected):
    assert certified_floor(RationalInterval(lo, hi)) == expected


def test_canonical_form():
    x = F(6, -4) * F(10, 5)
    assert (x.numerator, x.denominator) == (-3, 1)
    iv = RationalInterval(F(2, 4), F(9, 6)) * RationalInterval(F(-4, 8), 1)
    for v in (iv.lo, iv.hi):
        assert v.denominator > 0 and math.gcd(v.numerator, v.denominator) == 1


def _random_interval(rng):
    a = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    b = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    return RationalInterval(min(a, b), max(a, b))


def _sample(rng, iv):
    t = F(rng.randint(0, 1000), 1000)
    return iv.lo + t * iv.width


def test_enclosure_soundness_ten_thousand_cases():
    rng = random.Random(20240611)
    ops = {"add": lambda x, y: x + y, "sub": lambda x, y: x - y, "mul": lambda x, y: x * y}
    for i in range(10_000):
        op = ("add", "sub", "mul")[i % 3]
        a, b = _random_interval(rng), _random_interval(rng)
        x, y = _sample(rng, a), _sample(rng, b)
        r = interval_arith(a, b, op)
        assert r.contains(ops[op](x, y))
        for v in (r.lo, r.hi):
            assert math.gcd(v.numerator, v.denominator) == 1


fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


@settings(max_examples=300, deadline=None)
@given(fractions, fractions, fractions, fractions, st.sampled_from(["add", "sub", "mul"]))
def test_enclosure_endpoints_are_attained(a, b, c, d, op):
    x, y = RationalInterval(min(a, b), max(a, b)), RationalInterval(min(c, d), max(c, d))
    r = interval_arith(x, y, op)
    f = {"add": F.__add__, "sub": F.__sub__, "mul": F.__mul__}[op]
    corners = [f(p, q) for p in (x.lo, x.hi) for q in (y.lo, y.hi)]
    # tightest: both endpoints are realised by corner points
    assert r.lo == min(corners) and r.hi == max(corners)


@settings(max_examples=300, deadline=None)
@given(fractions, fractions)
def test_certified_floor_consistent(a, b):
    iv = RationalInterval(min(a, b), max(a, b))
    v = certified_floor(iv)
    if v is None:
        assert math.floor(iv.lo) != math.floor(iv.hi)
    else:
        assert v <= iv.lo < v + 1 and v <= iv.hi < v + 1


def test_round_outward_contains():
    iv = RationalInterval(F(1, 3), F(2, 3))
    r = iv.round_outward(10)
    assert r.contains(iv) and r.lo.denominator <= 1024 and r.hi.denominator <= 1024


@pytest.mark.parametrize("n, r", [(10**40, 2), (2**300 - 1, 3), (12345678987654321, 5), (1, 7), (0, 2)])
def test_iroot(n, r):
    s = iroot(n, r)
    assert s**r <= n < (s + 1) ** r


def test_root_bracket_sqrt2():
    iv = root_bracket(F(2), 2, 40)
    assert iv.lo**2 <= 2 <= iv.hi**2 and iv.width == F(1, 2**40)
    assert root_bracket(F(9, 4), 2, 10).is_point


def test_rational_power_bracket():
    iv = rational_power_bracket(F(14), F(19, 20), 64)
    assert iv.lo ** 20 <= 14**19 <= iv.hi ** 20
    inv = rational_power_bracket(F(14), F(-19, 20), 64)
    assert inv.lo * iv.hi <= 1 <= inv.hi * iv.lo or inv.contains(1 / iv.mid)


def test_certified_decimal():
    assert certified_decimal(RationalInterval(F(314159, 100000), F(314160, 100000)), 10) == "3.1416e+00"
    assert certified_decimal(RationalInterval.point(0), 5) == "0"
    assert certified_decimal(RationalInterval(F(-1, 10**20), F(1, 10**20)), 5) == "+-1.0e-20"
    assert certified_decimal(RationalInterval(F(1), F(1000)), 5) == "?"


def test_fmt_sci_bound_directions():
    x = F(1, 3)
    assert fmt_sci_bound(x, 3, upper=True) == "3.34e-01"
    assert fmt_sci_bound(x, 3, upper=False) == "3.33e-01"
    assert fmt_sci_bound(-x, 3, upper=True) == "-3.33e-01"
    assert fmt_sci_bound(F(999999, 10**6), 3, upper=True) == "1.00e+00"
    assert fmt_sci(F(-25, 1000), 2) == "-2.5e-02"
