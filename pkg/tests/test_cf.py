import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfcert.cf import (
    CheckStatus,
    ContinuedFraction,
    Convergent,
    cf_expand,
    cf_of_rational,
    continuant_growth_report,
    convergents,
    euler_e_quotient,
    fibonacci,
    invert_cf,
    lemma3_check,
    lemma3_suite,
)
from cfcert.constants import CBRT2, E, LN2, PI, approximate, reciprocal, sqrt
from cfcert.exact import IndeterminateError, PrecisionCeilingError, RationalInterval


def test_pi_six_terms():
    assert cf_expand(PI, 6).quotients == (3, 7, 15, 1, 292, 1)


def test_pi_against_mpmath_identify(mp_dps):
    mp_dps(120)
    x, ours = mpmath.pi, cf_expand(PI, 60).quotients
    for a in ours:
        assert int(mpmath.floor(x)) == a
        x = 1 / (x - a)


def test_cbrt2_twelve_terms():
    assert cf_expand(CBRT2, 12).quotients == (1, 3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14)


def test_literal_rational():
    cf = cf_expand(F(8, 5), 10)
    assert cf.quotients == (1, 1, 1, 2) and cf.exact
    assert cf_expand(7, 3).quotients == (7,)


@pytest.mark.parametrize("n, a", [(0, 2), (1, 1), (2, 2), (3, 1), (4, 1), (5, 4), (17, 12)])
def test_euler_quotient(n, a):
    assert euler_e_quotient(n) == a


def test_euler_pattern_matches_expansion():
    cf = cf_expand(E, 600)
    assert all(a == euler_e_quotient(i) for i, a in enumerate(cf.quotients))


def test_pi_convergents():
    cs = convergents([3, 7, 15, 1])
    assert [(c.p, c.q) for c in cs] == [(3, 1), (22, 7), (333, 106), (355, 113)]
    assert convergents([5]) == [Convergent(0, 5, 1)]


def test_e_has_table_convergent():
    assert any((c.p, c.q) == (13580623, 4996032) for c in convergents(cf_expand(E, 25)))


def test_lemma3_examples():
    c = next(c for c in convergents(cf_expand(E, 20)) if c.q == 4996032)
    rep = lemma3_check(approximate(E, 40), c, euler_e_quotient(c.index + 1))
    assert rep.holds and rep.next_quotient == 1
    rep = lemma3_check(approximate(PI, 40), Convergent(1, 22, 7), 15)
    assert rep.holds and rep.bound == F(1, 735)


def test_lemma3_degenerate_and_indeterminate():
    rep = lemma3_check(RationalInterval.point(F(355, 113)), Convergent(3, 355, 113), 1)
    assert rep.status is CheckStatus.DEGENERATE and not rep.holds
    with pytest.raises(IndeterminateError):
        lemma3_check(approximate(PI, 3), Convergent(3, 355, 113), 292)


@pytest.mark.parametrize("const", [E, PI, sqrt(2), CBRT2, LN2])
def test_lemma3_suite_first_100(const):
    reports = lemma3_suite(const, 100)
    assert len(reports) == 100 and all(r.holds for r in reports)


def test_invert():
    pi_cf = cf_expand(PI, 8)
    inv = invert_cf(pi_cf)
    assert inv.quotients == (0,) + pi_cf.quotients
    assert invert_cf(inv).quotients == pi_cf.quotients
    assert cf_expand(reciprocal(PI), 9).quotients == inv.quotients


def test_invert_rejects():
    with pytest.raises(ValueError):
        invert_cf(ContinuedFraction(F(1), (1,)))
    with pytest.raises(ValueError):
        invert_cf(ContinuedFraction(F(-3, 2), (-2, 2)))


def test_ceiling_returns_partial():
    with pytest.raises(PrecisionCeilingError) as info:
        cf_expand(PI, 500, ceiling=100)
    partial = info.value.partial
    assert 50 < len(partial) < 500
    assert partial.quotients == cf_expand(PI, len(partial)).quotients


def test_growth_report_e():
    rep = continuant_growth_report(convergents(cf_expand(E, 30)))
    assert rep.fibonacci_ok
    q10 = convergents(cf_expand(E, 11))[10].q
    assert q10 == 1001 >= fibonacci(11) == 89
    row = next(r for r in rep.rows if (r.k, r.t) == (5, 1))
    assert F(1, 64) <= row.relative <= 64


def test_growth_report_golden_ratio_is_tight():
    convs = convergents([1] * 30)
    assert all(c.q == fibonacci(c.index + 1) for c in convs)
    assert continuant_growth_report(convs).fibonacci_ok


quotient_streams = st.lists(st.integers(min_value=1, max_value=10**6), min_size=2, max_size=60)


@settings(max_examples=400, deadline=None)
@given(st.integers(min_value=0, max_value=100), quotient_streams)
def test_determinant_identity_random_streams(a0, rest):
    cs = convergents([a0] + rest)
    for prev, cur in zip(cs, cs[1:]):
        assert cur.p * prev.q - prev.p * cur.q == (-1) ** (cur.index - 1)
        assert math.gcd(cur.p, cur.q) == 1


def test_determinant_identity_constants():
    count = 0
    for const in (E, PI, sqrt(2), CBRT2, LN2):
        cs = convergents(cf_expand(const, 500))
        for prev, cur in zip(cs, cs[1:]):
            assert cur.p * prev.q - prev.p * cur.q == (-1) ** (cur.index - 1)
            count += 1
    assert count >= 2000


def test_alternation():
    iv = approximate(PI, 200)
    for c in convergents(cf_expand(PI, 40)):
        diff = RationalInterval.point(c.value) - iv
        assert (diff.lo > 0) == (c.index % 2 == 1) and not diff.contains_zero()


def test_re_expansion_round_trip():
    rng = random.Random(7)
    for _ in range(300):
        qs = [rng.randint(0, 9)] + [rng.randint(1, 50) for _ in range(rng.randint(1, 20))]
        last = convergents(qs)[-1]
        expected = tuple(qs) if qs[-1] != 1 or len(qs) == 1 else tuple(qs[:-2] + [qs[-2] + 1])
        assert cf_of_rational(last.value) == expected
