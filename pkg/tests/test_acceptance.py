"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the terminal
summary) or ``python tests/test_acceptance.py`` for just the lines.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from cfcert import constants
from cfcert.cf import cf_expand, convergents, euler_e_quotient, lemma3_suite
from cfcert.constants import CBRT2, E, LN2, PI, ZETA3, approximate, product, sqrt
from cfcert.equidist import (
    ExpSumQuery,
    Form,
    PiMultiple,
    SequenceSpec,
    equivalence_diagnostic,
    exp_sum_closed,
    exp_sum_direct,
)
from cfcert.exact import RationalInterval, certified_decimal
from cfcert.product import TABLES, Convention, inequality_sweep, matches_printed, product_error, reproduce_table
from cfcert.zeta import euler_even_zeta_coeff, ramanujan_odd_zeta, zeta_direct_bracket

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

GOLDEN = Path(__file__).parent / "golden"


def _fresh():
    constants._approx_cached.cache_clear()


def _timed(fn):
    _fresh()
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _table_error(name, digits=80):
    from cfcert.cf import Convergent

    t = TABLES[name]
    return product_error(Convergent(0, t.p, t.q), Convergent(0, t.u, t.v), approximate(product(E, PI), digits))


def criterion_1():
    err, dt = _timed(lambda: _table_error("t40"))
    printed = TABLES["t40"].printed_error
    ok = matches_printed(err, printed) and dt < 1
    return ok, f"certified |e*pi - pu/(qv)| = {certified_decimal(err, 11)} vs printed {printed}; {dt:.3f}s"


def criterion_2():
    err, dt = _timed(lambda: _table_error("t80"))
    ok = matches_printed(err, TABLES["t80"].printed_error) and dt < 2
    return ok, f"error digits match {TABLES['t80'].printed_error}: {ok}; {dt:.3f}s"


def criterion_3():
    details, ok = [], True
    for name in ("t40", "t80"):
        rep = reproduce_table(name)
        golden = json.loads((GOLDEN / f"{name}.json").read_text())
        if rep.matched_convention is not None:
            c = rep.matched_convention
            good = rep.bound_exceeds_error[c] and golden["bound_convention"] == c.value
            details.append(f"{name}: preset {c.value} reproduces the printed bound, bound > error={good}")
        else:
            good = all(rep.bound_exceeds_error.values()) and golden["bound_mismatch"] is True
            details.append(f"{name}: no preset reproduces the printed bound; bound > error under all presets={good},"
                           f" mismatch flagged in golden file")
        ok = ok and good
    return ok, "; ".join(details)


def criterion_4():
    cf, dt = _timed(lambda: cf_expand(E, 3000))
    bad = [i for i, a in enumerate(cf.quotients) if a != euler_e_quotient(i)]
    ok = len(cf.quotients) == 3000 and not bad and dt < 60
    return ok, f"3000 quotients, {len(bad)} mismatches, {cf.digits_used} digits used; {dt:.2f}s"


def criterion_5():
    counts, fails = {}, 0
    for const in (E, PI, sqrt(2), CBRT2, LN2):
        reports = lemma3_suite(const, 200)
        f = sum(not r.holds for r in reports)
        counts[const.name] = len(reports)
        fails += f
    ok = fails == 0 and all(v == 200 for v in counts.values())
    return ok, f"{sum(counts.values())} convergents checked, {fails} failures"


def criterion_6():
    reports, dt = _timed(lambda: inequality_sweep(100, 60, Convention.EQ6029))
    fails = [(r.n, r.m) for r in reports if not r.holds]
    ok = not fails and len(reports) == 34 * 61
    return ok, f"{len(reports)} pairs (n<=100, n=1 mod 3, m<=60) under eq6029, {len(fails)} failures; {dt:.2f}s"


def criterion_7():
    rng = random.Random(7)
    count = bad = 0
    streams = [cf_expand(c, 600).quotients for c in (E, PI, sqrt(2), CBRT2, LN2)]
    streams += [[rng.randint(0, 50)] + [rng.choice((1, 1, 2, 3, rng.randint(1, 10**9))) for _ in range(rng.randint(1, 80))]
                for _ in range(300)]
    for qs in streams:
        cs = convergents(qs)
        for prev, cur in zip(cs, cs[1:]):
            count += 1
            if cur.p * prev.q - prev.p * cur.q != (-1) ** (cur.index - 1):
                bad += 1
    ok = bad == 0 and count >= 10_000
    return ok, f"{count} consecutive pairs checked, {bad} violations"


def criterion_8():
    rng = random.Random(8)
    disagree = 0
    for i in range(500):
        x = rng.randint(1, 10_000)
        if i % 5 == 4:
            t = PiMultiple(F(rng.randint(1, 999), rng.randint(2, 1000)))
        else:
            t = F(rng.randint(1, 10**7), rng.randint(1, 10**6))
        q = ExpSumQuery(t, x)
        c, d = exp_sum_closed(q), exp_sum_direct(q)
        if not c.overlaps(d):
            disagree += 1
    degenerate_ok = True
    for k in (-4, -1, 1, 2, 5, 100):
        for x in (1, 17, 10_000):
            q = ExpSumQuery(PiMultiple(k), x)
            for r in (exp_sum_closed(q), exp_sum_direct(q)):
                degenerate_ok &= r.is_exact and r.re.lo == 2 * x + 1 and r.im.lo == 0
    ok = disagree == 0 and degenerate_ok
    return ok, f"500 random (t, x): {disagree} disagreements; t=k*pi gives exactly 2x+1: {degenerate_ok}"


def criterion_9():
    xs = [100, 1000, 10_000]
    lin = equivalence_diagnostic(SequenceSpec(Form.LINEAR_PI, r=1), xs)
    exact = all(r.average.re == RationalInterval.point(F(2 * r.x + 1, r.x)) and r.average.im.is_point
                for r in lin.rows)
    real = equivalence_diagnostic(SequenceSpec(Form.LINEAR_REAL, alpha=E), xs)
    enveloped = all(r.envelope is not None and r.average.abs_upper() <= r.envelope for r in real.rows)
    return exact and enveloped, f"S=2 pi n exact (2x+1)/x: {exact}; S=2en below 1/(x|sin e|): {enveloped}"


def criterion_10():
    t0 = time.perf_counter()
    _fresh()
    coeffs = [euler_even_zeta_coeff(n) for n in (1, 2, 3)]
    c_ok = coeffs == [F(1, 6), F(1, 90), F(1, 945)]
    z3 = ramanujan_odd_zeta(3, 30).overlaps(approximate(ZETA3, 30))
    z5 = ramanujan_odd_zeta(5, 15).overlaps(zeta_direct_bracket(5, 4000))
    z7 = ramanujan_odd_zeta(7, 15).overlaps(zeta_direct_bracket(7, 600))
    dt = time.perf_counter() - t0
    ok = c_ok and z3 and z5 and z7 and dt < 30
    return ok, f"coefficients {c_ok}; zeta3 overlap {z3}; zeta5 bracket {z5}; zeta7 bracket {z7}; {dt:.2f}s"


DETERMINISM_RUNS = [
    ["table", "t40"],
    ["table", "t80"],
    ["cf", "expand", "--constant", "e", "--terms", "200"],
    ["search", "--best"],
    ["expsum", "diagnostic", "--format", "csv"],
    ["zeta", "pi-rep", "--s", "5", "--digits", "50"],
]


def criterion_11():
    same = 0
    for argv in DETERMINISM_RUNS:
        cmd = [sys.executable, "-m", "cfcert", *argv]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        same += a == b and len(a) > 0
    return same == len(DETERMINISM_RUNS), f"{same}/{len(DETERMINISM_RUNS)} invocations byte-identical across two runs"


CRITERIA = {
    1: ("t40 error digits", criterion_1),
    2: ("t80 error digits", criterion_2),
    3: ("table bound rows", criterion_3),
    4: ("Euler pattern for e, 3000 terms", criterion_4),
    5: ("single-convergent bound, 200 convergents x 5 constants", criterion_5),
    6: ("product inequality sweep", criterion_6),
    7: ("determinant identity", criterion_7),
    8: ("Dirichlet kernel closed vs direct", criterion_8),
    9: ("equivalence diagnostic", criterion_9),
    10: ("zeta formulas", criterion_10),
    11: ("CLI determinism", criterion_11),
}


def _evaluate(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title} -- {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = _evaluate(n)
    assert ok, line


if __name__ == "__main__":
    results = [_evaluate(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
