"""Certified continued-fraction expansion, convergents and related checks.

Indices are 0-based throughout: ``quotients[0]`` is a_0 and ``convergents(cf)[n]``
is p_n/q_n built from a_0..a_n.  Under this convention e has a_0 = 2,
a_{3k-2} = a_{3k} = 1 and a_{3k-1} = 2k.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .constants import Constant, Kind, approximate, max_digits, reciprocal
from .exact import IndeterminateError, PrecisionCeilingError, RationalInterval

START_DIGITS = 64


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ContinuedFraction:
    constant: Union[Constant, Fraction, None]
    quotients: tuple[int, ...]
    certified: bool = True
    exact: bool = False  # True when the quotients are the whole (finite) expansion
    digits_used: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "quotients", tuple(int(a) for a in self.quotients))
        if any(a < 1 for a in self.quotients[1:]):
            raise ValueError("partial quotients after a_0 must be >= 1")

    def __len__(self) -> int:
        return len(self.quotients)

    def __getitem__(self, i):
        return self.quotients[i]

    def value(self) -> Fraction:
        return cf_value(self.quotients)


Source = Union[Constant, Fraction, int]


def cf_value(quotients: Sequence[int]) -> Fraction:
    x = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        x = a + 1 / x
    return x


def cf_of_rational(x: Fraction) -> tuple[int, ...]:
    """Euclidean algorithm; the result never ends in 1 unless it is exactly [1]."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    out = []
    while den:
        a, r = divmod(num, den)
        out.append(a)
        num, den = den, r
    return tuple(out)


def expand_interval(iv: RationalInterval, max_terms: int) -> list[int]:
    """Quotients shared by every real in ``iv``.

    Simultaneous Euclid on both endpoints; each emitted quotient is the common
    floor of the current enclosure, i.e. a certified floor.
    """
    a, b = iv.lo.numerator, iv.lo.denominator
    c, d = iv.hi.numerator, iv.hi.denominator
    out: list[int] = []
    while len(out) < max_terms:
        f = a // b
        if f != c // d:
            break
        out.append(f)
        r_lo, r_hi = a - f * b, c - f * d
        if r_lo == 0:
            # lo is an integer: x - f may be 0, so the next step is undecidable
            break
        # x - f in [r_lo/b, r_hi/d]  =>  1/(x - f) in [d/r_hi, b/r_lo]
        a, b, c, d = d, r_hi, b, r_lo
    return out


def cf_expand(source: Source, max_terms: int, *, start_digits: int = START_DIGITS,
              ceiling: int | None = None) -> ContinuedFraction:
    """Certified partial quotients of a constant or a literal rational.

    Precision is doubled from ``start_digits`` whenever the current enclosure
    cannot decide the next quotient.  Hitting the ceiling raises
    :class:`PrecisionCeilingError` whose ``partial`` carries what was certified.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    if isinstance(source, (int, Fraction)):
        qs = cf_of_rational(Fraction(source))
        return ContinuedFraction(Fraction(source), qs[:max_terms], exact=len(qs) <= max_terms)

    ceiling = max_digits() if ceiling is None else ceiling
    digits = min(start_digits, ceiling)
    best: list[int] = []
    while True:
        qs = expand_interval(approximate(source, digits, ceiling=ceiling), max_terms)
        if qs[: len(best)] != best[: len(qs)]:
            raise AssertionError(f"inconsistent expansions of {source} at {digits} digits")
        if len(qs) > len(best):
            best = qs
        if len(best) >= max_terms:
            return ContinuedFraction(source, best, digits_used=digits)
        if digits >= ceiling:
            partial = ContinuedFraction(source, best, digits_used=digits)
            raise PrecisionCeilingError(
                f"precision ceiling reached after {len(best)} certified quotients", partial=partial)
        digits = min(2 * digits, ceiling)


def euler_e_quotient(n: int) -> int:
    """Partial quotient a_n of e: 2, then the period (1, 2k, 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 2
    if n % 3 == 2:
        return 2 * (n + 1) // 3
    return 1


def convergents(cf: Union[ContinuedFraction, Iterable[int]]) -> list[Convergent]:
    quotients = cf.quotients if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not quotients:
        raise ValueError("need at least one quotient")
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    out = [Convergent(0, p, q)]
    for n, a in enumerate(quotients[1:], start=1):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(Convergent(n, p, q))
    return out


# Lemma-3 style bound -----------------------------------------------------------


class CheckStatus(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CheckReport:
    index: int
    p: int
    q: int
    next_quotient: int
    error: RationalInterval  # encloses |alpha - p/q|
    bound: Fraction  # 1 / (a_{n+1} q^2)
    positive: bool
    below_bound: bool

    @property
    def status(self) -> CheckStatus:
        if not self.positive:
            return CheckStatus.DEGENERATE
        return CheckStatus.HOLDS if self.below_bound else CheckStatus.VIOLATED

    @property
    def holds(self) -> bool:
        return self.positive and self.below_bound


def lemma3_check(constant_iv: RationalInterval, conv: Convergent, next_quotient: int) -> CheckReport:
    """Certify ``0 < |alpha - p/q| < 1/(a_{n+1} q^2)`` for alpha in ``constant_iv``."""
    if next_quotient < 1:
        raise ValueError("next quotient must be >= 1")
    err = abs(constant_iv - conv.value)
    bound = Fraction(1, next_quotient * conv.q * conv.q)
    if err.is_point and err.lo == 0:
        positive = False
    elif err.lo > 0:
        positive = True
    else:
        raise IndeterminateError("indeterminate at this precision: enclosure touches p/q")
    if err.hi < bound:
        below = True
    elif err.lo >= bound:
        below = False
    else:
        raise IndeterminateError("indeterminate at this precision: enclosure straddles the bound")
    return CheckReport(conv.index, conv.p, conv.q, next_quotient, err, bound, positive, below)


def lemma3_suite(const: Constant, n_convergents: int, *, ceiling: int | None = None) -> list[CheckReport]:
    """Check every convergent 0..n_convergents-1 of ``const`` against its next quotient."""
    cf = cf_expand(const, n_convergents + 1, ceiling=ceiling)
    convs = convergents(cf)
    reports = []
    digits = 2 * len(str(convs[n_convergents - 1].q)) + 20
    for conv in convs[:n_convergents]:
        while True:
            try:
                reports.append(lemma3_check(approximate(const, digits, ceiling=ceiling), conv,
                                            cf.quotients[conv.index + 1]))
                break
            except IndeterminateError:
                digits *= 2
    return reports


# inversion -------------------------------------------------------------------


def invert_cf(cf: ContinuedFraction) -> ContinuedFraction:
    """Expansion of 1/alpha: prepend 0 when alpha > 1, drop a_0 = 0 when 0 < alpha < 1."""
    qs = cf.quotients
    if not qs or qs[0] < 0:
        raise ValueError("inversion needs a positive constant")
    if qs == (1,):
        raise ValueError("value 1 is its own inverse; expansion [1] is ambiguous here")
    if qs[0] == 0:
        if len(qs) < 2:
            raise ValueError("zero has no inverse")
        new = qs[1:]
    else:
        new = (0,) + qs
    if isinstance(cf.constant, Fraction):
        const = 1 / cf.constant
    elif isinstance(cf.constant, Constant):
        const = cf.constant.factors[0] if cf.constant.kind is Kind.RECIPROCAL else reciprocal(cf.constant)
    else:
        const = None
    return ContinuedFraction(const, new, certified=cf.certified, exact=cf.exact, digits_used=cf.digits_used)


# growth ------------------------------------------------------------------------


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class GrowthRow:
    k: int
    t: int
    ratio: Fraction  # q_{3(k+t)-1} / q_{3k-2}
    reference: int  # (4k)**(t+1)

    @property
    def relative(self) -> Fraction:
        return self.ratio / self.reference


@dataclass(frozen=True)
class GrowthReport:
    fibonacci_ok: bool
    failures: tuple[int, ...]
    rows: tuple[GrowthRow, ...]


def continuant_growth_report(convs: Sequence[Convergent], max_t: int = 2) -> GrowthReport:
    """q_n >= Fib(n+1) for every convergent, plus the e-pattern ratio table."""
    if len(convs) < 3:
        raise ValueError("need at least 3 convergents")
    failures = []
    a, b = 1, 1  # Fib(n+1), Fib(n+2)
    for c in convs:
        if c.q < a:
            failures.append(c.index)
        a, b = b, a + b
    q = {c.index: c.q for c in convs}
    rows = []
    k = 1
    while 3 * k - 2 in q:
        for t in range(max_t + 1):
            top = 3 * (k + t) - 1
            if top in q:
                rows.append(GrowthRow(k, t, Fraction(q[top], q[3 * k - 2]), (4 * k) ** (t + 1)))
        k += 1
    return GrowthReport(not failures, tuple(failures), tuple(rows))
