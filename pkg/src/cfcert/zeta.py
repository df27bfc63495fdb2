"""Bernoulli numbers, even zeta values and the e^(2 pi n) series for odd zeta values.

For s = 3, 5, 7::

    zeta(3) = 7 pi^3/180  - 2 S0(3)
    zeta(5) = pi^5/294    - 72/35 S0(5) - 2/35 S1(5)
    zeta(7) = 19 pi^7/56700 - 2 S0(7)

with S0(s) = sum 1/(n^s (e^(2 pi n) - 1)) and S1(s) = sum 1/(n^s (e^(2 pi n) + 1)).
The series part is the residual u in zeta(s) = r pi^s - u.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import e_fixed, max_digits, pi_interval
from .exact import PrecisionCeilingError, RationalInterval, fmt_sci_bound, frac_str

_LOG2_10 = math.log2(10)
_LN10 = math.log(10)


# Bernoulli numbers ------------------------------------------------------------------


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple[Fraction, ...]  # B_0 .. B_N, with B_1 = -1/2

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def bernoulli(upto_2n: int) -> BernoulliTable:
    """B_0..B_upto_2n from sum_{k<=m} C(m+1, k) B_k = 0 (m >= 1)."""
    if upto_2n < 0 or upto_2n % 2:
        raise ValueError("upto_2n must be a non-negative even integer")
    b = [Fraction(1)]
    for m in range(1, upto_2n + 1):
        if m >= 3 and m % 2:
            b.append(Fraction(0))
            continue
        acc = sum(math.comb(m + 1, k) * b[k] for k in range(m))
        b.append(-acc / (m + 1))
    return BernoulliTable(tuple(b))


def euler_even_zeta_coeff(n: int) -> Fraction:
    """r with zeta(2n) = r pi^(2n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    b2n = bernoulli(2 * n)[2 * n]
    return (-1) ** (n + 1) * 2 ** (2 * n) * b2n / (2 * math.factorial(2 * n))


# certified exponential -----------------------------------------------------------------


def _exp_frac_fixed(f: Fraction, bits: int) -> tuple[int, int]:
    """e^f for 0 <= f < 1 at scale 2**bits, with an ulp error bound."""
    one = 1 << bits
    F = math.floor(f * one)  # error < 1 ulp in the argument, costs < e ulps
    s, term, err, err_t, j = 0, one, 3, 0, 0
    while term:
        s += term
        err += err_t
        j += 1
        term = term * F // (j * one)
        err_t = -(-err_t // j) + 1
    # omitted tail below 2 * (last error-free term bound)
    return s, err + 2 * err_t


def max_exp_argument() -> int:
    """Largest |x| accepted by :func:`certified_exp` (tied to the digit ceiling)."""
    return math.ceil(max_digits() * _LN10)


def _exp_point(y: Fraction, bits: int) -> RationalInterval:
    if y < 0:
        return _exp_point(-y, bits + 4).reciprocal()
    k = math.floor(y)
    s, err = _exp_frac_fixed(y - k, bits)
    scale = 1 << bits
    frac = RationalInterval(Fraction(s - err, scale), Fraction(s + err, scale))
    if k == 0:
        return frac
    ek = e_fixed(bits + 2 * k.bit_length() + 8) ** k
    return ek * frac


def certified_exp(x: RationalInterval, digits: int) -> RationalInterval:
    """Enclosure of {e^t : t in x} with width below 10**-digits (when x is a point)."""
    if isinstance(x, (int, Fraction)):
        x = RationalInterval.point(x)
    if max(abs(x.lo), abs(x.hi)) > max_exp_argument():
        raise OverflowError(f"exponent beyond the ceiling {max_exp_argument()}")
    if x.is_point and x.lo == 0:
        return RationalInterval.point(1)
    # e^hi has about hi/ln 10 digits before the point
    head = max(0, math.ceil(float(x.hi) / _LN10))
    bits = math.ceil((digits + head) * _LOG2_10) + 16
    target = Fraction(1, 10**digits)
    while True:
        lo = _exp_point(x.lo, bits)
        iv = RationalInterval(lo.lo, _exp_point(x.hi, bits).hi) if not x.is_point else lo
        if iv.width < target or not x.is_point:
            return iv.round_outward(bits)
        bits += 32


# odd zeta values ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OddFormula:
    s: int
    r: Fraction  # coefficient of pi^s
    minus: Fraction  # coefficient of S0(s)
    plus: Fraction  # coefficient of S1(s)


ODD_FORMULAS = {
    3: OddFormula(3, Fraction(7, 180), Fraction(2), Fraction(0)),
    5: OddFormula(5, Fraction(1, 294), Fraction(72, 35), Fraction(2, 35)),
    7: OddFormula(7, Fraction(19, 56700), Fraction(2), Fraction(0)),
}


@dataclass(frozen=True)
class OddZetaEvaluation:
    s: int
    value: RationalInterval  # zeta(s)
    residual: RationalInterval  # u = r pi^s - zeta(s)
    s0: RationalInterval
    s1: RationalInterval | None
    terms_used: int
    digits: int


def terms_needed(digits: int) -> int:
    """Smallest N with e^(-2 pi N) < 10^-(digits + 5)."""
    return math.floor((digits + 5) * _LN10 / (2 * math.pi)) + 1


def _series(s: int, shift: int, big: list[RationalInterval], bits: int) -> RationalInterval:
    """sum_{n<=N} 1/(n^s (E^n + shift)) plus a tail bound 3/E^(N+1) on the upper side."""
    total = RationalInterval.point(0)
    for n, en in enumerate(big[1:], start=1):
        total = (total + (1 / (n**s * (en + shift)))).round_outward(bits)
    n_terms = len(big) - 1
    # terms beyond N are below 2/E^n; the geometric sum is below 3/E^(N+1)
    tail = 3 / (big[-1].lo * big[1].lo)
    return RationalInterval(total.lo, total.hi + tail).round_outward(bits)


def odd_zeta_evaluation(s: int, digits: int, terms: int | None = None) -> OddZetaEvaluation:
    if s not in ODD_FORMULAS:
        raise ValueError(f"unsupported s={s}: only 3, 5, 7 have stored rational coefficients")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if digits > max_digits():
        raise PrecisionCeilingError(f"precision ceiling reached: {digits} > {max_digits()}")
    f = ODD_FORMULAS[s]
    n_terms = terms_needed(digits) if terms is None else terms
    if n_terms < 1:
        raise ValueError("terms must be >= 1")
    guard = 10
    target = Fraction(1, 10**digits)
    while True:
        work = digits + guard
        bits = math.ceil(work * _LOG2_10) + 16
        pi_iv = pi_interval(work + s)
        two_pi = (2 * pi_iv).round_outward(bits + 16)
        e2pi = certified_exp(two_pi, work + 4)
        big = [RationalInterval.point(1)]
        for _ in range(n_terms):
            big.append((big[-1] * e2pi).round_outward(bits))
        s0 = _series(s, -1, big, bits)
        s1 = _series(s, 1, big, bits) if f.plus else None
        u = f.minus * s0 + (f.plus * s1 if s1 is not None else 0)
        value = f.r * pi_iv**s - u
        if value.width < target or terms is not None or guard > 4 * digits + 40:
            return OddZetaEvaluation(s, value, u, s0, s1, n_terms, digits)
        guard += 10


def ramanujan_odd_zeta(s: int, digits: int, terms: int | None = None) -> RationalInterval:
    """Enclosure of zeta(s), s in {3, 5, 7}, from the e^(2 pi n) series."""
    return odd_zeta_evaluation(s, digits, terms).value


def zeta_direct_bracket(s: int, n_terms: int, bits: int = 96) -> RationalInterval:
    """sum_{n<=N} n^-s plus the integral tail 1/((s-1)(N+1)^(s-1)) < T < 1/((s-1)N^(s-1)).

    Independent of the exponential series; rounding is outward at 2**-bits.
    """
    if s < 2 or n_terms < 1:
        raise ValueError("need s >= 2 and N >= 1")
    one = 1 << bits
    lo = hi = 0
    for n in range(1, n_terms + 1):
        q, r = divmod(one, n**s)
        lo += q
        hi += q + (1 if r else 0)
    N = n_terms
    tail_lo = Fraction(1, (s - 1) * (N + 1) ** (s - 1))
    tail_hi = Fraction(1, (s - 1) * N ** (s - 1))
    return RationalInterval(Fraction(lo, one) + tail_lo, Fraction(hi, one) + tail_hi)


# pi-representation ---------------------------------------------------------------------------


class Branch(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class PiRepresentation:
    """zeta(s) = r pi^s (even s) or r pi^s - u (odd s)."""

    s: int
    r: Fraction
    u: RationalInterval
    branch: Branch
    digits: int
    terms_used: int

    def to_dict(self) -> dict:
        sig = self.digits + 5
        u_lo = fmt_sci_bound(self.u.lo, sig, upper=False)
        u_hi = fmt_sci_bound(self.u.hi, sig, upper=True)
        return {"s": self.s, "branch": self.branch.value, "r_exact": frac_str(self.r), "u_lo": u_lo,
                "u_hi": u_hi, "digits": self.digits, "terms_used": self.terms_used}


SUPPORTED_S = range(2, 8)


def pi_representation(s: int, digits: int) -> PiRepresentation:
    if s not in SUPPORTED_S:
        raise ValueError(f"unsupported s={s}: supported range is 2..7")
    if s % 2 == 0:
        r = euler_even_zeta_coeff(s // 2)
        return PiRepresentation(s, r, RationalInterval.point(0), Branch.EVEN, digits, 0)
    ev = odd_zeta_evaluation(s, digits)
    return PiRepresentation(s, ODD_FORMULAS[s].r, ev.residual, Branch.ODD, digits, ev.terms_used)
