"""Certified rational enclosures of e, pi, sqrt(d), 2**(1/3), ln 2, zeta(3) and products.

Every generator works in binary fixed point: a value is an integer ``S`` at scale
``2**bits`` together with an integer ulp bound, so the true constant lies in
``[(S - err) / 2**bits, (S + err) / 2**bits]``.  Tail bounds are the textbook
ones for each series and are folded into ``err`` before the interval is built.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import PrecisionCeilingError, RationalInterval, root_bracket

DEFAULT_MAX_DIGITS = 10_000
MAX_DIGITS_ENV = "CFCERT_MAX_DIGITS"

_LOG2_10 = math.log2(10)


def max_digits() -> int:
    """Digit ceiling, overridable through the ``CFCERT_MAX_DIGITS`` environment variable."""
    raw = os.environ.get(MAX_DIGITS_ENV)
    return int(raw) if raw else DEFAULT_MAX_DIGITS


class Kind(str, enum.Enum):
    E = "e"
    PI = "pi"
    SQRT = "sqrt"
    CBRT2 = "cbrt2"
    LN2 = "ln2"
    ZETA3 = "zeta3"
    PRODUCT = "product"
    RECIPROCAL = "reciprocal"


@dataclass(frozen=True)
class Constant:
    """A named real constant the package knows how to enclose."""

    kind: Kind
    d: int | None = None
    factors: tuple["Constant", ...] = field(default=())

    def __post_init__(self):
        if self.kind is Kind.SQRT:
            if self.d is None or self.d < 2:
                raise ValueError("SQRT(d) needs d >= 2")
            if math.isqrt(self.d) ** 2 == self.d:
                raise ValueError(f"rational input: {self.d} is a perfect square")
        if self.kind is Kind.PRODUCT and len(self.factors) != 2:
            raise ValueError("PRODUCT takes exactly two factors")
        if self.kind is Kind.RECIPROCAL and len(self.factors) != 1:
            raise ValueError("RECIPROCAL takes one factor")

    @property
    def name(self) -> str:
        if self.kind is Kind.SQRT:
            return f"sqrt({self.d})"
        if self.kind is Kind.PRODUCT:
            return "*".join(f.name for f in self.factors)
        if self.kind is Kind.RECIPROCAL:
            return f"1/{self.factors[0].name}"
        return self.kind.value

    def __str__(self) -> str:
        return self.name


E = Constant(Kind.E)
PI = Constant(Kind.PI)
CBRT2 = Constant(Kind.CBRT2)
LN2 = Constant(Kind.LN2)
ZETA3 = Constant(Kind.ZETA3)


def sqrt(d: int) -> Constant:
    return Constant(Kind.SQRT, d=d)


def product(a: Constant, b: Constant) -> Constant:
    return Constant(Kind.PRODUCT, factors=(a, b))


def reciprocal(a: Constant) -> Constant:
    return Constant(Kind.RECIPROCAL, factors=(a,))


def parse_constant(text: str) -> Constant:
    """Parse names such as ``e``, ``pi``, ``sqrt2``, ``sqrt(7)``, ``e*pi``, ``1/pi``."""
    t = text.strip().lower().replace(" ", "")
    if "*" in t:
        a, b = t.split("*", 1)
        return product(parse_constant(a), parse_constant(b))
    if t.startswith("1/"):
        return reciprocal(parse_constant(t[2:]))
    simple = {"e": E, "pi": PI, "cbrt2": CBRT2, "2^(1/3)": CBRT2, "ln2": LN2, "log2": LN2, "zeta3": ZETA3}
    if t in simple:
        return simple[t]
    if t.startswith("sqrt"):
        arg = t[4:].strip("()")
        return sqrt(int(arg))
    raise ValueError(f"unknown constant {text!r}")


# fixed-point series ---------------------------------------------------------


def _bits_for(digits: int) -> int:
    return math.ceil(digits * _LOG2_10) + 16 + digits.bit_length()


def _fixed_to_interval(s: int, err_lo: int, err_hi: int, bits: int) -> RationalInterval:
    scale = 1 << bits
    return RationalInterval(Fraction(s - err_lo, scale), Fraction(s + err_hi, scale))


def e_fixed(bits: int) -> RationalInterval:
    """sum 1/k! with floor-division error tracking and tail bound 2/(K+1)!."""
    t = 1 << bits
    err_t = 0
    s = err = 0
    k = 0
    while t:
        s += t
        err += err_t
        k += 1
        t //= k
        err_t = -(-err_t // k) + 1
    # remaining tail sum_{j>=k} 1/j! <= 2/k! <= 2*(t + err_t) ulps with t == 0
    return _fixed_to_interval(s, err, err + 2 * err_t, bits)


def ln2_fixed(bits: int) -> RationalInterval:
    """sum 1/(k 2**k); geometric tail 1/(K 2**K)."""
    one = 1 << bits
    s = 0
    k = 1
    while (one >> k) != 0:
        s += (one >> k) // k
        k += 1
    # k-1 floored terms (< 1 ulp each) plus a tail below 1 ulp
    return _fixed_to_interval(s, 0, k + 1, bits)


def arctan_inv_fixed(x: int, bits: int) -> RationalInterval:
    """arctan(1/x) for integer x >= 2 via the alternating Gregory series."""
    x2 = x * x
    p = (1 << bits) // x
    err_p = 1
    s = 0
    err = 0
    k = 0
    while p:
        term = p // (2 * k + 1)
        s += -term if k % 2 else term
        err += -(-err_p // (2 * k + 1)) + 1
        p //= x2
        err_p = -(-err_p // x2) + 1
        k += 1
    # alternating tail bounded by the first omitted term (< err_p ulps)
    err += err_p
    return _fixed_to_interval(s, err, err, bits)


def zeta3_fixed(bits: int) -> RationalInterval:
    """zeta(3) = 5/2 * sum_{k>=1} (-1)**(k+1) / (k**3 * C(2k, k))."""
    one = 1 << bits
    s = 0
    k = 1
    c = 2  # C(2, 1)
    while True:
        term = one // (k**3 * c)
        if term == 0:
            break
        s += term if k % 2 else -term
        k += 1
        c = c * (2 * k) * (2 * k - 1) // (k * k)
    # k-1 floored terms plus an alternating tail smaller than 1 ulp
    iv = _fixed_to_interval(s, k, k, bits)
    return iv * Fraction(5, 2)


def pi_interval(digits: int, method: str = "machin") -> RationalInterval:
    """pi via Machin (16 atan 1/5 - 4 atan 1/239) or Hutton (8 atan 1/3 + 4 atan 1/7)."""
    target = Fraction(1, 10**digits)
    bits = _bits_for(digits) + 6
    while True:
        if method == "machin":
            iv = 16 * arctan_inv_fixed(5, bits) - 4 * arctan_inv_fixed(239, bits)
        elif method == "hutton":
            iv = 8 * arctan_inv_fixed(3, bits) + 4 * arctan_inv_fixed(7, bits)
        else:
            raise ValueError(f"unknown pi method {method!r}")
        if iv.width < target:
            return iv
        bits += 16


def _refine(gen, digits: int) -> RationalInterval:
    target = Fraction(1, 10**digits)
    bits = _bits_for(digits)
    while True:
        iv = gen(bits)
        if iv.width < target:
            return iv
        bits += 16


def _sig_guard(iv: RationalInterval) -> int:
    m = max(abs(iv.lo), abs(iv.hi))
    return max(0, len(str(math.ceil(m)))) + 2


def _approx(const: Constant, digits: int) -> RationalInterval:
    k = const.kind
    if k is Kind.E:
        return _refine(e_fixed, digits)
    if k is Kind.PI:
        return pi_interval(digits)
    if k is Kind.LN2:
        return _refine(ln2_fixed, digits)
    if k is Kind.ZETA3:
        return _refine(zeta3_fixed, digits)
    if k is Kind.SQRT:
        return _refine(lambda b: root_bracket(Fraction(const.d), 2, b), digits)
    if k is Kind.CBRT2:
        return _refine(lambda b: root_bracket(Fraction(2), 3, b), digits)
    target = Fraction(1, 10**digits)
    if k is Kind.PRODUCT:
        a, b = const.factors
        guard = _sig_guard(_approx(a, 4)) + _sig_guard(_approx(b, 4))
        while True:
            iv = _approx(a, digits + guard) * _approx(b, digits + guard)
            if iv.width < target:
                return iv
            guard += 8
    if k is Kind.RECIPROCAL:
        (a,) = const.factors
        coarse = _approx(a, 4)
        if coarse.contains_zero():
            coarse = _approx(a, 40)
        if coarse.contains_zero():
            raise ValueError("reciprocal of a constant too close to zero")
        small = min(abs(coarse.lo), abs(coarse.hi))
        guard = 2 * max(0, math.ceil(-math.log10(small))) + 3
        while True:
            iv = _approx(a, digits + guard).reciprocal()
            if iv.width < target:
                return iv
            guard += 8
    raise ValueError(f"unsupported constant {const}")


@functools.lru_cache(maxsize=512)
def _approx_cached(const: Constant, digits: int) -> RationalInterval:
    return _approx(const, digits)


def approximate(const: Constant, digits: int, *, ceiling: int | None = None) -> RationalInterval:
    """Interval containing ``const`` with width below ``10**-digits``."""
    if digits < 1:
        raise ValueError("precision_digits must be >= 1")
    ceiling = max_digits() if ceiling is None else ceiling
    if digits > ceiling:
        raise PrecisionCeilingError(f"requested {digits} digits exceeds ceiling {ceiling}")
    return _approx_cached(const, digits)
