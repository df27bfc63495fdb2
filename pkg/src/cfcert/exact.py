"""Exact rationals and certified rational intervals.

``ExactRational`` is :class:`fractions.Fraction`; it already keeps numerator and
denominator coprime with a positive denominator.  Everything transcendental in
the package is carried as a :class:`RationalInterval` with rational endpoints.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

ExactRational = Fraction
Number = Union[int, Fraction]


class PrecisionCeilingError(RuntimeError):
    """Raised when a computation would exceed the configured digit ceiling."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IndeterminateError(ArithmeticError):
    """An inequality cannot be decided from the enclosures at hand."""


def as_fraction(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: Number) -> "RationalInterval":
        x = as_fraction(x)
        return cls(x, x)

    @classmethod
    def ball(cls, mid: Number, rad: Number) -> "RationalInterval":
        mid, rad = as_fraction(mid), as_fraction(rad)
        return cls(mid - abs(rad), mid + abs(rad))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def overlaps(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return RationalInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _coerce(other)
        if other.is_point:
            c = other.lo
            return RationalInterval(self.lo * c, self.hi * c) if c >= 0 else RationalInterval(self.hi * c, self.lo * c)
        if self.is_point:
            return other * self
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.contains_zero():
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "RationalInterval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        if n == 0:
            return RationalInterval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return RationalInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return RationalInterval(self.hi**n, self.lo**n)
        return RationalInterval(Fraction(0), max(self.lo**n, self.hi**n))

    def __abs__(self) -> "RationalInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(Fraction(0), max(-self.lo, self.hi))

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def round_outward(self, bits: int) -> "RationalInterval":
        """Widen to endpoints on the dyadic grid 2**-bits (keeps sizes bounded)."""
        s = 1 << bits
        lo = Fraction(math.floor(self.lo * s), s)
        hi = Fraction(-math.floor(-self.hi * s), s)
        return RationalInterval(lo, hi)

    def decimal_outward(self, digits: int) -> "RationalInterval":
        s = 10**digits
        return RationalInterval(Fraction(math.floor(self.lo * s), s), Fraction(-math.floor(-self.hi * s), s))

    def __repr__(self) -> str:
        return f"RationalInterval({fmt_sci(self.lo, 12)}, {fmt_sci(self.hi, 12)})"


def _coerce(x) -> RationalInterval:
    if isinstance(x, RationalInterval):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalInterval.point(x)
    raise TypeError(f"cannot use {type(x).__name__} in interval arithmetic")


class Op(str, enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


def interval_arith(a: RationalInterval, b: RationalInterval, op) -> RationalInterval:
    op = Op(op)
    if op is Op.ADD:
        return a + b
    if op is Op.SUB:
        return a - b
    return a * b


def floor_div(num: int, den: int) -> int:
    return num // den if den > 0 else (-num) // (-den)


def certified_floor(iv: RationalInterval) -> Optional[int]:
    """Floor shared by every point of ``iv``, or ``None`` if the endpoints disagree."""
    lo = math.floor(iv.lo)
    return lo if lo == math.floor(iv.hi) else None


# integer roots ------------------------------------------------------------


def iroot(n: int, r: int) -> int:
    """Largest integer s with s**r <= n (n >= 0)."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if r == 1 or n < 2:
        return n
    if r == 2:
        return math.isqrt(n)
    s = 1 << -(-n.bit_length() // r)  # s**r >= n
    while True:
        t = ((r - 1) * s + n // s ** (r - 1)) // r
        if t >= s:
            break
        s = t
    while s**r > n:
        s -= 1
    while (s + 1) ** r <= n:
        s += 1
    return s


def root_bracket(x: Fraction, r: int, bits: int) -> RationalInterval:
    """Interval [lo, hi] with lo**r <= x <= hi**r and width 2**-bits, x >= 0."""
    x = as_fraction(x)
    scale = 1 << bits
    # floor((x * scale**r)**(1/r))
    s = iroot((x.numerator * scale**r) // x.denominator, r)
    lo = Fraction(s, scale)
    hi = Fraction(s + 1, scale)
    if lo**r == x:
        hi = lo
    return RationalInterval(lo, hi)


def rational_power_bracket(base: Fraction, exponent: Fraction, bits: int) -> RationalInterval:
    """Enclosure of base**exponent for base > 0 and rational exponent.

    base**(a/b) is bracketed by an integer b-th root of base**a, rounded outward.
    """
    base, exponent = as_fraction(base), as_fraction(exponent)
    if base <= 0:
        raise ValueError("base must be positive")
    a, b = exponent.numerator, exponent.denominator
    if a < 0:
        return rational_power_bracket(base, -exponent, bits + 8).reciprocal().round_outward(bits)
    return root_bracket(base**a, b, bits)


# decimal rendering ----------------------------------------------------------


def _decade(x: Fraction) -> int:
    """Exponent e with 10**e <= x < 10**(e+1), x > 0."""
    e = len(str(x.numerator)) - len(str(x.denominator))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def round_sig(x: Fraction, sig: int) -> tuple[int, int, int]:
    """(sign, mantissa, exponent) with x ~ sign * mantissa * 10**(exponent - sig + 1), half-up."""
    x = as_fraction(x)
    if x == 0:
        return 0, 0, 0
    sign = -1 if x < 0 else 1
    ax = abs(x)
    e = _decade(ax)
    scaled = ax / Fraction(10) ** (e - sig + 1)
    m = math.floor(scaled + Fraction(1, 2))
    if m >= 10**sig:
        m //= 10
        e += 1
    return sign, m, e


def fmt_sci(x: Number, sig: int) -> str:
    sign, m, e = round_sig(as_fraction(x), sig)
    if sign == 0:
        return "0"
    digits = str(m)
    body = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    return f"{'-' if sign < 0 else ''}{body}e{e:+03d}"


def _sci_body(m: int, e: int) -> str:
    digits = str(m)
    return digits[0] + ("." + digits[1:] if len(digits) > 1 else "") + f"e{e:+03d}"


def fmt_sci_bound(x: Number, sig: int, upper: bool) -> str:
    """Scientific rendering with ``sig`` digits rounded toward +inf (upper) or -inf."""
    x = as_fraction(x)
    if x == 0:
        return "0"
    e = _decade(abs(x))
    unit = Fraction(10) ** (e - sig + 1)
    m = math.ceil(x / unit) if upper else math.floor(x / unit)
    sign = "-" if m < 0 else ""
    m = abs(m)
    if m == 10**sig:  # rounded up into the next decade
        m, e = 10 ** (sig - 1), e + 1
    return sign + _sci_body(m, e)


def fmt_sci_up(x: Fraction, sig: int) -> str:
    """Like :func:`fmt_sci` for x > 0 but never below x."""
    return fmt_sci_bound(x, sig, upper=True)


def fmt_fixed(x: Number, places: int) -> str:
    """Decimal string with ``places`` fractional digits, rounded half-up."""
    x = as_fraction(x)
    s = 10**places
    n = math.floor(abs(x) * s + Fraction(1, 2))
    sign = "-" if x < 0 and n else ""
    ip, fp = divmod(n, s)
    return f"{sign}{ip}" + (f".{fp:0{places}d}" if places else "")


def certified_sig_digits(iv: RationalInterval, max_sig: int) -> Optional[tuple[int, int, int]]:
    """Largest-precision rounding shared by both endpoints, at most ``max_sig`` digits."""
    for sig in range(max_sig, 0, -1):
        a, b = round_sig(iv.lo, sig), round_sig(iv.hi, sig)
        if a == b:
            return a + (sig,)
    return None


def certified_decimal(iv: RationalInterval, max_sig: int) -> str:
    """Render ``iv`` with only the significant digits all of its points agree on."""
    if iv.lo == iv.hi == 0:
        return "0"
    if iv.lo < 0 < iv.hi:
        # only a magnitude bound is certified
        return "+-" + fmt_sci_up(max(-iv.lo, iv.hi), 2)
    r = certified_sig_digits(iv, max_sig)
    if r is None:
        return "?"
    sign, m, e, _ = r
    if sign == 0:
        return "0"
    digits = str(m)
    body = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    return f"{'-' if sign < 0 else ''}{body}e{e:+03d}"


def frac_str(x: Number) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"
