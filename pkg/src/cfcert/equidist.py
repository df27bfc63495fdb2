"""Symmetric exponential sums sum_{-x<=n<=x} exp(2 i t n) and their averages.

The closed form sin((2x+1)t)/sin(t) is checked against direct summation; both
return certified enclosures of the real and imaginary parts.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .constants import Constant, approximate, pi_interval
from .exact import RationalInterval, certified_decimal, frac_str

DEFAULT_DIGITS = 30
_LOG2_10 = math.log2(10)


class NonDegeneracyError(ArithmeticError):
    """sin(t) could not be separated from zero."""


@dataclass(frozen=True)
class PiMultiple:
    """The real number coeff * pi, kept symbolic so multiples of pi are exact."""

    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def __str__(self) -> str:
        return "pi" if self.coeff == 1 else f"{self.coeff}*pi"


Param = Union[PiMultiple, RationalInterval, Fraction, int]


def _as_param(t: Param) -> Union[PiMultiple, RationalInterval]:
    if isinstance(t, (PiMultiple, RationalInterval)):
        return t
    return RationalInterval.point(Fraction(t))


@dataclass(frozen=True)
class ExpSumQuery:
    t: Param
    x: int

    def __post_init__(self):
        if self.x < 1:
            raise ValueError("x must be >= 1")
        object.__setattr__(self, "t", _as_param(self.t))

    @property
    def exact_pi_multiple(self) -> bool:
        return isinstance(self.t, PiMultiple)


@dataclass(frozen=True)
class ComplexEnclosure:
    re: RationalInterval
    im: RationalInterval

    @classmethod
    def exact(cls, re, im=0) -> "ComplexEnclosure":
        return cls(RationalInterval.point(re), RationalInterval.point(im))

    @property
    def error_bound(self) -> Fraction:
        return max(self.re.width, self.im.width) / 2

    @property
    def is_exact(self) -> bool:
        return self.re.is_point and self.im.is_point

    def overlaps(self, other: "ComplexEnclosure") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def abs_upper(self) -> Fraction:
        """Upper bound on the modulus (|re| + |im|)."""
        return abs(self.re).hi + abs(self.im).hi

    def scale(self, c: Fraction) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re * c, self.im * c)


# certified sine / cosine ------------------------------------------------------------


def _sincos_fixed(y: Fraction, bits: int) -> tuple[int, int, int]:
    """cos(y), sin(y) at scale 2**bits for |y| <= 2, with a shared ulp error bound."""
    one = 1 << bits
    Y = math.floor(y * one + Fraction(1, 2))
    c = s = 0
    term, err_t, err = one, 0, 1  # argument rounding costs < 1 ulp (Lipschitz 1)
    j = 0
    while True:
        if j % 4 == 0:
            c += term
        elif j % 4 == 1:
            s += term
        elif j % 4 == 2:
            c -= term
        else:
            s -= term
        err += err_t
        j += 1
        term = (term * Y) // (j * one)
        err_t = -(-err_t * 2 // j) + 1
        if term == 0 and j > 4:
            # true next term <= err_t ulps; the rest of the series is at most as large again
            err += 2 * err_t
            return c, s, err


def sincos_ball(t_mid: Fraction, t_rad: Fraction, bits: int) -> tuple[RationalInterval, RationalInterval]:
    """Enclosures of cos(t) and sin(t) for every t within t_rad of t_mid."""
    k_guess = round(t_mid / Fraction(355, 113))
    pi_digits = math.ceil((bits + abs(k_guess).bit_length() + 8) / _LOG2_10)
    piv = pi_interval(pi_digits)
    k = round(t_mid / piv.mid)
    y = t_mid - k * piv  # interval, width |k| * width(pi)
    y_mid, rad = y.mid, t_rad + y.width / 2
    c, s, err = _sincos_fixed(y_mid, bits)
    scale = Fraction(1, 1 << bits)
    sign = -1 if k % 2 else 1
    r = err * scale + rad
    cos_iv = RationalInterval.ball(sign * c * scale, r).intersect(RationalInterval(-1, 1))
    sin_iv = RationalInterval.ball(sign * s * scale, r).intersect(RationalInterval(-1, 1))
    return cos_iv, sin_iv


def _bits(digits: int) -> int:
    return math.ceil(digits * _LOG2_10) + 12


def sin_enclosure(t: Param, digits: int = DEFAULT_DIGITS) -> RationalInterval:
    t = _as_param(t)
    if isinstance(t, PiMultiple):
        r = t.coeff % 2
        exact = {Fraction(0): 0, Fraction(1): 0, Fraction(1, 2): 1, Fraction(3, 2): -1}
        if r in exact:
            return RationalInterval.point(exact[r])
        piv = pi_interval(digits + 4)
        return sincos_ball((r * piv).mid, (r * piv).width / 2, _bits(digits))[1]
    return sincos_ball(t.mid, t.width / 2, _bits(digits))[1]


def cos_enclosure(t: Param, digits: int = DEFAULT_DIGITS) -> RationalInterval:
    t = _as_param(t)
    if isinstance(t, PiMultiple):
        r = t.coeff % 2
        exact = {Fraction(0): 1, Fraction(1): -1, Fraction(1, 2): 0, Fraction(3, 2): 0}
        if r in exact:
            return RationalInterval.point(exact[r])
        piv = pi_interval(digits + 4)
        return sincos_ball((r * piv).mid, (r * piv).width / 2, _bits(digits))[0]
    return sincos_ball(t.mid, t.width / 2, _bits(digits))[0]


def _is_degenerate(t: Union[PiMultiple, RationalInterval]) -> bool:
    if isinstance(t, PiMultiple):
        return t.coeff.denominator == 1
    return t.is_point and t.lo == 0


def _scaled(t: Union[PiMultiple, RationalInterval], c: int):
    return PiMultiple(t.coeff * c) if isinstance(t, PiMultiple) else t * c


# the two evaluations -----------------------------------------------------------------


def exp_sum_closed(query: ExpSumQuery, digits: int = DEFAULT_DIGITS, max_digits: int = 2000) -> ComplexEnclosure:
    """sin((2x+1)t)/sin(t), or exactly 2x+1 when t is an exact multiple of pi."""
    t, x = query.t, query.x
    if _is_degenerate(t):
        return ComplexEnclosure.exact(2 * x + 1)
    work = digits
    while True:
        s = sin_enclosure(t, work)
        if not s.contains_zero() and abs(s).lo >= Fraction(1, 10 ** (digits // 2)):
            break
        input_limited = isinstance(t, RationalInterval) and t.width > Fraction(1, 10**work)
        if work >= max_digits or input_limited:
            break
        work *= 2
    if s.contains_zero():
        raise NonDegeneracyError("cannot certify non-degeneracy: sin(t) encloses 0")
    # losing log10(1/|sin t|) digits in the quotient
    extra = max(0, math.ceil(-math.log10(float(abs(s).lo)))) + 2 if abs(s).lo < 1 else 2
    s = sin_enclosure(t, work + extra)
    num = sin_enclosure(_scaled(t, 2 * x + 1), work + extra)
    return ComplexEnclosure(num / s, RationalInterval.point(0))


def exp_sum_direct(query: ExpSumQuery, digits: int = DEFAULT_DIGITS) -> ComplexEnclosure:
    """Term-by-term sum of exp(2 i t n), n = -x..x, with running error bounds.

    Powers of z = exp(2 i t) are formed by repeated fixed-point multiplication;
    the error of the n-th power grows by at most |z error| + 2 ulps per step
    because |z| = 1 exactly.
    """
    t, x = query.t, query.x
    if isinstance(t, PiMultiple) and (4 * t.coeff).denominator == 1:
        # z is a fourth root of unity: the sum is an exact Gaussian integer
        z = [(1, 0), (0, 1), (-1, 0), (0, -1)][int(4 * t.coeff) % 4]
        re, im = 1, 0
        wr, wi = 1, 0
        for _ in range(x):
            wr, wi = wr * z[0] - wi * z[1], wr * z[1] + wi * z[0]
            re += 2 * wr  # w and its conjugate
        return ComplexEnclosure.exact(re, im)

    bits = math.ceil(digits * _LOG2_10) + 2 * x.bit_length() + 16
    if isinstance(t, PiMultiple):
        t_iv = t.coeff * pi_interval(math.ceil(bits / _LOG2_10) + 4)
    else:
        t_iv = t
    t_mid, t_rad = t_iv.mid, t_iv.width / 2
    one = 1 << bits
    cz, sz = sincos_ball(2 * t_mid, Fraction(0), bits)
    zr = math.floor(cz.mid * one)
    zi = math.floor(sz.mid * one)
    # |z_computed - z| in ulps: ball radius plus the floor above, for each component
    ez = 2 * (math.ceil(cz.width / 2 * one) + 1)

    wr, wi = one, 0
    err_w = 0
    sr, si = one, 0  # n = 0 term
    err_sum = 0
    for _ in range(x):
        wr, wi = (wr * zr - wi * zi) >> bits, (wr * zi + wi * zr) >> bits
        err_w = err_w + ez + -(-(err_w * ez) // one) + 2
        # term n and its exact conjugate for -n
        sr += 2 * wr
        err_sum += 2 * err_w
    scale = Fraction(1, one)
    # spread of the sum over t in the input interval: |d/dt| <= sum 2|n|
    lip = 2 * t_rad * x * (x + 1)
    r = err_sum * scale + lip
    return ComplexEnclosure(RationalInterval.ball(sr * scale, r), RationalInterval.ball(si * scale, r))


def envelope(query: ExpSumQuery, digits: int = DEFAULT_DIGITS) -> Optional[Fraction]:
    """Upper bound on 1/|sin t| (None when t is an exact multiple of pi)."""
    if _is_degenerate(query.t):
        return None
    s = abs(sin_enclosure(query.t, digits))
    if s.lo == 0:
        return None
    return 1 / s.lo


# equivalence diagnostic -------------------------------------------------------------------


class Form(str, enum.Enum):
    LINEAR_PI = "linear_pi"
    LINEAR_REAL = "linear_real"


@dataclass(frozen=True)
class SequenceSpec:
    """S_n = 2 pi r n (LINEAR_PI) or S_n = 2 (a alpha - c) n (LINEAR_REAL)."""

    form: Form
    r: Fraction = Fraction(0)
    alpha: Optional[Constant] = None
    a: Fraction = Fraction(1)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "form", Form(self.form))
        for f in ("r", "a", "c"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if self.form is Form.LINEAR_REAL:
            if self.alpha is None:
                raise ValueError("LINEAR_REAL needs a constant alpha")
            if self.a == 0:
                raise ValueError("LINEAR_REAL needs a != 0")

    def half_step(self, digits: int) -> Union[PiMultiple, RationalInterval]:
        """The t with S_n = 2 t n."""
        if self.form is Form.LINEAR_PI:
            return PiMultiple(self.r)
        return self.a * approximate(self.alpha, digits) - self.c


@dataclass(frozen=True)
class DiagnosticRow:
    x: int
    average: ComplexEnclosure
    envelope: Optional[Fraction]  # bound on |A_x|, i.e. 1/(x |sin t|)


@dataclass(frozen=True)
class DiagnosticTable:
    spec: SequenceSpec
    rows: tuple[DiagnosticRow, ...]

    def to_csv(self, sig: int = 20) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "re(A)", "im(A)", "envelope"])
        for row in self.rows:
            env = "inf" if row.envelope is None else certified_decimal(RationalInterval.point(row.envelope), sig)
            w.writerow([row.x, certified_decimal(row.average.re, sig), certified_decimal(row.average.im, sig), env])
        return buf.getvalue()

    def to_dict(self, sig: int = 20) -> dict:
        rows = []
        for row in self.rows:
            d = {"x": row.x, "re": certified_decimal(row.average.re, sig), "im": certified_decimal(row.average.im, sig),
                 "envelope": None if row.envelope is None else certified_decimal(RationalInterval.point(row.envelope), sig)}
            if row.average.is_exact:
                d["re_exact"] = frac_str(row.average.re.lo)
            rows.append(d)
        return {"form": self.spec.form.value, "rows": rows}


def equivalence_diagnostic(spec: SequenceSpec, x_values: Sequence[int], digits: int = DEFAULT_DIGITS,
                           method: str = "closed") -> DiagnosticTable:
    """A_x = (1/x) sum_{-x<=n<=x} exp(i S_n) with the 1/(x |sin t|) envelope, per x."""
    xs = list(x_values)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_values must be increasing")
    rows = []
    for x in xs:
        t = spec.half_step(digits + 2 * len(str(x)) + 5)
        q = ExpSumQuery(t, x)
        total = exp_sum_closed(q, digits) if method == "closed" else exp_sum_direct(q, digits)
        env = envelope(q, digits)
        rows.append(DiagnosticRow(x, total.scale(Fraction(1, x)), None if env is None else env / x))
    return DiagnosticTable(spec, tuple(rows))
