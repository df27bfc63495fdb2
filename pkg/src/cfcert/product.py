"""Product approximations alpha*beta ~ (p u)/(q v) from two convergent streams.

Quotient-index conventions for the error bound
----------------------------------------------
With 0-based convergent indices ``n`` (for alpha) and ``m`` (for beta), the
three presets pick these quotients:

==============  ==================  ==================  ======================
preset          alpha-term quotient beta-term quotient  cross term
==============  ==================  ==================  ======================
``eq2036``      a_{n+1}             b_{m+1}             a_{n+1} b_{m+1}
``eq6029``      a_{n+1}             b_{m+1}             a_{n+2} b_{m+2}
``table-row``   a_n                 b_m                 a_{n+1} b_{m+1}
==============  ==================  ==================  ======================

``eq2036`` and ``eq6029`` use ``2 * beta`` and ``2 * alpha`` (upper endpoints of
certified enclosures) as coefficients; ``eq6029`` is the same inequality read
with convergents counted from 1.  ``table-row`` uses the exact ratios u/v and
p/q as coefficients.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cf import Convergent, cf_expand, convergents
from .constants import E, PI, Constant, approximate, product
from .exact import (
    PrecisionCeilingError,
    RationalInterval,
    certified_decimal,
    certified_sig_digits,
    fmt_sci_bound,
    frac_str,
    rational_power_bracket,
    round_sig,
)


class QuotientSupplyError(RuntimeError):
    """More partial quotients were requested than can be certified."""


class Convention(str, enum.Enum):
    EQ2036 = "eq2036"
    EQ6029 = "eq6029"
    TABLE_ROW = "table-row"


_OFFSETS = {
    Convention.EQ2036: (1, 1, 1, 1),
    Convention.EQ6029: (1, 1, 2, 2),
    Convention.TABLE_ROW: (0, 0, 1, 1),
}


class QuotientSupply:
    """Lazily extended certified quotients and convergents of one constant."""

    def __init__(self, const: Constant, max_terms: int = 5000):
        self.const = const
        self.max_terms = max_terms
        self.quotients: tuple[int, ...] = ()
        self.convs: list[Convergent] = []

    def ensure(self, count: int) -> None:
        if count <= len(self.quotients):
            return
        if count > self.max_terms:
            raise QuotientSupplyError(
                f"quotient supply exhausted: {count} quotients of {self.const} requested, limit {self.max_terms}")
        want = min(self.max_terms, max(count, 2 * len(self.quotients), 32))
        try:
            cf = cf_expand(self.const, want)
        except PrecisionCeilingError as exc:
            if len(exc.partial) < count:
                raise QuotientSupplyError(
                    f"quotient supply exhausted: only {len(exc.partial)} certified quotients of {self.const}") from exc
            cf = exc.partial
        self.quotients = cf.quotients
        self.convs = convergents(cf)

    def quotient(self, i: int) -> int:
        self.ensure(i + 1)
        return self.quotients[i]

    def convergent(self, i: int) -> Convergent:
        self.ensure(i + 1)
        return self.convs[i]

    def index_of(self, p: int, q: int, limit: int = 400) -> int:
        """0-based index of the convergent equal to p/q (matched by value)."""
        i = 0
        while i < limit:
            c = self.convergent(i)
            if (c.p, c.q) == (p, q):
                return i
            if c.q > q:
                break
            i += 1
        raise LookupError(f"{p}/{q} is not a convergent of {self.const}")


# error and bounds ---------------------------------------------------------------


def product_error(conv_a: Convergent, conv_b: Convergent, target_iv: RationalInterval) -> RationalInterval:
    """Enclosure of |alpha*beta - (p u)/(q v)| given an enclosure of alpha*beta."""
    approx = Fraction(conv_a.p * conv_b.p, conv_a.q * conv_b.q)
    return abs(target_iv - approx)


def lemma4_bounds(conv_a: Convergent, conv_b: Convergent, a_next: int, b_next: int,
                  alpha_iv: RationalInterval, beta_iv: RationalInterval,
                  a_row: int | None = None, b_row: int | None = None) -> tuple[Fraction, Fraction]:
    """(sound form with 2*beta, 2*alpha upper endpoints, exact convergent-ratio form).

    ``a_row``/``b_row`` replace ``a_next``/``b_next`` in the first two terms of
    the ratio form, which is how the printed table rows are laid out.
    """
    if a_next < 1 or b_next < 1:
        raise ValueError("quotients must be >= 1")
    q2, v2 = conv_a.q ** 2, conv_b.q ** 2
    cross = Fraction(1, a_next * b_next * q2 * v2)
    sound = 2 * beta_iv.hi / (a_next * q2) + 2 * alpha_iv.hi / (b_next * v2) + cross
    ar = a_next if a_row is None else a_row
    br = b_next if b_row is None else b_row
    ratio = conv_b.value / (ar * q2) + conv_a.value / (br * v2) + cross
    return sound, ratio


def convention_quotients(convention: Convention, n: int, m: int,
                         qa: QuotientSupply, qb: QuotientSupply) -> tuple[int, int, int, int]:
    da, db, ca, cb = _OFFSETS[Convention(convention)]
    return qa.quotient(n + da), qb.quotient(m + db), qa.quotient(n + ca), qb.quotient(m + cb)


def convention_bound(convention: Convention, conv_a: Convergent, conv_b: Convergent,
                     quotients: tuple[int, int, int, int],
                     alpha_iv: RationalInterval, beta_iv: RationalInterval) -> Fraction:
    a1, b1, a2, b2 = quotients
    q2, v2 = conv_a.q ** 2, conv_b.q ** 2
    cross = Fraction(1, a2 * b2 * q2 * v2)
    if Convention(convention) is Convention.TABLE_ROW:
        return conv_b.value / (a1 * q2) + conv_a.value / (b1 * v2) + cross
    return 2 * beta_iv.hi / (a1 * q2) + 2 * alpha_iv.hi / (b1 * v2) + cross


# reports ------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductApproxReport:
    n: int
    m: int
    conv_a: Convergent
    conv_b: Convergent
    a_next: int
    b_next: int
    error_interval: RationalInterval
    bound_eq2036: Fraction
    bound_table_form: Fraction
    convention: Convention
    bound_convention: Fraction
    holds: bool
    k: Optional[int] = None
    in_window: Optional[bool] = None

    @property
    def approximation(self) -> Fraction:
        return Fraction(self.conv_a.p * self.conv_b.p, self.conv_a.q * self.conv_b.q)

    def to_dict(self, sig: int = 12) -> dict:
        d = {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "p": str(self.conv_a.p),
            "q": str(self.conv_a.q),
            "u": str(self.conv_b.p),
            "v": str(self.conv_b.q),
            "a_next": self.a_next,
            "b_next": self.b_next,
            "error": interval_dict(self.error_interval, sig),
            "bound_eq2036": rational_dict(self.bound_eq2036, sig),
            "bound_table_form": rational_dict(self.bound_table_form, sig),
            "convention": self.convention.value,
            "bound_convention": rational_dict(self.bound_convention, sig),
            "holds": self.holds,
        }
        if self.in_window is not None:
            d["in_window"] = self.in_window
        return d

    def to_json(self, sig: int = 12) -> str:
        return json.dumps(self.to_dict(sig))


def rational_dict(x: Fraction, sig: int) -> dict:
    return {"decimal": certified_decimal(RationalInterval.point(x), sig), "exact": frac_str(x)}


def interval_dict(iv: RationalInterval, sig: int) -> dict:
    return {"decimal": certified_decimal(iv, sig), "lo": frac_str(iv.lo), "hi": frac_str(iv.hi)}


def _error_digits(conv_a: Convergent, conv_b: Convergent, sig: int) -> int:
    return 2 * (len(str(conv_a.q)) + len(str(conv_b.q))) + sig + 10


def make_report(n: int, m: int, qa: QuotientSupply, qb: QuotientSupply,
                convention: Convention = Convention.EQ6029, sig: int = 30,
                k: int | None = None, in_window: bool | None = None) -> ProductApproxReport:
    """Evaluate the product inequality for one (n, m), refining until it is decided."""
    convention = Convention(convention)
    ca, cb = qa.convergent(n), qb.convergent(m)
    a_next, b_next = qa.quotient(n + 1), qb.quotient(m + 1)
    a_row, b_row = qa.quotient(n), qb.quotient(m)
    quots = convention_quotients(convention, n, m, qa, qb)
    target = product(qa.const, qb.const)
    digits = _error_digits(ca, cb, sig)
    for _ in range(6):
        alpha_iv = approximate(qa.const, digits)
        beta_iv = approximate(qb.const, digits)
        err = product_error(ca, cb, approximate(target, digits))
        b2036, btab = lemma4_bounds(ca, cb, a_next, b_next, alpha_iv, beta_iv, a_row, b_row)
        bconv = convention_bound(convention, ca, cb, quots, alpha_iv, beta_iv)
        limit = min(b2036, bconv)
        decided = (err.lo > 0 or err.is_point) and (err.hi < limit or err.lo >= limit)
        if decided:
            break
        digits *= 2
    holds = err.lo > 0 and err.hi < limit
    return ProductApproxReport(n, m, ca, cb, a_next, b_next, err, b2036, btab,
                               convention, bconv, holds, k, in_window)


# Algorithm-1 search --------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    epsilon: Fraction = Fraction(1, 20)
    window_scale_low: Fraction = Fraction(1)
    window_scale_high: Optional[Fraction] = Fraction(2)  # None: unbounded
    n_start: int = 1
    n_limit: int = 100
    m_limit: int = 60
    alpha: Constant = E
    beta: Constant = PI
    convention: Convention = Convention.EQ6029
    max_terms: int = 5000
    require_residue: bool = True  # n must be 1 mod 3

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "window_scale_low", Fraction(self.window_scale_low))
        if self.window_scale_high is not None:
            object.__setattr__(self, "window_scale_high", Fraction(self.window_scale_high))
        object.__setattr__(self, "convention", Convention(self.convention))
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.window_scale_low < 0:
            raise ValueError("window_scale_low must be >= 0")
        if self.window_scale_high is not None and not self.window_scale_low < self.window_scale_high:
            raise ValueError("window_scale_low must be below window_scale_high")
        if self.require_residue and self.n_start % 3 != 1:
            raise ValueError("n_start must be 1 mod 3")


def window_exponent(config: SearchConfig) -> Fraction:
    return 1 - config.epsilon


def in_window(v: int, q: int, k: int, config: SearchConfig) -> bool:
    """Exact test of low*(2k)**(1-eps)*q <= v <= high*(2k)**(1-eps)*q.

    With 1 - eps = c/b the comparison v >= s*W*q is (v/(s q))**b >= (2k)**c,
    an identity between rationals, so no rounding is involved.
    """
    c, b = window_exponent(config).numerator, window_exponent(config).denominator
    power = (2 * k) ** c
    lo = config.window_scale_low
    if lo > 0 and Fraction(v, 1) ** b < (lo * q) ** b * power:
        return False
    hi = config.window_scale_high
    if hi is not None and Fraction(v, 1) ** b > (hi * q) ** b * power:
        return False
    return True


def window_bounds(k: int, q: int, config: SearchConfig, bits: int = 64) -> tuple[RationalInterval, Optional[RationalInterval]]:
    """Certified brackets of the two window endpoints for display."""
    w = rational_power_bracket(Fraction(2 * k), window_exponent(config), bits)
    low = w * (config.window_scale_low * q)
    high = None if config.window_scale_high is None else w * (config.window_scale_high * q)
    return low, high


def scan_partners(n: int, k: int, qa: QuotientSupply, qb: QuotientSupply, config: SearchConfig) -> list[ProductApproxReport]:
    """All m <= m_limit whose continuant v_m falls in the window around q_n."""
    q = qa.convergent(n).q
    qb.ensure(config.m_limit + 3)
    hits = []
    for m in range(config.m_limit + 1):
        v = qb.convergent(m).q
        if in_window(v, q, k, config):
            hits.append(make_report(n, m, qa, qb, config.convention, k=k, in_window=True))
    return hits


def search_correlated(config: SearchConfig) -> list[ProductApproxReport]:
    """Correlated-convergent search over n = 1 mod 3 (k = (n+2)/3, a_{n+1} = 2k for e)."""
    if config.n_limit < config.n_start:
        return []
    qa = QuotientSupply(config.alpha, config.max_terms)
    qb = QuotientSupply(config.beta, config.max_terms)
    qa.ensure(config.n_limit + 3)
    qb.ensure(config.m_limit + 3)
    step = 3 if config.require_residue else 1
    reports: list[ProductApproxReport] = []
    for n in range(config.n_start, config.n_limit + 1, step):
        k = (n + 2) // 3
        if config.alpha == E and n % 3 == 1 and qa.quotient(n + 1) != 2 * k:
            raise AssertionError(f"a_{n + 1} of e should be {2 * k}")
        reports.extend(scan_partners(n, k, qa, qb, config))
    return reports


def best_per_n(reports: Sequence[ProductApproxReport]) -> list[ProductApproxReport]:
    """Keep the minimum-error hit for each n; ties go to the smaller m."""
    best: dict[int, ProductApproxReport] = {}
    for r in reports:
        cur = best.get(r.n)
        if cur is None or (r.error_interval.mid, r.m) < (cur.error_interval.mid, cur.m):
            best[r.n] = r
    return [best[n] for n in sorted(best)]


def inequality_sweep(n_max: int = 100, m_max: int = 60, convention: Convention = Convention.EQ6029,
                     alpha: Constant = E, beta: Constant = PI) -> list[ProductApproxReport]:
    """Reports for every n = 1 mod 3 up to n_max and every m up to m_max."""
    qa, qb = QuotientSupply(alpha), QuotientSupply(beta)
    qa.ensure(n_max + 3)
    qb.ensure(m_max + 3)
    return [make_report(n, m, qa, qb, convention) for n in range(1, n_max + 1, 3) for m in range(m_max + 1)]


# growth classification -------------------------------------------------------------


class Growth(str, enum.Enum):
    SUBLINEAR = "sublinear"
    LINEAR = "linear"
    SUPERLINEAR = "superlinear"


@dataclass(frozen=True)
class GrowthClass:
    classification: Growth
    exponent: float
    delta: Optional[Fraction] = None
    terms: int = 0


def classify_growth(quotients: Sequence[int]) -> GrowthClass:
    """Fit log(max_{i<=m} b_i) against log m over i >= 1 (finite-range diagnostic)."""
    b = [int(x) for x in quotients[1:]]
    if len(b) < 10:
        raise ValueError("need at least 10 quotients after b_0")
    running = np.maximum.accumulate(np.array([math.log(x) for x in b]))
    m = np.log(np.arange(1, len(b) + 1))
    slope = float(np.polyfit(m, running, 1)[0])
    if slope < 0.5:
        return GrowthClass(Growth.SUBLINEAR, slope, terms=len(b))
    if slope <= 1.2:
        return GrowthClass(Growth.LINEAR, slope, terms=len(b))
    return GrowthClass(Growth.SUPERLINEAR, slope, Fraction(slope - 1).limit_denominator(10**6), len(b))


# published table rows ------------------------------------------------------------------------


@dataclass(frozen=True)
class PrintedTable:
    name: str
    label_nm: tuple[int, int]
    label_quotients: tuple[int, int]
    p: int
    q: int
    u: int
    v: int
    printed_error: str
    printed_bound: str


TABLES = {
    "t40": PrintedTable("t40", (19, 10), (12, 1), 13580623, 4996032, 5419351, 1725033,
                      "0.00000000000012256862192", "0.000000000000136378880"),
    "t80": PrintedTable("t80", (31, 21), (20, 2), 22526049624551, 8286870547680, 3587785776203, 1142027682075,
                      "8.32849575322710174432272e-25", "1.04439176914510045201022e-24"),
}


def parse_printed(text: str) -> tuple[Fraction, int]:
    """Value and significant-digit count of a printed decimal such as ``0.000123`` or ``1.20e-5``."""
    t = text.strip().lower()
    mant = t.split("e")[0].replace("-", "").replace(".", "")
    sig = len(mant.lstrip("0"))
    return Fraction(t), sig


def matches_printed(iv: RationalInterval, printed: str) -> bool:
    """True iff every point of ``iv`` rounds to the printed digits."""
    value, sig = parse_printed(printed)
    cert = certified_sig_digits(iv, sig)
    return cert is not None and cert[3] == sig and cert[:3] == round_sig(value, sig)


@dataclass
class TableReproduction:
    table: PrintedTable
    n: int
    m: int
    quotients: dict
    error: RationalInterval
    error_matches: bool
    bounds: dict  # convention -> Fraction
    bound_matches: dict  # convention -> bool
    bound_exceeds_error: dict  # convention -> bool
    matched_convention: Optional[Convention]
    recovered_by_search: bool
    float64_replay: str
    sig: int = field(default=0)

    @property
    def bound_mismatch(self) -> bool:
        return self.matched_convention is None

    def to_dict(self) -> dict:
        t = self.table
        _, err_sig = parse_printed(t.printed_error)
        _, bnd_sig = parse_printed(t.printed_bound)
        return {
            "table": t.name,
            "printed_label": {"n": t.label_nm[0], "m": t.label_nm[1], "a_n": t.label_quotients[0],
                            "b_m": t.label_quotients[1]},
            "index_convention": "0-based; rows matched by convergent value",
            "n": self.n,
            "m": self.m,
            "quotients": self.quotients,
            "p": str(t.p),
            "q": str(t.q),
            "u": str(t.u),
            "v": str(t.v),
            "error": {
                "decimal": certified_decimal(self.error, err_sig),
                "lo": fmt_sci_bound(self.error.lo, 40, upper=False),
                "hi": fmt_sci_bound(self.error.hi, 40, upper=True),
            },
            "printed_error": t.printed_error,
            "error_matches_printed": self.error_matches,
            "float64_replay": self.float64_replay,
            "bounds": {
                c.value: {
                    "decimal": certified_decimal(RationalInterval.point(b), bnd_sig),
                    "exact": frac_str(b),
                    "matches_printed": self.bound_matches[c],
                    "exceeds_error": self.bound_exceeds_error[c],
                }
                for c, b in self.bounds.items()
            },
            "printed_bound": t.printed_bound,
            "bound_convention": None if self.matched_convention is None else self.matched_convention.value,
            "bound_mismatch": self.bound_mismatch,
            "recovered_by_search": self.recovered_by_search,
        }


def reproduce_table(name: str) -> TableReproduction:
    t = TABLES[name]
    qa, qb = QuotientSupply(E), QuotientSupply(PI)
    n, m = qa.index_of(t.p, t.q), qb.index_of(t.u, t.v)
    ca, cb = qa.convergent(n), qb.convergent(m)
    digits = _error_digits(ca, cb, 40)
    alpha_iv, beta_iv = approximate(E, digits), approximate(PI, digits)
    err = product_error(ca, cb, approximate(product(E, PI), digits))
    order = (Convention.TABLE_ROW, Convention.EQ2036, Convention.EQ6029)
    bounds, matches, exceeds = {}, {}, {}
    for c in order:
        b = convention_bound(c, ca, cb, convention_quotients(c, n, m, qa, qb), alpha_iv, beta_iv)
        bounds[c] = b
        matches[c] = matches_printed(RationalInterval.point(b), t.printed_bound)
        exceeds[c] = err.hi < b
    matched = next((c for c in order if matches[c]), None)
    quotients = {"a_n": qa.quotient(n), "b_m": qb.quotient(m), "a_n+1": qa.quotient(n + 1),
                 "b_m+1": qb.quotient(m + 1), "a_n+2": qa.quotient(n + 2), "b_m+2": qb.quotient(m + 2)}
    # unbounded window, n fixed at the row's convergent, m up to the row's m
    cfg = SearchConfig(window_scale_low=Fraction(0), window_scale_high=None, n_start=n, n_limit=n,
                       m_limit=m, require_residue=False, convention=Convention.EQ2036)
    hits = best_per_n(scan_partners(n, (n + 2) // 3, qa, qb, cfg))
    recovered = bool(hits) and (hits[0].conv_b.p, hits[0].conv_b.q) == (t.u, t.v)
    replay = repr(abs(math.e * math.pi - (t.p / t.q) * (t.u / t.v)))
    return TableReproduction(t, n, m, quotients, err, matches_printed(err, t.printed_error), bounds,
                             matches, exceeds, matched, recovered, replay)
