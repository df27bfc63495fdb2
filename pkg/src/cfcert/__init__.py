"""Certified continued fractions, product approximations, exponential sums and zeta series."""

from .cf import (
    ContinuedFraction,
    Convergent,
    cf_expand,
    continuant_growth_report,
    convergents,
    euler_e_quotient,
    invert_cf,
    lemma3_check,
)
from .constants import CBRT2, E, LN2, PI, ZETA3, Constant, Kind, approximate, parse_constant, sqrt
from .equidist import ExpSumQuery, PiMultiple, SequenceSpec, equivalence_diagnostic, exp_sum_closed, exp_sum_direct
from .exact import (
    ExactRational,
    IndeterminateError,
    PrecisionCeilingError,
    RationalInterval,
    certified_floor,
    interval_arith,
)
from .product import (
    Convention,
    ProductApproxReport,
    SearchConfig,
    classify_growth,
    lemma4_bounds,
    product_error,
    reproduce_table,
    search_correlated,
)
from .zeta import bernoulli, certified_exp, euler_even_zeta_coeff, pi_representation, ramanujan_odd_zeta

__version__ = "0.1.0"
