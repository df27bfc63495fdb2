"""
Symmetric exponential sums
==========================

sum_{|n|<=x} exp(2itn) equals sin((2x+1)t)/sin(t).  Both sides are evaluated
with certified error bounds and compared.
"""

from fractions import Fraction

from cfcert import E, ExpSumQuery, PiMultiple, SequenceSpec, equivalence_diagnostic, exp_sum_closed, exp_sum_direct
from cfcert.equidist import Form
from cfcert.exact import certified_decimal

q = ExpSumQuery(Fraction(7, 10), 10_000)
closed, direct = exp_sum_closed(q), exp_sum_direct(q)
print("closed:", certified_decimal(closed.re, 25))
print("direct:", certified_decimal(direct.re, 25), " error bound", float(direct.error_bound))

# exact multiples of pi hit the removable singularity: every term is 1
print("t = 3 pi, x = 10:", exp_sum_closed(ExpSumQuery(PiMultiple(3), 10)).re.lo)

# averages A_x: a rational multiple of pi stays at 2 + 1/x, the step 2e decays like 1/x
print(equivalence_diagnostic(SequenceSpec(Form.LINEAR_PI, r=1), [100, 1000]).to_csv())
print(equivalence_diagnostic(SequenceSpec(Form.LINEAR_REAL, alpha=E), [100, 1000, 10_000]).to_csv())
