"""
Even and odd zeta values
========================

Even values are rational multiples of powers of pi.  For s = 3, 5, 7 a rational
multiple of pi^s is corrected by a rapidly convergent e^(2 pi n) series.
"""

from cfcert.constants import ZETA3, approximate
from cfcert.exact import certified_decimal
from cfcert.zeta import bernoulli, euler_even_zeta_coeff, pi_representation, ramanujan_odd_zeta, zeta_direct_bracket

print("B_0..B_12:", [str(b) for b in bernoulli(12).values])
for n in range(1, 5):
    print(f"zeta({2 * n}) = {euler_even_zeta_coeff(n)} * pi^{2 * n}")

# two independent routes to zeta(3)
print("series      ", certified_decimal(ramanujan_odd_zeta(3, 40), 40))
print("binomial sum", certified_decimal(approximate(ZETA3, 40), 40))

# zeta(5), zeta(7) against a plain partial sum with integral tail bounds
for s, n in ((5, 4000), (7, 600)):
    print(f"zeta({s})", certified_decimal(ramanujan_odd_zeta(s, 15), 15),
          "bracket", certified_decimal(zeta_direct_bracket(s, n), 15))

for s in range(2, 8):
    print(pi_representation(s, 25).to_dict())
