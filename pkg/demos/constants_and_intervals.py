"""
Certified constants
===================

Every constant comes back as an interval with rational endpoints.  The true
value is inside; the width is below the requested 10**-digits.
"""

from cfcert import E, PI, approximate, sqrt
from cfcert.constants import pi_interval, product
from cfcert.exact import certified_decimal

# e and pi to 40 digits; only digits shared by both endpoints are printed
for const in (E, PI, sqrt(2)):
    iv = approximate(const, 40)
    print(f"{const.name:8s} {certified_decimal(iv, 40)}")

# the product e*pi is enclosed by multiplying two enclosures
epi = approximate(product(E, PI), 20)
print("e*pi    ", certified_decimal(epi, 20))

# two unrelated arctan identities for pi must overlap
a, b = pi_interval(300, "machin"), pi_interval(300, "hutton")
print("pi identities overlap at 300 digits:", a.overlaps(b))
