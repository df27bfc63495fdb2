"""
Continued fractions of classical constants
==========================================

Partial quotients are emitted only when both ends of an enclosure agree, and
precision is doubled whenever they do not.
"""

from cfcert import CBRT2, E, PI, cf_expand, convergents, euler_e_quotient, invert_cf
from cfcert.cf import continuant_growth_report, lemma3_suite

print("pi     ", cf_expand(PI, 12).quotients)
print("2^(1/3)", cf_expand(CBRT2, 12).quotients)

# e follows 2; 1, 2, 1; 1, 4, 1; 1, 6, 1; ...
cf = cf_expand(E, 3000)
print("e: 3000 quotients agree with the closed pattern:",
      all(a == euler_e_quotient(i) for i, a in enumerate(cf.quotients)))

# convergents p_n/q_n and the 1/(a_{n+1} q_n^2) bound on |e - p_n/q_n|
for c in convergents(cf_expand(E, 10)):
    print(f"  n={c.index:2d}  {c.p}/{c.q}")
bad = [r.index for r in lemma3_suite(E, 200) if not r.holds]
print("bound failures over 200 convergents of e:", bad)

# 1/pi only shifts the expansion
print("1/pi   ", invert_cf(cf_expand(PI, 6)).quotients)

# continuants grow at least like Fibonacci numbers
rep = continuant_growth_report(convergents(cf_expand(E, 40)))
print("q_n >= Fib(n+1) for all n:", rep.fibonacci_ok)
for row in rep.rows[:6]:
    print(f"  k={row.k} t={row.t}  q ratio / (4k)^(t+1) = {float(row.relative):.4f}")
