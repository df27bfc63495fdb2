"""
Approximating e*pi by products of convergents
=============================================

p/q runs over convergents of e and u/v over convergents of pi.  The error
|e*pi - pu/(qv)| is compared with bounds built from the next partial quotients.
"""

from cfcert.exact import certified_decimal
from cfcert.product import SearchConfig, best_per_n, inequality_sweep, reproduce_table, search_correlated

# the two published rows: one reproduces, one does not
for name in ("t40", "t80"):
    d = reproduce_table(name).to_dict()
    print(f"{name}: certified error {d['error']['decimal']}   printed {d['printed_error']}")
    print(f"      float64 gives {d['float64_replay']}; bound preset matched: {d['bound_convention']}")

# the inequality over a grid of (n, m)
reports = inequality_sweep(100, 60)
print("grid pairs:", len(reports), "failures:", sum(not r.holds for r in reports))

# correlated search: v_m inside [(2k)^(1-eps) q, 2 (2k)^(1-eps) q], best hit per n
for r in best_per_n(search_correlated(SearchConfig(n_limit=60))):
    print(f"  n={r.n:3d} m={r.m:3d}  error {certified_decimal(r.error_interval, 8)}  holds={r.holds}")
