"""
Log canonical thresholds from jet dimensions
============================================

The threshold is n minus the largest value of dim Z_m / (m + 1).
Sampling m = kd - 1 gives upper bounds; for homogeneous F the bound
min((n - r)/d, 1) holds from below.
"""

import json

from jetlct import lct_estimate, parse_poly

for text, n in [("x1^3 + x2^3", 2), ("x1^3 + x2^3", 3), ("x1*x2*x3", 3), ("x1^4 + x2^4 + x3^4", 3)]:
    R = lct_estimate(parse_poly(text, n), 2)
    dims = [row.dim_jets for row in R.dim_table]
    print(f"{text:22s} n={n} r={R.r:2d} dims={dims} upper={R.upper_bound} lower={R.lower_bound} exact={R.exact}")

# Non-homogeneous input only gets upper bounds
R = lct_estimate(parse_poly("x1^2 + x2", 2), 3)
print(R.upper_bound, R.lower_bound, R.notes)

# Reports serialize with rationals as strings
report = lct_estimate(parse_poly("x1^2", 2), 2).to_dict()
report.pop("timings")
print(json.dumps({k: report[k] for k in ("input", "r", "upper_bound", "lower_bound", "exact")}))
print(json.dumps(report["dim_table"]))
