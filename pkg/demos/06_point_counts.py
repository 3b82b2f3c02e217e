"""
Dimensions from point counts
============================

Counting F_p points of a jet ideal gives a second, independent estimate
of its dimension: the count grows like p^dim.
"""

from jetlct import count_points, dim_from_counts, jet_ideal, krull_dimension, oracle_dimension, parse_poly

for text, n, m in [("x1^2 + x2^3", 2, 2), ("x1^3 + x2^3", 2, 2), ("x1^2 + x2^2 + x3^2", 3, 1)]:
    I = jet_ideal(parse_poly(text, n), m)
    records = [count_points(I, p) for p in (5, 7)]
    print(text, m, [r.count for r in records], dim_from_counts(records), krull_dimension(I))

# x1^2 + x2^2 factors over F_5 but not over F_7; a third prime settles it
estimate, records = oracle_dimension(jet_ideal(parse_poly("x1^2 + x2^2", 2), 1))
print(estimate, [(r.prime, r.count, r.agreed) for r in records])

# Many components of the same dimension inflate the count.
# For x1*x2 at level 1, rounding log_p over-reports by one.
estimate, records = oracle_dimension(jet_ideal(parse_poly("x1*x2", 2), 1))
print(estimate, [r.count for r in records], krull_dimension(jet_ideal(parse_poly("x1*x2", 2), 1)))
