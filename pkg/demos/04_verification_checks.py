"""
Checking the dimension identities
=================================

"""

from jetlct import (
    check_fiber_bound,
    check_isom_fiber,
    check_recursion,
    check_semicontinuity,
    equality_characterization,
    fiber_dim,
    jet_scheme_dim,
    parse_poly,
)

# Over the origin, the fiber of a homogeneous F looks like Z_(m-d) times affine space
for text, n, m in [("x1*x2", 2, 3), ("x1*x2*x3", 3, 2), ("x1^2 + x2^2", 2, 3)]:
    print(check_isom_fiber(parse_poly(text, n), m).detail)

# Recursive bound on dim Z_m
print(check_recursion(parse_poly("x1^3 + x2^3", 2), 5).detail)

# Fibers over a point of multiplicity q have dimension at most mn - floor(m/q)
cusp = parse_poly("x1^2 + x2^3", 2)
for m in (2, 4, 6):
    print(check_fiber_bound(cusp, (0, 0), m).detail)

# Singular points away from the origin have fibers no bigger than the origin's
cone = parse_poly("x1^2*x2", 2)
print(check_semicontinuity(cone, 2, [(0, 1), (0, 5)]).detail)

# The two dimension routes agree
F = parse_poly("x1^2*x3 + x2^3", 3)
print([jet_scheme_dim(F, m) for m in range(4)], [jet_scheme_dim(F, m, "direct") for m in range(4)])
print(fiber_dim(F, 3, (0, 0, 1)), fiber_dim(F, 3, (0, 0, 1), "direct"))

# Equality case: threshold (n - r)/d together with a product structure
print(equality_characterization(parse_poly("x1^3 + x2^3", 3), 2).detail)
