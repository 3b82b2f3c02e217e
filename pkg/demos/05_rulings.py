"""
Translation-invariant directions
================================

A homogeneous F that is constant along a linear subspace is a product
T x A^r'.  Its jet schemes split the same way.
"""

from jetlct import apply_change, detect_ruling, jet_scheme_dim, parse_poly

F = parse_poly("(x1 + x2)^3 + x3^3", 3)
R = detect_ruling(F)
print("r' =", R.r_prime, "basis", [[str(c) for c in v] for v in R.basis])
print("reduced:", R.reduced_poly, "in", R.reduced_poly.n, "variables")

# The change of coordinates turns F into the reduced polynomial
print(apply_change(F, R.change))

# dim Z_m = dim T_m + (m + 1) r'
for m in range(4):
    print(m, jet_scheme_dim(F, m), jet_scheme_dim(R.reduced_poly, m) + (m + 1) * R.r_prime)

print(detect_ruling(parse_poly("x1^4", 3)).to_dict())
