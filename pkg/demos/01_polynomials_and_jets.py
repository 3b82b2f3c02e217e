"""
Polynomials and jet equations
=============================

"""

from jetlct import Polynomial, derivation_D, jet_ideal, parse_poly, taylor_jet_generators

# Polynomials live in x1..xn; jet variables are written x<i>_<j>.
F = parse_poly("x1^3 + x2^3", 2)
print(F, "| degree", F.total_degree, "| homogeneous", F.is_homogeneous())

# The parser also reads jet variables and rational coefficients
G = parse_poly("1/2*x1_1*x2 - x1*x2_1^2", 2)
print(G, "| top level", G.top_level())

# D moves every variable up one level and obeys the Leibniz rule
f, g = parse_poly("x1*x2", 2), parse_poly("x1 + x2^2", 2)
print(derivation_D(f * g) == derivation_D(f) * g + f * derivation_D(g))

# The jet ideal of level m is F, DF, ..., D^m F
for p, eq in enumerate(jet_ideal(F, 3)):
    print(f"D^{p} F =", eq)

# Taylor generators are the same equations with factorials removed.
# They are the coefficients of t^p in F(x(t)).
for p, eq in enumerate(taylor_jet_generators(parse_poly("x1^2", 1), 3)):
    print(f"t^{p}:", eq)

x = Polynomial.variable(1, 0, 2)
print((x + 1) ** 3)
