"""
Gröbner bases and dimensions
============================

"""

from jetlct import Budget, BudgetExceeded, MonomialOrder, groebner_basis, ideal_membership, krull_dimension
from jetlct import Ideal, jet_ideal, jet_variables, parse_poly

I = Ideal([parse_poly("x1^2 + x2^2", 2), parse_poly("x1*x2", 2)], jet_variables(2, 0))
for kind in ("grevlex", "lex"):
    B = groebner_basis(I, kind)
    print(kind, [str(g) for g in B])

# Membership and dimension come from the basis
B = groebner_basis(I)
print(ideal_membership(parse_poly("x2^3", 2), B), krull_dimension(I))

# Jet ideals: x1*x2 at level 1 is a union of three planes in A^4
J = jet_ideal(parse_poly("x1*x2", 2), 1)
print("dim Z_1 of x1*x2:", krull_dimension(J))

# Any variable sequence gives the same dimension
rev = MonomialOrder("grevlex", tuple(reversed(J.variables)))
print(krull_dimension(J, rev))

# Budgets stop long computations with a structured error
try:
    groebner_basis(jet_ideal(parse_poly("x1^3 + x2^3 + x1*x2", 2), 4), budget=Budget(steps=100))
except BudgetExceeded as exc:
    print("stopped:", exc.reason, "after", exc.steps, "steps")
