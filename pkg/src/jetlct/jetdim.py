"""Exact dimensions of jet schemes and of their fibers.

Two routes are available.

``direct``
    Krull dimension of the full jet ideal (or fiber ideal).

``auto``
    Splits ``Z_m`` over a stratification of ``Z`` and only hands small
    ideals to the Gröbner engine:

    * a translation-invariant factor ``A^r'`` is split off first, since
      ``(T x A^r')_m = T_m x A^((m+1) r')``;
    * over the smooth locus the projection ``Z_m -> Z`` is an
      ``A^(m(n-1))``-bundle, because the ``p``-th Taylor generator is
      ``sum_k dF/dx_k(x) x<k>_<p>`` plus terms in lower levels;
    * for homogeneous ``F`` the fiber over the origin is cut out by the
      level-shifted equations of ``Z_(m-d)`` (checked on the generators at
      runtime), leaving ``n(d-1)`` free coordinates;
    * the rest of the singular locus is covered by charts ``x_i != 0``; for
      homogeneous ``F`` each chart is ``G_m x V(F(x_i = 1))``, which drops
      one variable per level before the ideal is handed over;
    * a finite singular locus is handled through the fibers over its
      points: Morse points (invertible Hessian) have the fibers of a sum of
      squares, and rational points are computed one by one.

Both routes return the same numbers; the test-suite compares them.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .groebner import Budget, MonomialOrder, groebner_basis, krull_dimension
from .jets import Ideal, fiber_ideal_at, jet_variables, taylor_jet_generators
from .polyring import JetVariable, Polynomial, _as_fraction, partial_derivative
from .ruling import detect_ruling

__all__ = ["jet_order", "weighted_jet_order", "hessian_determinant", "jet_scheme_dim", "fiber_dim", "origin_fiber_shift_holds", "METHODS"]

METHODS = ("auto", "direct")


def jet_order(variables: Sequence) -> MonomialOrder:
    """grevlex with the level-0 variables largest.

    Used for dimension queries on ideals that mix level 0 with higher
    levels without a grading; the dimension itself does not depend on the
    order.
    """
    return MonomialOrder("grevlex", tuple(sorted(variables, key=lambda v: (-v[1], v[0]))))


def weighted_jet_order(variables: Sequence, offset: int) -> MonomialOrder:
    """Weighted grevlex giving ``x<i>_<j>`` the weight ``j + offset``.

    Fiber ideals (levels >= 1, ``offset = 0``) are homogeneous for this
    grading even when ``F`` is not, which keeps Buchberger's algorithm
    degree by degree.
    """
    ordered = tuple(sorted(variables, key=lambda v: (v[1], v[0])))
    return MonomialOrder("grevlex", ordered, tuple(v[1] + offset for v in ordered))


def _dim(ideal: Ideal, budget: Budget | None, offset: int | None = None) -> int:
    order = jet_order(ideal.variables) if offset is None else weighted_jet_order(ideal.variables, offset)
    return krull_dimension(ideal, order, budget)


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def jet_scheme_dim(F: Polynomial, m: int, method: str = "auto", budget: Budget | None = None) -> int:
    """``dim Z_m`` for ``Z = V(F)``; -1 when ``Z_m`` is empty."""
    _check_method(method)
    if m < 0:
        raise ValueError("jet level m must be >= 0")
    if F.is_zero():
        raise ValueError("jet schemes of the zero polynomial are not defined")
    if F.top_level() > 0:
        raise ValueError("F must be a polynomial in the level-0 variables x1..xn")
    return _jet_dim(F, m, method, budget)


@lru_cache(maxsize=4096)
def _jet_dim(F: Polynomial, m: int, method: str, budget: Budget | None) -> int:
    if F.is_constant():
        return -1
    if method == "direct":
        return _dim(taylor_jet_generators(F, m), budget)

    n = F.n
    ruling = detect_ruling(F)
    if ruling.r_prime:
        return _jet_dim(ruling.reduced_poly, m, method, budget) + (m + 1) * ruling.r_prime

    partials = [partial_derivative(F, i) for i in range(1, n + 1)]
    parts = [_smooth_part(F, partials, m, budget)]
    parts.append(_singular_part(F, partials, m, method, budget))
    if F.constant_term() == 0 and all(p.constant_term() == 0 for p in partials):
        parts.append(_fiber_dim(F, m, (0,) * n, method, budget))
    return max(parts)


def _with_chart_variable(polys, n: int, max_level: int):
    y = Polynomial.variable(n + 1, 0, n + 1, max_level)
    return [p.with_ambient(n=n + 1, max_level=max_level) for p in polys], y


def _smooth_part(F: Polynomial, partials: list, m: int, budget) -> int:
    """Largest ``dim Z_reg`` over the charts ``dF/dx_i != 0``, plus the fiber ``m(n-1)``."""
    n = F.n
    best = -1
    for dF in partials:
        if dF.is_zero():
            continue
        (G, dG), y = _with_chart_variable([F, dF], n, 0)
        ideal = Ideal((G, y * dG - 1), jet_variables(n, 0) + (JetVariable(n + 1, 0),))
        best = max(best, _dim(ideal, budget))
    return best + m * (n - 1) if best >= 0 else -1


def _singular_part(F: Polynomial, partials: list, m: int, method: str, budget) -> int:
    """Jets over singular points off the origin, chart by chart."""
    n = F.n
    homogeneous = F.is_homogeneous()
    if not homogeneous:
        base = Ideal([F] + partials, jet_variables(n, 0))
        base_dim = _dim(base, budget)
        if base_dim < 0:
            return -1
        fiber = _finite_locus_fiber(F, base, base_dim, m, method, budget)
        if fiber is not None:
            return fiber
    best = -1
    for i in range(1, n + 1):
        xi = JetVariable(i, 0)
        if homogeneous:
            # on x_i != 0, Z is G_m x V(f) with f = F(x_i = 1) in n-1 variables
            if n == 1:
                continue
            f = _dehomogenize(F, i)
            if f.is_constant():
                continue
            fpartials = [partial_derivative(f, j) for j in range(1, n)]
            base = Ideal([f] + fpartials, jet_variables(n - 1, 0))
            base_dim = _dim(base, budget)
            if base_dim < 0:
                continue
            fiber = _finite_locus_fiber(f, base, base_dim, m, method, budget)
            if fiber is not None:
                best = max(best, m + 1 + fiber)
                continue
            jets = taylor_jet_generators(f, m)
            gens = list(jets.generators) + [p.with_ambient(max_level=m) for p in fpartials]
            d = _dim(Ideal(gens, jets.variables), budget)
            if d >= 0:
                best = max(best, d + m + 1)
        else:
            polys, y = _with_chart_variable([F] + partials, n, 0)
            x = Polynomial.variable(i, 0, n + 1, 0)
            base = Ideal(polys + [y * x - 1], jet_variables(n, 0) + (JetVariable(n + 1, 0),))
            if _dim(base, budget) < 0:
                continue
            jets = taylor_jet_generators(F, m)
            polys, y = _with_chart_variable(list(jets.generators) + partials, n, m)
            x = Polynomial.variable(i, 0, n + 1, m)
            ideal = Ideal(polys + [y * x - 1], jets.variables + (JetVariable(n + 1, 0),))
            best = max(best, _dim(ideal, budget))
    return best


def hessian_determinant(F: Polynomial) -> Polynomial:
    """Determinant of the matrix of second partial derivatives."""
    n = F.n
    H = [[partial_derivative(partial_derivative(F, i), j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    total = Polynomial.zero(n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(a > b for a, b in itertools.combinations(perm, 2))
        term = Polynomial.constant(-1 if inversions % 2 else 1, n)
        for row, col in enumerate(perm):
            term = term * H[row][col]
        total = total + term
    return total


def _sum_of_squares(n: int) -> Polynomial:
    return sum((Polynomial.variable(i, 0, n) ** 2 for i in range(1, n + 1)), Polynomial.zero(n))


def _finite_locus_fiber(F: Polynomial, base: Ideal, base_dim: int, m: int, method: str, budget) -> int | None:
    """Largest fiber over a finite singular locus, when it can be found pointwise.

    If the Hessian is invertible along the locus every point is a Morse
    point, and a local analytic change of coordinates (which induces an
    isomorphism of based jets) turns ``F`` into a sum of squares.  Otherwise
    the points must all be rational.  ``None`` means neither applies.
    """
    if base_dim != 0:
        return None
    morse = Ideal(list(base.generators) + [hessian_determinant(F)], base.variables)
    if _dim(morse, budget) < 0:
        return _fiber_dim(_sum_of_squares(F.n), m, (0,) * F.n, method, budget)
    points = _rational_points(base, budget)
    if points is None:
        return None
    return max(_fiber_dim(F, m, p, method, budget) for p in points)


def _divisors(k: int) -> list:
    out = []
    for a in range(1, math.isqrt(k) + 1):
        if k % a == 0:
            out += [a, k // a]
    return out


def _split_roots(coeffs: list) -> list | None:
    """Distinct rational roots if the polynomial (coefficients low to high) splits over Q."""
    scale = math.lcm(*(c.denominator for c in coeffs))
    a = [int(c * scale) for c in coeffs]
    roots = set()
    while a and a[0] == 0:
        roots.add(Fraction(0))
        a = a[1:]
    while len(a) > 1:
        if max(abs(a[0]), abs(a[-1])) > 10 ** 12:
            return None
        candidates = (Fraction(s * p, q) for p in _divisors(abs(a[0])) for q in _divisors(abs(a[-1]))
                      for s in (1, -1))
        root = next((r for r in candidates if sum(c * r ** k for k, c in enumerate(a)) == 0), None)
        if root is None:
            return None
        roots.add(root)
        # divide by (q x - p), keeping integer coefficients
        p, q = root.numerator, root.denominator
        quotient = [0] * (len(a) - 1)
        carry = 0
        for k in range(len(a) - 1, 0, -1):
            quotient[k - 1] = (a[k] + carry) // q
            carry = quotient[k - 1] * p
        a = quotient
    return sorted(roots)


def _rational_points(ideal: Ideal, budget) -> list | None:
    """Points of a zero-dimensional ideal, or ``None`` unless all of them are rational.

    Each coordinate must be a root of the eliminant in that variable, so when
    every eliminant splits over Q the points are among finitely many rational
    candidates.
    """
    variables = ideal.variables
    choices = []
    for v in variables:
        rest = tuple(w for w in variables if w != v)
        basis = groebner_basis(ideal, MonomialOrder("lex", (v,) + rest), budget)
        eliminant = next(g for g in basis if g.variables() <= {v})
        coeffs = [Fraction(0)] * (eliminant.total_degree + 1)
        for mono, c in eliminant.items():
            coeffs[mono.degree_in(v)] = c
        roots = _split_roots(coeffs)
        if roots is None:
            return None
        choices.append(roots)
    points = []
    for values in itertools.product(*choices):
        assignment = dict(zip(variables, values))
        if all(g.specialize(assignment).constant_term() == 0 for g in ideal.generators):
            points.append(values)
    return points


def _dehomogenize(F: Polynomial, i: int) -> Polynomial:
    """``F`` with ``x_i = 1``, the remaining variables renumbered ``x1..x(n-1)``."""
    n = F.n
    f = F.specialize({JetVariable(i, 0): 1})
    rename = {JetVariable(j, 0): Polynomial.variable(j - (j > i), 0, n - 1)
              for j in range(1, n + 1) if j != i}
    return f.substitute(rename, n=n - 1, max_level=0)


def origin_fiber_shift_holds(F: Polynomial, m: int) -> bool:
    """Fiber equations over 0 are the level-shifted equations of ``Z_(m-d)``.

    For homogeneous ``F`` of degree ``d`` the Taylor generators with the
    level-0 variables set to zero vanish below ``t^d`` and then coincide
    with those of level ``m - d`` after ``x<i>_<j> -> x<i>_<j+1>``.
    """
    n, d = F.n, F.total_degree
    fiber = fiber_ideal_at(F, m, (0,) * n)
    expected = []
    if m >= d:
        lower = taylor_jet_generators(F, m - d)
        shift = {JetVariable(i, j): Polynomial.variable(i, j + 1, n, m)
                 for i in range(1, n + 1) for j in range(m - d + 1)}
        expected = [g.substitute(shift, n=n, max_level=m) for g in lower.generators]
        expected = [g for g in expected if not g.is_zero()]
    got = [g.with_ambient(max_level=m) for g in fiber.generators]
    return got == expected


def fiber_dim(F: Polynomial, m: int, x: Sequence, method: str = "auto", budget: Budget | None = None) -> int:
    """Dimension of the fiber of ``Z_m -> Z`` over the point ``x`` of ``Z``."""
    _check_method(method)
    x = tuple(_as_fraction(a) for a in x)
    if len(x) != F.n:
        raise ValueError(f"point has {len(x)} coordinates, ambient has n={F.n}")
    if F.evaluate(x) != 0:
        raise ValueError("point is not on the hypersurface F = 0; its fiber is empty")
    if m < 0:
        raise ValueError("jet level m must be >= 0")
    return _fiber_dim(F, m, x, method, budget)


@lru_cache(maxsize=4096)
def _fiber_dim(F: Polynomial, m: int, x: tuple, method: str, budget) -> int:
    n = F.n
    if m == 0:
        return 0
    if method == "direct":
        return _dim(fiber_ideal_at(F, m, x), budget, 0)
    if any(partial_derivative(F, i).evaluate(x) for i in range(1, n + 1)):
        return m * (n - 1)
    if F.is_homogeneous() and not any(x):
        d = F.total_degree
        if not origin_fiber_shift_holds(F, m):
            raise AssertionError("fiber equations over the origin are not the shifted jet equations")
        lower = _jet_dim(F, m - d, method, budget) if m >= d else 0
        return lower + n * (d - 1) if m >= d - 1 else m * n
    if hessian_determinant(F).evaluate(x):
        # Morse point: locally a sum of squares
        return _fiber_dim(_sum_of_squares(n), m, (0,) * n, method, budget)
    return _dim(fiber_ideal_at(F, m, x), budget, 0)
