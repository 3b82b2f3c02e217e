import random
from fractions import Fraction
from math import factorial

import pytest

from jetlct.jets import (
    Ideal,
    derivation_D,
    fiber_ideal_at,
    jet_ideal,
    jet_variables,
    rescale_levels,
    taylor_jet_generators,
)
from jetlct.polyring import JetVariable, Monomial, Polynomial, parse_poly, partial_derivative


def J(text, n=2):
    return parse_poly(text, n)


def random_poly(rng, n, max_level, terms=4, max_deg=3):
    out = {}
    for _ in range(terms):
        pairs = {}
        for _ in range(rng.randint(0, max_deg)):
            v = JetVariable(rng.randint(1, n), rng.randint(0, max_level))
            pairs[v] = pairs.get(v, 0) + 1
        out[Monomial(pairs)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(out, n, max_level)


def random_form(rng, n, d):
    while True:
        F = Polynomial.zero(n)
        for _ in range(rng.randint(1, 4)):
            mono = Polynomial.constant(rng.randint(-3, 3), n)
            for _ in range(d):
                mono = mono * Polynomial.variable(rng.randint(1, n), 0, n)
            F = F + mono
        if not F.is_zero():
            return F


def test_derivation_examples():
    assert derivation_D(J("x1")) == J("x1_1")
    assert derivation_D(J("x1*x2")) == J("x1_1*x2 + x1*x2_1")
    assert derivation_D(derivation_D(J("x1^2"))) == J("2*x1*x1_2 + 2*x1_1^2")
    assert derivation_D(J("x1")).max_level == 1
    assert derivation_D(Polynomial.zero(2)).is_zero()


def test_jet_ideal_examples():
    assert list(jet_ideal(parse_poly("x1", 1), 2)) == [parse_poly(t, 1) for t in ("x1", "x1_1", "x1_2")]
    assert list(jet_ideal(J("x1*x2"), 1)) == [J("x1*x2"), J("x1_1*x2 + x1*x2_1")]
    expected = ["x1^2", "2*x1*x1_1", "2*x1*x1_2 + 2*x1_1^2", "2*x1*x1_3 + 6*x1_1*x1_2"]
    assert list(jet_ideal(parse_poly("x1^2", 1), 3)) == [parse_poly(t, 1) for t in expected]
    I = jet_ideal(J("x1*x2"), 3)
    assert I.num_vars == 8
    assert I.variables == jet_variables(2, 3)
    with pytest.raises(ValueError):
        jet_ideal(Polynomial.zero(2), 1)
    with pytest.raises(ValueError):
        jet_ideal(J("x1_1"), 1)


def test_taylor_examples():
    G = taylor_jet_generators(parse_poly("x1^2", 1), 3)
    assert G[3] == parse_poly("2*x1*x1_3 + 2*x1_1*x1_2", 1)
    assert list(taylor_jet_generators(parse_poly("x1", 1), 2)) == [parse_poly(t, 1) for t in ("x1", "x1_1", "x1_2")]
    assert taylor_jet_generators(J("x1*x2"), 1)[1] == J("x1*x2_1 + x1_1*x2")


def test_taylor_by_direct_expansion():
    # coefficient of t^p in (sum_j a_j t^j)^3 is the sum over ordered level triples adding up to p
    m = 4
    G = taylor_jet_generators(parse_poly("x1^3", 1), m)
    for p in range(m + 1):
        expected = {}
        for a in range(p + 1):
            for b in range(p + 1 - a):
                pairs = {}
                for level in (a, b, p - a - b):
                    v = JetVariable(1, level)
                    pairs[v] = pairs.get(v, 0) + 1
                mono = Monomial(pairs)
                expected[mono] = expected.get(mono, 0) + 1
        assert G[p] == Polynomial(expected, 1, m)


def test_fiber_examples():
    I = fiber_ideal_at(J("x1*x2"), 1, (0, 0))
    assert I.is_zero()
    assert I.variables == (JetVariable(1, 1), JetVariable(2, 1))
    I = fiber_ideal_at(parse_poly("x1", 1), 2, (0,))
    assert list(I) == [parse_poly("x1_1", 1), parse_poly("x1_2", 1)]
    I = fiber_ideal_at(J("x1^2 + x2^2"), 2, (0, 0))
    assert list(I) == [J("x1_1^2 + x2_1^2")]
    assert I.num_vars == 4
    with pytest.raises(ValueError):
        fiber_ideal_at(J("x1*x2 - 1"), 1, (0, 0))


def test_ideal_rejects_foreign_variables():
    with pytest.raises(ValueError):
        Ideal((J("x1_2"),), jet_variables(2, 1))
    assert len(Ideal((J("x1"), Polynomial.zero(2)), jet_variables(2, 0))) == 1


def test_leibniz_random():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 3)
        f = random_poly(rng, n, 2)
        g = random_poly(rng, n, 2)
        lhs = derivation_D(f * g)
        rhs = derivation_D(f) * g + f * derivation_D(g)
        assert lhs == rhs


def test_bigrading():
    rng = random.Random(5)
    for _ in range(30):
        n, d = rng.randint(1, 3), rng.randint(1, 4)
        F = random_form(rng, n, d)
        for p, G in enumerate(jet_ideal(F, 5)):
            assert G.is_homogeneous() and G.total_degree == d
            assert {m.jet_weight for m in G.terms} == {p}


def test_taylor_matches_rescaled_derivation():
    rng = random.Random(3)
    checked = 0
    while checked < 25:
        n = rng.randint(1, 3)
        F = random_poly(rng, n, 0, terms=4, max_deg=4)
        if F.is_constant():
            continue
        m = rng.randint(0, 6)
        D = jet_ideal(F, m)
        T = taylor_jet_generators(F, m)
        assert len(D) == len(T) == m + 1
        for p in range(m + 1):
            assert rescale_levels(D[p]) * Fraction(1, factorial(p)) == T[p]
        checked += 1


def test_fiber_over_origin_is_specialized_jet_ideal():
    rng = random.Random(8)
    for _ in range(20):
        n, d = rng.randint(1, 3), rng.randint(2, 4)
        F = random_form(rng, n, d)
        m = rng.randint(0, 4)
        zero = {JetVariable(i, 0): 0 for i in range(1, n + 1)}
        specialized = [g.specialize(zero) for g in jet_ideal(F, m)]
        fiber = fiber_ideal_at(F, m, (0,) * n, generators="derivation")
        assert list(fiber) == [g for g in specialized if not g.is_zero()]


def test_triangular_structure():
    # G_p = sum_k dF/dx_k(x) x<k>_<p> + terms in levels below p
    rng = random.Random(21)
    m = 4
    for _ in range(20):
        n = rng.randint(1, 3)
        F = random_poly(rng, n, 0, terms=4, max_deg=4)
        if F.is_constant():
            continue
        G = taylor_jet_generators(F, m)
        for p in range(1, m + 1):
            linear = Polynomial.zero(n, m)
            for k in range(1, n + 1):
                dk = partial_derivative(F, k).with_ambient(max_level=m)
                linear = linear + dk * Polynomial.variable(k, p, n, m)
            rest = G[p] - linear
            assert all(v.level < p for mono in rest.terms for v, _ in mono)
