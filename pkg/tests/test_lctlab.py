import json
import random
from fractions import Fraction

import pytest

from jetlct.jetdim import fiber_dim, jet_scheme_dim, origin_fiber_shift_holds
from jetlct.lctlab import (
    HOMOGENEOUS_ONLY_NOTE,
    DimRow,
    check_fiber_bound,
    check_isom_fiber,
    check_recursion,
    check_semicontinuity,
    detect_ruling,
    equality_characterization,
    jet_dims,
    lct_estimate,
    multiplicity_at,
    singular_locus_dim,
    verify_lower_bound,
)
from jetlct.polyring import Polynomial, parse_poly, partial_derivative
from jetlct.ruling import apply_change


def P(text, n=2):
    return parse_poly(text, n)


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


def unimodular(rng, n):
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(4):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        c = rng.choice([-2, -1, 1, 2])
        for row in A:
            row[j] += c * row[i]
    return tuple(tuple(Fraction(a) for a in row) for row in A)


# examples of the individual operations

def test_singular_locus_examples():
    assert singular_locus_dim(P("x1")) == -1
    assert singular_locus_dim(P("x1^2 + x2^2 + x3^2", 3)) == 0
    assert singular_locus_dim(P("x1^3 + x2^3", 3)) == 1


def test_multiplicity_examples():
    assert multiplicity_at(P("x1^2*x2"), (0, 0)) == 3
    assert multiplicity_at(P("x1*x2"), (0, 0)) == 2
    assert multiplicity_at(P("x1^2 - x2"), (0, 0)) == 1
    assert multiplicity_at(P("x1^2 - x2^3"), (1, 1)) == 1
    with pytest.raises(ValueError):
        multiplicity_at(P("x1*x2 - 1"), (0, 0))


def test_multiplicity_of_forms_is_degree():
    rng = random.Random(1)
    for _ in range(20):
        n, d = rng.randint(1, 3), rng.randint(1, 4)
        F = random_form(rng, n, d)
        assert multiplicity_at(F, (0,) * n) == d


def test_jet_dims_examples():
    rows = jet_dims(P("x1"), [0, 1, 2])
    assert [r.dim_jets for r in rows] == [1, 2, 3]
    assert jet_dims(parse_poly("x1^2", 1), [1])[0].dim_jets == 1
    row = jet_dims(P("x1*x2"), [1])[0]
    assert (row.dim_jets, row.dim_fiber0) == (2, 2)
    assert jet_dims(P("x1*x2 - 1"), [1])[0].dim_fiber0 is None


def test_lct_examples():
    R = lct_estimate(parse_poly("x1^2", 1), 2)
    assert R.upper_bound == Fraction(1, 2) == R.lower_bound and R.exact
    assert [r.dim_jets for r in R.dim_table] == [1, 2]
    R = lct_estimate(P("x1^3 + x2^3"), 2)
    assert [r.dim_jets for r in R.dim_table] == [4, 8]
    assert R.upper_bound == Fraction(2, 3) and R.exact
    R = lct_estimate(P("x1*x2"), 2)
    assert R.upper_bound == 1 == R.lower_bound and R.exact
    assert [r.dim_jets for r in R.dim_table] == [2, 4]


def test_non_homogeneous_policy():
    R = lct_estimate(P("x1^2 + x2"), 3)
    assert [r.m for r in R.dim_table] == [0, 1, 2]
    assert R.lower_bound is None and not R.exact
    assert HOMOGENEOUS_ONLY_NOTE in R.notes
    assert R.upper_bound == 1
    with pytest.raises(ValueError):
        verify_lower_bound(P("x1^2 + x2"), R)
    with pytest.raises(ValueError):
        check_isom_fiber(P("x1^2 + x2"), 2)


def test_verify_lower_bound_examples():
    F = P("x1^3 + x2^3 + x3^3", 3)
    R = lct_estimate(F, 2)
    assert R.r == 0 and R.lower_bound == 1
    assert verify_lower_bound(F, R).passed
    assert all(v >= 1 for _, v in R.values())
    for d in (2, 3, 4):
        F = P(f"x1^{d}")
        R = lct_estimate(F, 2)
        assert R.r == 1 and R.lower_bound == Fraction(1, d)
        assert [v for _, v in R.values()] == [Fraction(1, d)] * 2
    R = lct_estimate(P("x1"), 3)
    assert R.r == -1 and R.lower_bound == 1
    assert [v for _, v in R.values()] == [1, 1, 1]


def test_lower_bound_failure_is_fatal():
    F = P("x1*x2")
    R = lct_estimate(F, 1)
    # a too-large dimension pushes the sampled value below the bound
    R.dim_table = [DimRow(1, 3, 2)]
    v = verify_lower_bound(F, R)
    assert not v.passed and v.fatal


def test_isom_examples():
    assert check_isom_fiber(P("x1*x2"), 1).passed
    v = check_isom_fiber(P("x1*x2*x3", 3), 2)
    assert v.passed and "= 6" in v.detail
    assert check_isom_fiber(P("x1^2 + x2^2"), 3).passed
    with pytest.raises(ValueError):
        check_isom_fiber(P("x1^3 + x2^3"), 1)


def test_recursion_examples():
    assert check_recursion(P("x1*x2"), 1).passed
    assert check_recursion(P("x1^3 + x2^3"), 2).passed
    for d in (2, 3, 4):
        F = P(f"x1^{d}")
        assert jet_scheme_dim(F, d - 1) == 2 * d - 1
        assert check_recursion(F, d - 1).passed
    with pytest.raises(ValueError):
        check_recursion(P("x1"), 0)


def test_fiber_bound_examples():
    v = check_fiber_bound(P("x1^2 + x2^3"), (0, 0), 2)
    assert v.passed and "= 3 <= 3" in v.detail
    for m in range(4):
        assert check_fiber_bound(P("x1"), (0, 7), m).passed
        assert fiber_dim(P("x1"), m, (0, 7), "direct") == m
    assert check_fiber_bound(P("x1*x2"), (0, 0), 3).passed


def test_semicontinuity_examples():
    assert check_semicontinuity(P("x1^3 + x2^3", 3), 2, [(0, 0, 1)]).passed
    assert fiber_dim(P("x1^3 + x2^3", 3), 2, (0, 0, 1), "direct") == fiber_dim(P("x1^3 + x2^3", 3), 2, (0, 0, 0), "direct")
    assert check_semicontinuity(P("x1*x2"), 2, [(0, 0)]).passed
    assert check_semicontinuity(P("x1^2*x2"), 2, [(0, 1), (0, -3)]).passed
    with pytest.raises(ValueError):
        check_semicontinuity(P("x1^2*x2"), 2, [(1, 0)])


def test_ruling_examples():
    R = detect_ruling(P("x1^3 + x2^3", 3))
    assert R.r_prime == 1 and R.basis == ((0, 0, 1),)
    assert R.reduced_poly == P("x1^3 + x2^3") and R.reduced_poly.n == 2
    for n in (1, 2, 3):
        assert detect_ruling(P("x1^4", n)).r_prime == n - 1
    assert detect_ruling(P("x1^3 + x2^3 + x3^3", 3)).r_prime == 0


def test_ruling_invariants():
    rng = random.Random(2)
    for _ in range(20):
        n, d = rng.randint(1, 3), rng.randint(1, 4)
        F = random_form(rng, n, d)
        A = unimodular(rng, n)
        G = apply_change(F, A)
        R = detect_ruling(G)
        for v in R.basis:
            directional = sum((c * partial_derivative(G, i) for i, c in enumerate(v, start=1)), Polynomial.zero(n))
            assert directional.is_zero()
        assert apply_change(G, R.change) == R.reduced_poly.with_ambient(n=n)


def test_ruling_of_hidden_product():
    # (x1 + x2)^3 + x3^3 only depends on two linear forms
    F = P("(x1 + x2)^3 + x3^3", 3)
    R = detect_ruling(F)
    assert R.r_prime == 1 and R.basis == ((1, -1, 0),)
    assert singular_locus_dim(R.reduced_poly) == 0


def test_equality_examples():
    v = equality_characterization(P("x1^3 + x2^3", 3), 2)
    assert v.passed and v.applicable and "forward ok" in v.detail and "backward ok" in v.detail
    assert "(vacuous)" not in v.detail
    for d in (2, 3):
        v = equality_characterization(P(f"x1^{d}"), 2)
        assert v.passed and v.applicable and "(vacuous)" not in v.detail
    v = equality_characterization(P("x1^4 + x2^4 + x3^4", 3), 2)
    assert v.passed and v.applicable
    v = equality_characterization(P("x1*x2"), 2)
    assert not v.applicable


# the two dimension routes agree

SMALL = [("x1", 2, 3), ("x1^2", 1, 4), ("x1*x2", 2, 3), ("x1^2 + x2^3", 2, 4), ("x1^2 + x2", 2, 3),
         ("x1^3 + x2^3", 2, 4), ("x1^3 + x2^3", 3, 2), ("x1^2*x2", 2, 4), ("x1*x2*x3", 3, 2),
         ("x1^2 + x2^2 + x3^2", 3, 2), ("x1^2 - x2^2*x3", 3, 2), ("x1^2 + x2^2 + x3^3 + 1", 3, 2),
         ("x1*x2 - 1", 2, 3), ("x1^3 - x2^2 + x1*x2", 2, 3), ("(x1 + x2)^2*x1", 2, 4)]


@pytest.mark.parametrize("text,n,top", SMALL)
def test_auto_matches_direct(text, n, top):
    F = P(text, n)
    for m in range(top + 1):
        assert jet_scheme_dim(F, m) == jet_scheme_dim(F, m, "direct")
        if F.constant_term() == 0:
            assert fiber_dim(F, m, (0,) * n) == fiber_dim(F, m, (0,) * n, "direct")


def test_auto_matches_direct_random_forms():
    rng = random.Random(17)
    for n, d, top in [(2, 2, 3), (2, 3, 4), (2, 4, 4), (3, 2, 2), (3, 3, 2)]:
        for _ in range(2):
            F = random_form(rng, n, d)
            for m in range(top + 1):
                assert jet_scheme_dim(F, m) == jet_scheme_dim(F, m, "direct")


def test_auto_matches_direct_on_singular_lines():
    # singular loci leaving the origin exercise the chart computation
    rng = random.Random(5)
    for text in ["x1^2*x3 + x2^3", "x1*x2*(x1 + x2 + x3)", "x1^2*x3 + x2^2*x3 + x1^3",
                 "x1^2*x2^2 + x3^4", "x1*x2*x3"]:
        F = P(text, 3)
        assert singular_locus_dim(F) == 1 and detect_ruling(F).r_prime == 0
        G = apply_change(F, unimodular(rng, 3))
        for m in range(4):
            assert jet_scheme_dim(F, m) == jet_scheme_dim(F, m, "direct")
            if m <= 2:
                assert jet_scheme_dim(G, m) == jet_scheme_dim(G, m, "direct")


def test_origin_fiber_equations_shift():
    rng = random.Random(4)
    for _ in range(15):
        n, d = rng.randint(1, 3), rng.randint(2, 4)
        F = random_form(rng, n, d)
        for m in range(0, 2 * d + 1):
            assert origin_fiber_shift_holds(F, m)


# properties over small corpora

def test_smooth_baseline():
    for text, n in [("x1", 2), ("x1 + x2^2", 2), ("x1*x2 - 1", 2), ("x1^2 + x2^2 + x3^2 - 1", 3), ("x3 - x1*x2", 3)]:
        F = P(text, n)
        assert singular_locus_dim(F) == -1
        for m in range(5):
            assert jet_scheme_dim(F, m) == (m + 1) * (n - 1)
        assert jet_scheme_dim(F, 2, "direct") == 3 * (n - 1)


def test_isom_identity_on_forms():
    rng = random.Random(23)
    for _ in range(8):
        n, d = rng.randint(1, 3), rng.randint(2, 3)
        F = random_form(rng, n, d)
        for m in range(d - 1, d + 2):
            if n * m <= 9:
                assert check_isom_fiber(F, m, method="direct").passed


def test_product_compatibility():
    for text, n in [("x1^3 + x2^3", 3), ("x1^2", 3), ("(x1 - x2)^2 + x3^2", 3), ("x1*x2", 3), ("x1^3", 2)]:
        F = P(text, n)
        R = detect_ruling(F)
        T = R.reduced_poly
        assert R.r_prime >= 1
        for m in range(4):
            lhs = jet_scheme_dim(F, m, "direct") if n * (m + 1) <= 12 else jet_scheme_dim(F, m)
            assert lhs == jet_scheme_dim(T, m, "direct") + (m + 1) * R.r_prime


def test_linear_change_invariance():
    rng = random.Random(31)
    corpus = [P("x1^3 + x2^3"), P("x1*x2"), P("x1^2*x2"), P("x1^2 + x2^2 + x3^2", 3),
              P("x1^3 + x2^3", 3), P("x1*x2*x3", 3)]
    for F in corpus:
        base = lct_estimate(F, 2)
        dims = [r.dim_jets for r in base.dim_table]
        for _ in range(5):
            G = apply_change(F, unimodular(rng, F.n))
            R = lct_estimate(G, 2)
            assert [r.dim_jets for r in R.dim_table] == dims
            assert R.upper_bound == base.upper_bound and R.exact == base.exact
            assert jet_scheme_dim(G, 1, "direct") == jet_scheme_dim(F, 1)


def test_report_invariants_and_json():
    rng = random.Random(41)
    for _ in range(10):
        n, d = rng.randint(1, 3), rng.randint(1, 3)
        F = random_form(rng, n, d)
        R = lct_estimate(F, 2)
        assert R.upper_bound >= R.lower_bound
        for row in R.dim_table:
            assert (row.m + 1) * (n - 1) <= row.dim_jets <= (row.m + 1) * n
        data = json.loads(json.dumps(R.to_dict()))
        assert set(data) >= {"input", "n", "d", "homogeneous", "r", "dim_table", "upper_bound",
                             "lower_bound", "exact", "ruling", "verdicts", "timings"}
        assert Fraction(data["upper_bound"]) == R.upper_bound
        assert all(v["passed"] for v in data["verdicts"])


def test_budget_marks_rows():
    from jetlct.groebner import Budget
    F = P("x1^3 + x2^3 + x1*x2^2 + x1^2*x2")
    R = lct_estimate(F, 2, method="direct", budget=Budget(steps=20))
    assert not any(r.complete for r in R.dim_table)
    assert R.upper_bound is None and not R.exact


def test_rational_points_of_finite_singular_loci():
    from jetlct.jetdim import _rational_points, _split_roots
    from jetlct.jets import Ideal, jet_variables

    assert _split_roots([Fraction(c) for c in (-6, 11, -6, 1)]) == [1, 2, 3]
    assert _split_roots([Fraction(c) for c in (0, 0, -1, 4)]) == [0, Fraction(1, 4)]
    assert _split_roots([Fraction(c) for c in (-2, 0, 1)]) is None
    assert _split_roots([Fraction(c) for c in (1, 0, 1)]) is None
    I = Ideal([P("x1^2 - x1"), P("x2^2 - 4"), P("x1*x2 - 2*x1")], jet_variables(2, 0))
    assert sorted(_rational_points(I, None)) == [(0, -2), (0, 2), (1, 2)]
    assert _rational_points(Ideal([P("x1^2 - 2"), P("x2")], jet_variables(2, 0)), None) is None


def test_morse_points_match_direct():
    from jetlct.jetdim import hessian_determinant

    assert hessian_determinant(P("x1^2 + 3*x1*x2 + x2^3")) == P("12*x2 - 9")
    # nodes at the irrational points (+-sqrt 2, 0)
    F = P("(x1^2 - 2)^2 - x2^2")
    for m in range(4):
        assert jet_scheme_dim(F, m) == jet_scheme_dim(F, m, method="direct")
    # a Morse point that is not in normal form
    G = P("x1*x2 + x1^3 + x2^4")
    for m in range(1, 4):
        assert fiber_dim(G, m, (0, 0)) == fiber_dim(G, m, (0, 0), method="direct")
    # homogeneous chart with irrational nodes
    H = P("x1*x3^3 - 3*x1^2*x2*x3 + 2*x2^4", 3)
    for m in range(3):
        assert jet_scheme_dim(H, m) == jet_scheme_dim(H, m, method="direct")
