import itertools
import math
import random
from fractions import Fraction

import pytest

from jetlct.fporacle import (
    CountCapExceeded,
    FpCountRecord,
    OracleDisagreement,
    count_points,
    dim_from_counts,
    oracle_dimension,
)
from jetlct.groebner import krull_dimension
from jetlct.jets import Ideal, jet_ideal, jet_variables
from jetlct.polyring import parse_poly


def primitive(g):
    coeffs = list(g.terms.values())
    den = math.lcm(*(c.denominator for c in coeffs))
    content = math.gcd(*(int(c * den) for c in coeffs))
    return g * Fraction(den, content)


def brute_count(ideal, p):
    """Plain Python enumeration of the primitive integer generators."""
    gens = [primitive(g) for g in ideal.generators]
    count = 0
    for point in itertools.product(range(p), repeat=ideal.num_vars):
        values = dict(zip(ideal.variables, point))
        if all(g.specialize(values).constant_term() % p == 0 for g in gens):
            count += 1
    return count


def test_count_examples():
    assert count_points(Ideal((), jet_variables(3, 0)), 5).count == 125
    assert count_points(Ideal((parse_poly("x1", 2),), jet_variables(2, 0)), 5).count == 5


def test_count_xy_first_jets():
    # three planes in A^4: {x1=x1_1=0}, {x2=x2_1=0}, {x1=x2=0}
    I = jet_ideal(parse_poly("x1*x2", 2), 1)
    rec = count_points(I, 5)
    assert rec.count == brute_count(I, 5) == 3 * 25 - (1 + 5 + 5) + 1 == 65
    assert rec.num_vars == 4


def test_counts_match_plain_enumeration():
    rng = random.Random(3)
    texts = ["x1^2 + x2^3", "x1*x2 - 1", "x1^3 + x2^3", "x1^2 - 2*x2^2", "x1^2*x2 + 1/2*x2"]
    for text in texts:
        F = parse_poly(text, 2)
        m = rng.randint(0, 1)
        I = jet_ideal(F, m)
        for p in (3, 5):
            assert count_points(I, p).count == brute_count(I, p)


def test_split_independence():
    I = jet_ideal(parse_poly("x1^2 + x2^3", 2), 2)
    counts = {count_points(I, 5, split=s).count for s in range(I.num_vars + 1)}
    assert len(counts) == 1


def test_record_invariants():
    I = jet_ideal(parse_poly("x1^3 + x2^2", 2), 1)
    for p in (2, 3, 5, 7):
        rec = count_points(I, p)
        assert 0 <= rec.count <= p ** rec.num_vars
    full = count_points(Ideal((), jet_variables(2, 0)), 7)
    assert full.count == 49 and full.log_slope == 2


def test_count_errors():
    I = Ideal((parse_poly("1/5*x1 + 1", 1),), jet_variables(1, 0))
    with pytest.raises(ValueError):
        count_points(I, 5)
    assert count_points(I, 7).count == 1
    with pytest.raises(ValueError):
        count_points(I, 6)
    big = jet_ideal(parse_poly("x1*x2", 2), 6)
    with pytest.raises(CountCapExceeded):
        count_points(big, 7, cap=10**6)


def test_dim_from_counts_examples():
    recs = [count_points(Ideal((), jet_variables(3, 0)), p) for p in (5, 7)]
    assert [r.count for r in recs] == [125, 343]
    assert dim_from_counts(recs) == 3
    I = jet_ideal(parse_poly("x1^2", 1), 1)
    recs = [count_points(I, p) for p in (5, 7)]
    assert [r.count for r in recs] == [5, 7]
    assert dim_from_counts(recs) == 1
    unit = Ideal((parse_poly("1", 1),), jet_variables(1, 0))
    recs = [count_points(unit, p) for p in (5, 7)]
    assert dim_from_counts(recs) == -1


def test_disagreement_is_reported():
    recs = [FpCountRecord(5, 2, 5, 1), FpCountRecord(7, 2, 49, 2)]
    with pytest.raises(OracleDisagreement) as exc:
        dim_from_counts(recs)
    assert exc.value.estimates == {5: 1, 7: 2}
    with pytest.raises(ValueError):
        dim_from_counts(recs[:1])


def test_third_prime_on_disagreement():
    # x1^2 + x2^2 splits over F_5 but not over F_7
    I = jet_ideal(parse_poly("x1^2 + x2^2", 2), 1)
    est, recs = oracle_dimension(I)
    assert [r.prime for r in recs] == [5, 7, 11]
    assert est == krull_dimension(I) == 2
    assert recs[0].agreed is False and recs[-1].agreed is True


def test_rounded_slope_overcounts_many_components():
    # three planes give 65 and 133 points: rounding log_p says 3 for both primes, the true dimension is 2
    I = jet_ideal(parse_poly("x1*x2", 2), 1)
    est, recs = oracle_dimension(I)
    assert [r.count for r in recs] == [65, 133]
    assert est == 3
    assert krull_dimension(I) == 2
