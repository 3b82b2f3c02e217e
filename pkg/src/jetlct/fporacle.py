"""Brute-force point counts over small prime fields as a dimension oracle.

A variety of dimension D over Q typically has about ``c * p**D`` points over
``F_p``, so ``round(log_p(count))`` estimates D.  The estimate is only
trusted when two primes agree; it exists to catch Gröbner bugs on small
ideals, not to replace them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .jets import Ideal

__all__ = [
    "FpCountRecord",
    "CountCapExceeded",
    "OracleDisagreement",
    "count_points",
    "dim_from_counts",
    "oracle_dimension",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10**8
_INNER_MAX = 1 << 20


class CountCapExceeded(ValueError):
    pass


class OracleDisagreement(ValueError):
    """Per-prime dimension estimates differ; ``estimates`` maps prime -> estimate."""

    def __init__(self, estimates: dict):
        super().__init__(f"dimension estimates disagree across primes: {estimates}")
        self.estimates = estimates


@dataclass(frozen=True)
class FpCountRecord:
    prime: int
    num_vars: int
    count: int
    log_slope: int
    agreed: Optional[bool] = None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _reduce_mod_p(ideal: Ideal, p: int) -> list:
    """Each generator as ``[(coeff mod p, exponent tuple)]`` over ``ideal.variables``."""
    index = {v: k for k, v in enumerate(ideal.variables)}
    k = len(index)
    out = []
    for g in ideal.generators:
        coeffs = list(g.terms.values())
        for c in coeffs:
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} has a denominator divisible by {p}")
        den = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        content = math.gcd(*ints)
        terms = []
        for (mono, _), a in zip(g.items(), ints):
            a = (a // content) % p
            if a:
                exps = [0] * k
                for v, e in mono:
                    exps[index[v]] = e
                terms.append((a, tuple(exps)))
        # a primitive integer polynomial never vanishes identically mod p
        assert terms, "primitive polynomial vanished mod p"
        out.append(terms)
    return out


def count_points(ideal: Ideal, p: int, cap: int = DEFAULT_CAP, split: Optional[int] = None) -> FpCountRecord:
    """Number of common zeros of the generators in ``F_p^k``.

    Points are enumerated with the first ambient variable varying slowest.
    The first ``split`` variables are fixed per chunk and the remaining ones
    are evaluated as one vectorised block; the count does not depend on
    ``split``.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = ideal.num_vars
    if p**k > cap:
        raise CountCapExceeded(f"{p}^{k} = {p**k} evaluations exceed the cap {cap}")
    gens = _reduce_mod_p(ideal, p)
    if not gens:
        count = p**k
        return FpCountRecord(p, k, count, k)
    if split is None:
        split = 0
        while p ** (k - split) > _INNER_MAX:
            split += 1
    if not 0 <= split <= k:
        raise ValueError("split must lie in 0..num_vars")
    inner = k - split

    grid = np.indices((p,) * inner).reshape(inner, -1).astype(np.int64) if inner else np.zeros((0, 1), np.int64)
    size = grid.shape[1]
    pow_cache: dict = {}

    def inner_mono(exps: tuple) -> np.ndarray:
        if exps not in pow_cache:
            val = np.ones(size, dtype=np.int64)
            for j, e in enumerate(exps):
                for _ in range(e):
                    val = (val * grid[j]) % p
            pow_cache[exps] = val
        return pow_cache[exps]

    # group terms by their inner monomial: g = sum_mu c_mu(outer) * mu(inner)
    grouped = []
    for terms in gens:
        by_inner: dict = {}
        for a, exps in terms:
            by_inner.setdefault(exps[split:], []).append((a, exps[:split]))
        grouped.append([(inner_mono(mu), outs) for mu, outs in sorted(by_inner.items())])

    count = 0
    for outer in itertools.product(range(p), repeat=split):
        alive = np.ones(size, dtype=bool)
        for g in grouped:
            acc = np.zeros(size, dtype=np.int64)
            for mu, outs in g:
                c = 0
                for a, oe in outs:
                    t = a
                    for x, e in zip(outer, oe):
                        if e:
                            t = t * pow(x, e, p) % p
                    c = (c + t) % p
                if c:
                    acc += c * mu
            alive &= (acc % p) == 0
            if not alive.any():
                break
        count += int(alive.sum())
    slope = round(math.log(count, p)) if count else -1
    return FpCountRecord(p, k, count, slope)


def dim_from_counts(records: Sequence[FpCountRecord]) -> int:
    """Common rounded ``log_p(count)`` over at least two primes; -1 for no points."""
    if len(records) < 2:
        raise ValueError("need counts over at least two primes")
    if len({r.num_vars for r in records}) != 1:
        raise ValueError("records come from different ambient spaces")
    estimates = {r.prime: r.log_slope for r in records}
    values = set(estimates.values())
    if len(values) != 1:
        raise OracleDisagreement(estimates)
    return values.pop()


def oracle_dimension(ideal: Ideal, primes: Sequence[int] = (5, 7), extra_prime: Optional[int] = 11,
                     cap: int = DEFAULT_CAP):
    """Count over ``primes``; on disagreement re-run with ``extra_prime``.

    Returns ``(estimate, records)``; the estimate is ``None`` when the oracle
    stays inconclusive (the last two primes still disagree, or the extra
    count would exceed the cap).
    """
    records = [count_points(ideal, p, cap) for p in primes]
    try:
        est = dim_from_counts(records)
        return est, [replace(r, agreed=True) for r in records]
    except OracleDisagreement:
        pass
    records = [replace(r, agreed=False) for r in records]
    if extra_prime is None or extra_prime**ideal.num_vars > cap:
        return None, records
    extra = count_points(ideal, extra_prime, cap)
    try:
        est = dim_from_counts([records[-1], extra])
    except OracleDisagreement:
        return None, records + [replace(extra, agreed=False)]
    return est, records[:-1] + [replace(records[-1], agreed=True), replace(extra, agreed=True)]
