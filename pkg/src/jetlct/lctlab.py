"""Log canonical thresholds of hypersurfaces from jet-scheme dimensions.

For ``Z = V(F)`` in ``A^n`` the threshold is ``n - sup_m dim Z_m / (m+1)``.
Every sampled level therefore gives an upper bound.  For homogeneous ``F``
of degree ``d`` with singular locus of dimension ``r`` there is the lower
bound ``min((n - r)/d, 1)``; when a sampled value meets it the threshold is
known exactly.  The ``check_*`` functions test the dimension identities and
inequalities behind that lower bound on concrete input.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .groebner import Budget, BudgetExceeded, krull_dimension
from .jetdim import fiber_dim, jet_scheme_dim
from .jets import Ideal, jet_variables
from .polyring import Polynomial, _as_fraction, partial_derivative, translate
from .ruling import RulingResult, detect_ruling

__all__ = [
    "Verdict",
    "DimRow",
    "LctReport",
    "RulingResult",
    "singular_locus_dim",
    "multiplicity_at",
    "jet_dims",
    "sample_levels",
    "lct_estimate",
    "verify_lower_bound",
    "check_isom_fiber",
    "check_recursion",
    "check_fiber_bound",
    "check_semicontinuity",
    "detect_ruling",
    "equality_characterization",
    "lower_bound",
    "is_singular_point",
    "HOMOGENEOUS_ONLY_NOTE",
]

HOMOGENEOUS_ONLY_NOTE = "lower bound requires homogeneous input"


def _frac(q: Optional[Fraction]) -> Optional[str]:
    return None if q is None else str(q)


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str
    fatal: bool = False
    applicable: bool = True

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "applicable": self.applicable,
                "fatal": self.fatal, "detail": self.detail}


@dataclass(frozen=True)
class DimRow:
    """One row of a jet-dimension table.  ``None`` marks a value not computed."""

    m: int
    dim_jets: Optional[int]
    dim_fiber0: Optional[int]
    complete: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return {"m": self.m, "dim_jets": self.dim_jets, "dim_fiber0": self.dim_fiber0,
                "complete": self.complete, "note": self.note or None}


@dataclass
class LctReport:
    input: str
    n: int
    d: int
    homogeneous: bool
    r: int
    dim_table: list
    upper_bound: Optional[Fraction]
    lower_bound: Optional[Fraction]
    exact: bool
    ruling: Optional[RulingResult]
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def values(self) -> list:
        """``(m, n - dim Z_m / (m+1))`` for every completed row."""
        return [(row.m, self.n - Fraction(row.dim_jets, row.m + 1))
                for row in self.dim_table if row.complete and row.dim_jets is not None]

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "n": self.n,
            "d": self.d,
            "homogeneous": self.homogeneous,
            "r": self.r,
            "dim_table": [row.to_dict() for row in self.dim_table],
            "upper_bound": _frac(self.upper_bound),
            "lower_bound": _frac(self.lower_bound),
            "exact": self.exact,
            "ruling": self.ruling.to_dict() if self.ruling else None,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "notes": list(self.notes),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }


def _check_base(F: Polynomial) -> None:
    if F.is_zero():
        raise ValueError("F must be nonzero")
    if F.top_level() > 0:
        raise ValueError("F must be a polynomial in the level-0 variables x1..xn")


def _require_homogeneous(F: Polynomial, what: str) -> None:
    _check_base(F)
    if not F.is_homogeneous():
        raise ValueError(f"{what} requires a homogeneous polynomial")


def _degree(F: Polynomial) -> int:
    return F.total_degree


def singular_locus_dim(F: Polynomial, budget: Budget | None = None) -> int:
    """Dimension of ``V(F, dF/dx_1, ..., dF/dx_n)``; -1 when ``Z`` is smooth."""
    _check_base(F)
    gens = [F] + [partial_derivative(F, i) for i in range(1, F.n + 1)]
    return krull_dimension(Ideal(gens, jet_variables(F.n, 0)), budget=budget)


def multiplicity_at(F: Polynomial, x: Sequence) -> int:
    """Lowest total degree of ``F`` expanded around the point ``x`` of ``Z``."""
    _check_base(F)
    x = [_as_fraction(a) for a in x]
    if F.evaluate(x) != 0:
        raise ValueError("point is not on the hypersurface F = 0")
    G = translate(F, x)
    return min(mono.total_degree for mono in G.terms)


def lower_bound(n: int, r: int, d: int) -> Fraction:
    """``min((n - r)/d, 1)``; a smooth ``Z`` has ``r = -1``."""
    return min(Fraction(n - r, d), Fraction(1))


def sample_levels(F: Polynomial, max_k: int) -> list:
    """``m = kd - 1`` for homogeneous ``F`` of degree ``d``, else ``m = k - 1`` (``k = 1..max_k``)."""
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    step = _degree(F) if F.is_homogeneous() else 1
    return [k * step - 1 for k in range(1, max_k + 1)]


def jet_dims(F: Polynomial, levels: Sequence[int], method: str = "auto",
             budget: Budget | None = None) -> list:
    """``dim Z_m`` and ``dim`` of the fiber over the origin for each ``m``.

    The fiber column is ``None`` when the origin is not on ``Z``.  A level
    that runs out of budget is kept as an incomplete row.
    """
    _check_base(F)
    on_origin = F.constant_term() == 0
    rows = []
    for m in levels:
        try:
            dz = jet_scheme_dim(F, m, method, budget)
            df = fiber_dim(F, m, (0,) * F.n, method, budget) if on_origin else None
            rows.append(DimRow(m, dz, df))
        except BudgetExceeded as exc:
            rows.append(DimRow(m, None, None, complete=False, note=f"budget exceeded: {exc.reason}"))
    return rows


def _row_invariants(F: Polynomial, rows: list) -> Verdict:
    n = F.n
    bad = []
    for row in rows:
        if not row.complete or row.dim_jets is None or row.dim_jets < 0:
            continue
        if not (row.m + 1) * (n - 1) <= row.dim_jets <= (row.m + 1) * n:
            bad.append(row.m)
    detail = "all rows within [(m+1)(n-1), (m+1)n]" if not bad else f"rows out of range at m={bad}"
    return Verdict("dim_table_range", not bad, detail, fatal=bool(bad))


def lct_estimate(F: Polynomial, max_k: int, method: str = "auto", budget: Budget | None = None,
                 source: Optional[str] = None) -> LctReport:
    """Sample ``n - dim Z_m/(m+1)`` and compare against the lower bound."""
    _check_base(F)
    timings = {}
    t0 = time.perf_counter()
    n, d, homog = F.n, _degree(F), F.is_homogeneous()
    r = singular_locus_dim(F, budget)
    timings["singular_locus"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    rows = jet_dims(F, sample_levels(F, max_k), method, budget)
    timings["jet_dims"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ruling = detect_ruling(F) if not F.is_constant() else None
    timings["ruling"] = time.perf_counter() - t0

    notes = []
    report = LctReport(source if source is not None else str(F), n, d, homog, r, rows,
                       None, None, False, ruling, notes=notes, timings=timings)
    values = report.values()
    if values:
        report.upper_bound = min(v for _, v in values)
    if any(not row.complete for row in rows):
        notes.append("some levels exceeded the budget; bounds use completed rows only")
    if homog:
        report.lower_bound = lower_bound(n, r, d)
        report.exact = report.upper_bound is not None and report.upper_bound == report.lower_bound
        report.verdicts.append(verify_lower_bound(F, report))
    else:
        notes.append(HOMOGENEOUS_ONLY_NOTE)
    report.verdicts.append(_row_invariants(F, rows))
    return report


def verify_lower_bound(F: Polynomial, report: LctReport) -> Verdict:
    """Every sampled value must be at least ``min((n - r)/d, 1)``.

    A failure can only come from a bug in this package and is marked fatal.
    """
    _require_homogeneous(F, "verify_lower_bound")
    bound = lower_bound(report.n, report.r, report.d)
    values = report.values()
    low = [(m, v) for m, v in values if v < bound]
    if low:
        shown = ", ".join(f"m={m}: {v}" for m, v in low)
        return Verdict("main1", False, f"values below the bound {bound}: {shown}", fatal=True)
    shown = ", ".join(f"m={m}: {v}" for m, v in values)
    return Verdict("main1", True, f"all values >= {bound} ({shown})")


def _lower_dim(F: Polynomial, k: int, method: str, budget) -> int:
    # the jet scheme of level -1 is the origin
    return 0 if k == -1 else jet_scheme_dim(F, k, method, budget)


def _check_level(F: Polynomial, m: int) -> int:
    d = _degree(F)
    if m < d - 1:
        raise ValueError(f"level m={m} must be at least d-1={d - 1}")
    return d


def check_isom_fiber(F: Polynomial, m: int, method: str = "auto", budget: Budget | None = None) -> Verdict:
    """``dim`` of the fiber over 0 equals ``dim Z_(m-d) + n(d-1)``.

    The fiber is always computed from its own ideal; ``method`` only affects
    the right-hand side.
    """
    _require_homogeneous(F, "check_isom_fiber")
    d = _check_level(F, m)
    n = F.n
    lhs = fiber_dim(F, m, (0,) * n, "direct", budget)
    rhs = _lower_dim(F, m - d, method, budget) + n * (d - 1)
    return Verdict("isom", lhs == rhs, f"m={m}: dim fiber over 0 = {lhs}, dim Z_{m - d} + n(d-1) = {rhs}")


def check_recursion(F: Polynomial, m: int, method: str = "auto", budget: Budget | None = None) -> Verdict:
    """``dim Z_m <= max((m+1)(n-1), dim Z_(m-d) + n(d-1) + r)``."""
    _require_homogeneous(F, "check_recursion")
    d = _check_level(F, m)
    n = F.n
    r = singular_locus_dim(F, budget)
    if r < 0:
        raise ValueError("check_recursion requires a singular hypersurface (r >= 0)")
    lhs = jet_scheme_dim(F, m, method, budget)
    rhs = max((m + 1) * (n - 1), _lower_dim(F, m - d, method, budget) + n * (d - 1) + r)
    return Verdict("recursion", lhs <= rhs, f"m={m}: dim Z_m = {lhs} <= {rhs}")


def check_fiber_bound(F: Polynomial, x: Sequence, m: int, budget: Budget | None = None) -> Verdict:
    """Fiber over ``x`` has dimension at most ``mn - floor(m/q)``, ``q`` the multiplicity."""
    _check_base(F)
    if m < 0:
        raise ValueError("jet level m must be >= 0")
    q = multiplicity_at(F, x)
    dim = fiber_dim(F, m, x, "direct", budget)
    bound = m * F.n - m // q
    return Verdict("fiber", dim <= bound, f"m={m}, q={q}: dim fiber = {dim} <= {bound}")


def is_singular_point(F: Polynomial, x: Sequence) -> bool:
    if len(x) != F.n:
        return False
    return F.evaluate(x) == 0 and all(partial_derivative(F, i).evaluate(x) == 0
                                      for i in range(1, F.n + 1))


def check_semicontinuity(F: Polynomial, m: int, xs: Sequence, budget: Budget | None = None) -> Verdict:
    """Fibers over the singular points ``xs`` are no bigger than the fiber over 0."""
    _require_homogeneous(F, "check_semicontinuity")
    points = [tuple(_as_fraction(a) for a in x) for x in xs]
    for x in points:
        if not is_singular_point(F, x):
            raise ValueError(f"point {tuple(map(str, x))} is not a singular point of Z")
    n = F.n
    origin = fiber_dim(F, m, (0,) * n, "direct", budget)
    dims = [fiber_dim(F, m, x, "direct", budget) for x in points]
    ok = all(dim <= origin for dim in dims)
    shown = ", ".join(f"({', '.join(map(str, x))}): {dim}" for x, dim in zip(points, dims))
    return Verdict("semicont", ok, f"m={m}: fiber over 0 = {origin}; {shown or 'no points'}")


def equality_characterization(F: Polynomial, max_k: int, method: str = "auto",
                              budget: Budget | None = None) -> Verdict:
    """Cross-check the equality case ``lct = (n - r)/d`` against the product structure.

    Forward: an exact threshold equal to ``(n - r)/d`` must come with a
    ruling of dimension ``r`` whose reduced polynomial is singular only at
    the origin.  Backward: such a ruling must give an exact threshold equal
    to ``(n - r)/d``.  Only meaningful when ``d >= n - r + 1``.
    """
    _require_homogeneous(F, "equality_characterization")
    n, d = F.n, _degree(F)
    r = singular_locus_dim(F, budget)
    if d < n - r + 1:
        return Verdict("main2", True, f"not applicable: d={d} < n-r+1={n - r + 1}", applicable=False)
    target = Fraction(n - r, d)
    report = lct_estimate(F, max_k, method, budget)
    ruling = report.ruling
    T = ruling.reduced_poly
    isolated = singular_locus_dim(T, budget) == 0 and T.constant_term() == 0
    product = ruling.r_prime == r and isolated and _degree(T) == d

    forward_hyp = report.exact and report.upper_bound == target
    backward_hyp = product
    forward_ok = not forward_hyp or product
    backward_ok = not backward_hyp or (report.exact and report.upper_bound == target)
    detail = (f"target (n-r)/d = {target}; upper bound {report.upper_bound}, exact={report.exact}; "
              f"ruling dim {ruling.r_prime}, T = {T} in {T.n} variables, Sing(T) = {{0}}: {isolated}; "
              f"forward {'ok' if forward_ok else 'FAILED'}"
              f"{'' if forward_hyp else ' (vacuous)'}, backward {'ok' if backward_ok else 'FAILED'}"
              f"{'' if backward_hyp else ' (vacuous)'}")
    return Verdict("main2", forward_ok and backward_ok, detail)
