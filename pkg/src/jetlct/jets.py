"""Jet-scheme equations of a hypersurface.

For ``F`` in ``Q[x1..xn]`` the m-th jet scheme ``Z_m`` is cut out in the
``(m+1)n`` variables ``x<i>_<j>`` (``0 <= j <= m``) either by the iterated
derivations ``F, D F, ..., D^m F`` where ``D x<i>_<j> = x<i>_<j+1>``, or by the
Taylor coefficients of ``F(sum_j x<i>_<j> t^j)`` modulo ``t^(m+1)``.  The two
generating sets differ by the unit rescaling ``x<i>_<j> -> j! x<i>_<j>`` and
the factor ``1/p!`` on the p-th generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .polyring import JetVariable, Monomial, Polynomial, _as_fraction

__all__ = [
    "Ideal",
    "jet_variables",
    "derivation_D",
    "jet_ideal",
    "taylor_jet_generators",
    "fiber_ideal_at",
    "rescale_levels",
]


def jet_variables(n: int, m: int, start: int = 0) -> tuple:
    """Jet variables of levels ``start..m`` in level-major order (smallest first)."""
    return tuple(JetVariable(i, j) for j in range(start, m + 1) for i in range(1, n + 1))


@dataclass(frozen=True)
class Ideal:
    """Generators together with the ambient variables of the polynomial ring.

    ``variables`` is listed smallest-first; it fixes the default variable
    sequence of monomial orders and the count used by dimension queries.
    """

    generators: tuple
    variables: tuple

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        variables = tuple(JetVariable(*v) for v in self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("repeated ambient variable")
        ambient = set(variables)
        for g in gens:
            extra = g.variables() - ambient
            if extra:
                names = ", ".join(sorted(map(str, extra)))
                raise ValueError(f"generator uses variables outside the ambient ring: {names}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "variables", variables)

    @classmethod
    def in_jet_ring(cls, generators: Iterable[Polynomial], n: int, m: int, start: int = 0) -> "Ideal":
        return cls(tuple(generators), jet_variables(n, m, start))

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        return max((v.base for v in self.variables), default=1)

    @property
    def max_level(self) -> int:
        return max((v.level for v in self.variables), default=0)

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k):
        return self.generators[k]

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def derivation_D(G: Polynomial) -> Polynomial:
    """Apply the derivation ``x<i>_<j> -> x<i>_<j+1>``; the ambient gains one level."""
    n, top = G.n, G.max_level + 1
    terms: dict = {}
    for mono, c in G.items():
        for v, e in mono:
            # d/dv contributes e * v^(e-1) * D(v)
            up = JetVariable(v[0], v[1] + 1)
            exps = dict(mono)
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            exps[up] = exps.get(up, 0) + 1
            key = Monomial._trusted(tuple(sorted(exps.items())))
            terms[key] = terms.get(key, 0) + c * e
    return Polynomial._raw({m: c for m, c in terms.items() if c}, n, top)


def _check_base_poly(F: Polynomial, m: int) -> None:
    if F.is_zero():
        raise ValueError("jet equations of the zero polynomial are not defined")
    if F.top_level() > 0:
        raise ValueError("F must be a polynomial in the level-0 variables x1..xn")
    if m < 0:
        raise ValueError("jet level m must be >= 0")


def jet_ideal(F: Polynomial, m: int) -> Ideal:
    """The ideal ``(F, D F, ..., D^m F)`` in the ``(m+1)n`` jet variables."""
    _check_base_poly(F, m)
    gens = [F.with_ambient(max_level=m)]
    for _ in range(m):
        gens.append(derivation_D(gens[-1]).with_ambient(max_level=m))
    return Ideal.in_jet_ring(gens, F.n, m)


def _series_mul(a: list, b: list, m: int) -> list:
    out = [dict() for _ in range(m + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(m + 1 - i):
            bj = b[j]
            if not bj:
                continue
            acc = out[i + j]
            for m1, c1 in ai.items():
                for m2, c2 in bj.items():
                    key = m1 * m2
                    acc[key] = acc.get(key, 0) + c1 * c2
    return [{k: c for k, c in t.items() if c} for t in out]


def taylor_jet_generators(F: Polynomial, m: int) -> Ideal:
    """Coefficients ``G_0..G_m`` of ``t^p`` in ``F(sum_j x<i>_<j> t^j)``.

    Computed by truncated power-series multiplication, independently of
    :func:`derivation_D`.
    """
    _check_base_poly(F, m)
    n = F.n
    arcs = {}
    for i in range(1, n + 1):
        arcs[i] = [{Monomial._trusted(((JetVariable(i, j), 1),)): Fraction(1)} for j in range(m + 1)]
    one = [{Monomial(): Fraction(1)}] + [dict() for _ in range(m)]
    powers: dict = {}

    def arc_power(i: int, e: int) -> list:
        if e == 0:
            return one
        if (i, e) not in powers:
            powers[(i, e)] = _series_mul(arc_power(i, e - 1), arcs[i], m)
        return powers[(i, e)]

    total = [dict() for _ in range(m + 1)]
    for mono, c in F.items():
        series = one
        for v, e in mono:
            series = _series_mul(series, arc_power(v[0], e), m)
        for p in range(m + 1):
            acc = total[p]
            for k, cf in series[p].items():
                s = acc.get(k, 0) + c * cf
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
    gens = [Polynomial._raw(t, n, m) for t in total]
    return Ideal.in_jet_ring(gens, n, m)


def rescale_levels(G: Polynomial) -> Polynomial:
    """Substitute ``x<i>_<j> -> j! * x<i>_<j>``."""
    terms = {}
    for mono, c in G.items():
        for v, e in mono:
            c = c * factorial(v[1]) ** e
        terms[mono] = c
    return Polynomial._raw(terms, G.n, G.max_level)


def fiber_ideal_at(F: Polynomial, m: int, x: Sequence, generators: str = "taylor") -> Ideal:
    """Equations of the fiber of ``Z_m -> Z`` over the point ``x``.

    Level-0 variables are replaced by the coordinates of ``x``; the result
    lives in the ``m*n`` variables of levels ``1..m``.  ``generators`` picks
    the Taylor (default) or derivation generating set.
    """
    _check_base_poly(F, m)
    x = [_as_fraction(a) for a in x]
    if len(x) != F.n:
        raise ValueError(f"point has {len(x)} coordinates, ambient has n={F.n}")
    if F.evaluate(x) != 0:
        raise ValueError("point is not on the hypersurface F = 0; its fiber is empty")
    base = taylor_jet_generators(F, m) if generators == "taylor" else jet_ideal(F, m)
    values = {JetVariable(i + 1, 0): a for i, a in enumerate(x)}
    gens = [g.specialize(values) for g in base.generators]
    return Ideal.in_jet_ring(gens, F.n, m, start=1)
