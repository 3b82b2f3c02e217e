"""Translation directions of a hypersurface and the induced product structure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import JetVariable, Polynomial, partial_derivative

__all__ = ["RulingResult", "detect_ruling", "nullspace_rref", "apply_change"]


@dataclass(frozen=True)
class RulingResult:
    """``F`` is invariant under translation by the span of ``basis``.

    ``change`` is the square matrix (rows indexed by old coordinates) whose
    columns are the complement vectors followed by ``basis``; substituting
    ``x = change @ (y, z)`` into ``F`` gives ``reduced_poly(y)``, which does
    not involve ``z``.
    """

    r_prime: int
    basis: tuple
    reduced_poly: Polynomial
    complement: tuple
    change: tuple
    pivots: tuple

    def to_dict(self) -> dict:
        return {
            "r_prime": self.r_prime,
            "basis": [[str(c) for c in v] for v in self.basis],
            "complement": [[str(c) for c in v] for v in self.complement],
            "reduced_poly": str(self.reduced_poly),
            "reduced_n": self.reduced_poly.n,
        }


def nullspace_rref(rows: list, ncols: int) -> list:
    """Basis of ``{v : M v = 0}`` in reduced row-echelon form."""
    M = [list(map(Fraction, r)) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pr = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if pr is None:
            continue
        M[rank], M[pr] = M[pr], M[rank]
        piv = M[rank][col]
        M[rank] = [a / piv for a in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -M[i][f]
        kernel.append(v)
    # row-reduce the kernel vectors themselves for a canonical basis
    if not kernel:
        return []
    K = kernel
    out_rank = 0
    for col in range(ncols):
        pr = next((i for i in range(out_rank, len(K)) if K[i][col]), None)
        if pr is None:
            continue
        K[out_rank], K[pr] = K[pr], K[out_rank]
        piv = K[out_rank][col]
        K[out_rank] = [a / piv for a in K[out_rank]]
        for i in range(len(K)):
            if i != out_rank and K[i][col]:
                f = K[i][col]
                K[i] = [a - f * b for a, b in zip(K[i], K[out_rank])]
        out_rank += 1
    return K


def detect_ruling(F: Polynomial) -> RulingResult:
    """Maximal space of directions ``v`` with ``sum_i v_i dF/dx_i = 0``.

    Over Q this is exactly the space of translations fixing ``F``.  The
    basis is the reduced row-echelon basis; the complement consists of the
    standard vectors at non-pivot positions, and the reduced polynomial is
    ``F`` restricted to that complement, written in ``n - r_prime`` variables.
    """
    if F.top_level() > 0:
        raise ValueError("detect_ruling() needs a polynomial in level-0 variables")
    if F.is_zero():
        raise ValueError("the zero polynomial defines no hypersurface")
    if F.is_constant():
        raise ValueError("a constant polynomial defines no hypersurface")
    n = F.n
    partials = [partial_derivative(F, i) for i in range(1, n + 1)]
    monos = sorted({m for p in partials for m in p.terms}, key=str)
    rows = [[p.coefficient(m) for p in partials] for m in monos]
    basis = nullspace_rref(rows, n)
    pivots = tuple(next(k for k, a in enumerate(v) if a) for v in basis)
    free = [k for k in range(n) if k not in pivots]
    complement = []
    for k in free:
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        complement.append(tuple(e))
    basis = tuple(tuple(v) for v in basis)
    cols = list(complement) + list(basis)
    change = tuple(tuple(cols[c][row] for c in range(n)) for row in range(n))

    # T(y) = F(sum_k y_k e_{free_k}), renamed into n - r' variables
    k = len(free)
    restricted = F.specialize({JetVariable(i + 1, 0): 0 for i in pivots})
    rename = {JetVariable(old + 1, 0): Polynomial.variable(new + 1, 0, k) for new, old in enumerate(free)}
    T = restricted.substitute(rename, n=k, max_level=0)
    if apply_change(F, change) != T.with_ambient(n=n):
        raise AssertionError("ruling change of coordinates does not reproduce F")
    return RulingResult(len(basis), basis, T, tuple(complement), change, pivots)


def apply_change(F: Polynomial, change) -> Polynomial:
    """``F(A y)`` for the square rational matrix ``A`` (rows indexed by old coordinates)."""
    n = F.n
    images = {}
    for i in range(n):
        img = Polynomial.zero(n)
        for j, a in enumerate(change[i]):
            if a:
                img = img + Polynomial.variable(j + 1, 0, n) * a
        images[JetVariable(i + 1, 0)] = img
    return F.substitute(images)
