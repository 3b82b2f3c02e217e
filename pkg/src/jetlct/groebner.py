"""Buchberger's algorithm over Q and combinatorial Krull dimension.

Monomials are packed into single Python integers.  Every exponent gets a
16-bit field whose top bit is a guard bit, so that multiplication is integer
addition and divisibility is one subtraction and one mask.  The packing is
chosen so that integer comparison of codes *is* the monomial order:

* ``lex``: exponents in fields ordered largest variable first, total degree
  in the lowest field;
* ``grevlex``: total degree in the top field, then the complemented
  exponents ``MAX - e`` with the smallest variable most significant.  With
  weights the top field holds the weighted degree instead.

Because the encoding is affine, multiplying a sorted term list by a monomial
keeps it sorted.
"""

from __future__ import annotations

import heapq
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

from .jets import Ideal
from .polyring import JetVariable, Monomial, Polynomial

__all__ = [
    "MonomialOrder",
    "Budget",
    "GroebnerBasis",
    "BudgetExceeded",
    "VariableCapExceeded",
    "groebner_basis",
    "krull_dimension",
    "ideal_membership",
    "normal_form",
    "s_polynomial",
    "max_independent_set_size",
    "DEFAULT_VARIABLE_CAP",
]

DEFAULT_VARIABLE_CAP = 40
DEFAULT_STEPS = 10**6

_W = 16
_GUARD = 1 << (_W - 1)
_MAX = _GUARD - 1
_FIELD = (1 << _W) - 1


class BudgetExceeded(RuntimeError):
    """Raised when a basis computation runs out of steps or time.

    No basis is returned; the attributes describe how far it got.
    """

    def __init__(self, reason: str, steps: int, basis_size: int, pairs_left: int, elapsed: float):
        super().__init__(
            f"{reason}: {steps} reduction steps, {basis_size} basis elements, "
            f"{pairs_left} pairs pending after {elapsed:.2f}s"
        )
        self.reason = reason
        self.steps = steps
        self.basis_size = basis_size
        self.pairs_left = pairs_left
        self.elapsed = elapsed


class VariableCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    """Limits for one basis computation.  ``timeout`` is in seconds."""

    steps: int = DEFAULT_STEPS
    timeout: Optional[float] = None
    variable_cap: int = DEFAULT_VARIABLE_CAP

    @classmethod
    def default(cls) -> "Budget":
        env = os.environ.get("JETLCT_BUDGET_STEPS")
        return cls(steps=int(env)) if env else cls()


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``'grevlex'`` or ``'lex'``; ``variables`` is listed smallest first.

    ``weights`` (grevlex only) replaces the total degree by a weighted degree
    with positive integer weights, one per variable.
    """

    kind: str
    variables: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        variables = tuple(JetVariable(*v) for v in self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("repeated variable in monomial order")
        object.__setattr__(self, "variables", variables)
        if self.weights is not None:
            weights = tuple(int(w) for w in self.weights)
            if self.kind != "grevlex" or len(weights) != len(variables) or min(weights, default=1) < 1:
                raise ValueError("weights need a grevlex order and one positive integer per variable")
            object.__setattr__(self, "weights", None if set(weights) <= {1} else weights)

    @classmethod
    def for_ideal(cls, ideal: Ideal, kind: str = "grevlex") -> "MonomialOrder":
        return cls(kind, ideal.variables)

    def key(self, mono: Monomial):
        """Sort key on :class:`Monomial` (bigger key, bigger monomial)."""
        return _Codec(self).encode(mono)

    def compare(self, a: Monomial, b: Monomial) -> int:
        codec = _Codec(self)
        ka, kb = codec.encode(a), codec.encode(b)
        return (ka > kb) - (ka < kb)


class _Codec:
    """Packs exponent vectors over ``order.variables`` into ordered integers."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.vars = order.variables
        N = self.N = len(self.vars)
        self.index = {v: k for k, v in enumerate(self.vars)}
        self.grevlex = order.kind == "grevlex"
        self.weights = order.weights
        if self.grevlex:
            self.shift = [(N - 1 - k) * _W for k in range(N)]
            self.deg_shift = N * _W
        else:
            self.shift = [(k + 1) * _W for k in range(N)]
            self.deg_shift = 0
        var_fields = sum(_FIELD << s for s in self.shift)
        self.var_mask = var_fields
        self.guard = sum(_GUARD << s for s in self.shift)
        self.ones = sum(1 << s for s in self.shift)
        if self.grevlex:
            self.one = sum(_MAX << s for s in self.shift)
        else:
            self.one = 0
        # position where (exps * ones) accumulates the sum of all fields
        self.sum_shift = (min(self.shift) + max(self.shift)) if N else 0

    def encode_exps(self, exps: dict) -> int:
        if self.weights:
            deg = sum(self.weights[k] * e for k, e in exps.items())
        else:
            deg = sum(exps.values())
        if deg > _MAX:
            raise OverflowError("total degree too large for the packed monomial encoding")
        code = deg << self.deg_shift
        if self.grevlex:
            for k in range(self.N):
                code += (_MAX - exps.get(k, 0)) << self.shift[k]
        else:
            for k, e in exps.items():
                code += e << self.shift[k]
        return code

    def encode(self, mono: Monomial) -> int:
        try:
            return self.encode_exps({self.index[v]: e for v, e in mono})
        except KeyError as err:
            raise ValueError(f"variable {err.args[0]} not in the monomial order") from None

    def exps(self, code: int) -> list:
        out = []
        for s in self.shift:
            f = (code >> s) & _FIELD
            out.append(_MAX - f if self.grevlex else f)
        return out

    def decode(self, code: int) -> Monomial:
        return Monomial._trusted(tuple(sorted(
            (self.vars[k], e) for k, e in enumerate(self.exps(code)) if e)))

    def degree(self, code: int) -> int:
        return (code >> self.deg_shift) & _FIELD

    def support(self, code: int) -> int:
        """Bitmask of the variables occurring in the monomial."""
        mask = 0
        for k, e in enumerate(self.exps(code)):
            if e:
                mask |= 1 << k
        return mask

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial ``a`` divides monomial ``b``."""
        if self.grevlex:
            return ((a + self.guard - b) & self.guard) == self.guard
        return ((b + self.guard - a) & self.guard) == self.guard

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        va, vb = a & self.var_mask, b & self.var_mask
        if self.grevlex:
            # fieldwise min of complemented exponents
            le = ((vb + g - va) & g) >> (_W - 1)  # 1 where va <= vb
            sel = le * _FIELD
            f = (va & sel) | (vb & ~sel & self.var_mask)
            exps = (self.one - f)
            if self.weights:
                deg = sum(w * ((exps >> s) & _FIELD) for w, s in zip(self.weights, self.shift))
            else:
                deg = ((exps * self.ones) >> self.sum_shift) & _FIELD
            return (deg << self.deg_shift) + f
        ge = ((va + g - vb) & g) >> (_W - 1)  # 1 where va >= vb
        sel = ge * _FIELD
        f = (va & sel) | (vb & ~sel & self.var_mask)
        deg = ((f * self.ones) >> self.sum_shift) & _FIELD
        return f + deg

    def coprime(self, a: int, b: int) -> bool:
        return self.lcm(a, b) == a + b - self.one


def _to_terms(poly: Polynomial, codec: _Codec) -> list:
    terms = [(codec.encode(m), mpq(c.numerator, c.denominator)) for m, c in poly.items()]
    terms.sort(reverse=True)
    return terms


def _from_terms(terms: list, codec: _Codec, n: int, max_level: int) -> Polynomial:
    return Polynomial._raw(
        {codec.decode(t): Fraction(int(c.numerator), int(c.denominator)) for t, c in terms},
        n, max_level)


def _monic(terms: list) -> list:
    lc = terms[0][1]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(t, c * inv) for t, c in terms]


class _Engine:
    def __init__(self, codec: _Codec, budget: Budget):
        self.codec = codec
        self.budget = budget
        self.polys: list = []        # monic sorted term lists
        self.lead: list = []         # leading codes
        self.active: list = []       # indices of the current basis
        self.steps = 0
        self.start = time.monotonic()
        self.pairs_left = 0

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget.steps:
            self._fail("step budget exceeded")
        if self.budget.timeout is not None and self.steps % 256 == 0:
            if time.monotonic() - self.start > self.budget.timeout:
                self._fail("time budget exceeded")

    def _fail(self, reason: str):
        raise BudgetExceeded(reason, self.steps, len(self.active), self.pairs_left,
                             time.monotonic() - self.start)

    def reduce(self, acc: dict, reducers: Sequence[int], full: bool = True) -> list:
        """Normal form of the polynomial ``acc`` (code -> coeff); consumes ``acc``.

        With ``full=False`` only the leading term is reduced.
        """
        codec = self.codec
        guard = codec.guard
        polys, lead = self.polys, self.lead
        red = [(lead[i] + guard if codec.grevlex else guard - lead[i], lead[i], polys[i])
               for i in reducers]
        grevlex = codec.grevlex
        heap = [-t for t in acc]
        heapq.heapify(heap)
        rem = []
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            t = -pop(heap)
            c = acc.pop(t, None)
            if c is None:
                continue
            for key, lt, g in red:
                if grevlex:
                    if ((key - t) & guard) != guard:
                        continue
                elif ((t + key) & guard) != guard:
                    continue
                self._tick()
                shift = t - lt
                for k in range(1, len(g)):
                    u, cu = g[k]
                    v = u + shift
                    old = acc.get(v)
                    if old is None:
                        acc[v] = -c * cu
                        push(heap, -v)
                    else:
                        s = old - c * cu
                        if s:
                            acc[v] = s
                        else:
                            del acc[v]
                break
            else:
                rem.append((t, c))
                if not full:
                    rem.extend(sorted(acc.items(), reverse=True))
                    return rem
        return rem

    def add(self, terms: list) -> int:
        self.polys.append(terms)
        self.lead.append(terms[0][0])
        return len(self.polys) - 1


def _spoly_dict(f: list, g: list, lcm: int) -> dict:
    acc: dict = {}
    sf = lcm - f[0][0]
    sg = lcm - g[0][0]
    for k in range(1, len(f)):
        u, c = f[k]
        acc[u + sf] = c
    for k in range(1, len(g)):
        u, c = g[k]
        v = u + sg
        s = acc.get(v, 0) - c
        if s:
            acc[v] = s
        else:
            acc.pop(v, None)
    return acc


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis (monic, sorted by increasing leading monomial)."""

    basis: tuple
    order: MonomialOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False)
    _codes: tuple = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def leading_monomials(self) -> list:
        codec = _Codec(self.order)
        return [codec.decode(t[0][0]) for t in self._codes]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def dimension(self) -> int:
        if self.is_unit():
            return -1
        codec = _Codec(self.order)
        supports = [codec.support(t[0][0]) for t in self._codes]
        return max_independent_set_size(supports, codec.N)

    def contains(self, G: Polynomial) -> bool:
        return ideal_membership(G, self)


def _ambient_of(order: MonomialOrder, polys) -> tuple:
    n = max([v.base for v in order.variables] + [p.n for p in polys] + [1])
    m = max([v.level for v in order.variables] + [p.max_level for p in polys] + [0])
    return n, m


def groebner_basis(ideal: Ideal, order: MonomialOrder | str | None = None,
                   budget: Budget | None = None, reduced: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis by Buchberger's algorithm.

    Pairs are selected by the normal strategy (smallest lcm, by degree and
    then by the order); useless pairs are discarded with the Gebauer–Möller
    installation of Buchberger's product and chain criteria.
    """
    if order is None or isinstance(order, str):
        order = MonomialOrder.for_ideal(ideal, order or "grevlex")
    budget = budget or Budget.default()
    if len(order.variables) > budget.variable_cap:
        raise VariableCapExceeded(
            f"{len(order.variables)} variables exceed the cap of {budget.variable_cap}")
    known = set(order.variables)
    if any(g.variables() - known for g in ideal.generators):
        raise ValueError("monomial order does not cover the ideal's variables")
    codec = _Codec(order)
    eng = _Engine(codec, budget)
    full = reduced
    n, max_level = _ambient_of(order, ideal.generators)

    gens = [_monic(_to_terms(g, codec)) for g in ideal.generators]
    gens.sort(key=lambda t: (codec.degree(t[0][0]), t[0][0]))

    pairs: dict = {}
    heap: list = []
    unit = None

    def pair_key(i, j, lcm):
        return (codec.degree(lcm), lcm, i, j)

    def update(h: int):
        lh = eng.lead[h]
        lead = eng.lead
        cands = []
        for g in eng.active:
            cands.append((g, codec.lcm(lead[g], lh)))
        keep = []
        for k, (g1, l1) in enumerate(cands):
            if l1 == lead[g1] + lh - codec.one:
                keep.append((g1, l1, True))
                continue
            dominated = False
            for g2, l2 in cands[k + 1:]:
                if codec.divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                for g2, l2, _ in keep:
                    if codec.divides(l2, l1):
                        dominated = True
                        break
            if not dominated:
                keep.append((g1, l1, False))
        # old pairs whose lcm is a multiple of lm(h) with both new lcms different
        for (i, j), l in list(pairs.items()):
            if codec.divides(lh, l):
                if codec.lcm(lead[i], lh) != l and codec.lcm(lead[j], lh) != l:
                    del pairs[(i, j)]
        for g1, l1, coprime in keep:
            if not coprime:
                key = (min(g1, h), max(g1, h))
                pairs[key] = l1
                heapq.heappush(heap, pair_key(key[0], key[1], l1))
        eng.active = [g for g in eng.active if not codec.divides(lh, lead[g])] + [h]

    for terms in gens:
        # inter-reduce the input as it arrives
        rem = eng.reduce(dict(terms), eng.active, full)
        if not rem:
            continue
        rem = _monic(rem)
        if rem[0][0] == codec.one:
            unit = rem
            break
        update(eng.add(rem))

    while unit is None and pairs:
        eng.pairs_left = len(pairs)
        _, _, i, j = heapq.heappop(heap)
        lcm = pairs.pop((i, j), None)
        if lcm is None:
            continue
        acc = _spoly_dict(eng.polys[i], eng.polys[j], lcm)
        eng._tick()
        rem = eng.reduce(acc, eng.active, full)
        if not rem:
            continue
        rem = _monic(rem)
        if rem[0][0] == codec.one:
            unit = rem
            break
        update(eng.add(rem))
    eng.pairs_left = 0

    if unit is not None:
        final = [[(codec.one, mpq(1))]]
    elif not reduced:
        final = [eng.polys[i] for i in sorted(eng.active, key=lambda i: eng.lead[i])]
    else:
        act = sorted(eng.active, key=lambda i: eng.lead[i])
        final = []
        for k, i in enumerate(act):
            others = act[:k] + act[k + 1:]
            f = eng.polys[i]
            tail = eng.reduce(dict(f[1:]), others)
            final.append([f[0]] + tail)
    basis = tuple(_from_terms(t, codec, n, max_level) for t in final)
    stats = {"steps": eng.steps, "generated": len(eng.polys),
             "seconds": time.monotonic() - eng.start}
    return GroebnerBasis(basis, order, reduced, stats, tuple(final))


def normal_form(G: Polynomial, B: GroebnerBasis) -> Polynomial:
    codec = _Codec(B.order)
    eng = _Engine(codec, Budget(steps=10**12))
    for t in B._codes:
        eng.add(t)
    rem = eng.reduce(dict(_to_terms(G, codec)), range(len(B._codes)))
    n, m = _ambient_of(B.order, [G])
    return _from_terms(rem, codec, n, m)


def ideal_membership(G: Polynomial, B: GroebnerBasis) -> bool:
    return normal_form(G, B).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    codec = _Codec(order)
    tf = _monic(_to_terms(f, codec))
    tg = _monic(_to_terms(g, codec))
    acc = _spoly_dict(tf, tg, codec.lcm(tf[0][0], tg[0][0]))
    n, m = _ambient_of(order, [f, g])
    return _from_terms(sorted(acc.items(), reverse=True), codec, n, m)


def max_independent_set_size(supports: Sequence[int], num_vars: int) -> int:
    """Largest set of variables containing no support (bitmask) entirely.

    Equals ``num_vars`` minus a minimum hitting set of the supports, found
    by branch and bound.
    """
    sups = sorted(set(supports), key=lambda s: (bin(s).count("1"), s))
    if any(s == 0 for s in sups):
        return -1
    minimal = []
    for s in sups:
        if not any((t & s) == t for t in minimal):
            minimal.append(s)
    best = [num_vars]

    def disjoint_lower_bound(rest):
        used = 0
        count = 0
        for s in rest:
            if not s & used:
                used |= s
                count += 1
        return count

    def search(hit: int, size: int, rest: list):
        rest = [s for s in rest if not s & hit]
        if not rest:
            if size < best[0]:
                best[0] = size
            return
        if size + disjoint_lower_bound(rest) >= best[0]:
            return
        s = rest[0]
        bits = s
        while bits:
            low = bits & -bits
            search(hit | low, size + 1, rest)
            bits ^= low

    search(0, 0, minimal)
    return num_vars - best[0]


def krull_dimension(ideal: Ideal, order: MonomialOrder | str | None = None,
                    budget: Budget | None = None) -> int:
    """Dimension of the variety of ``ideal`` in affine space over its variables; -1 if empty."""
    if ideal.is_zero():
        return ideal.num_vars
    return groebner_basis(ideal, order, budget).dimension()
