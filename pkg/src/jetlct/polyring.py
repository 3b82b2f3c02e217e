"""Sparse multivariate polynomials over the rationals in jet variables.

A jet variable ``X_i^(j)`` is written ``x<i>_<j>`` (``x<i>`` when ``j == 0``).
Polynomials are immutable; arithmetic always returns new canonical objects
(no zero coefficients, distinct monomials).
"""

from __future__ import annotations

from fractions import Fraction
from operator import itemgetter
from typing import Iterable, Mapping, Union

__all__ = [
    "JetVariable",
    "Monomial",
    "Polynomial",
    "ParseError",
    "parse_poly",
    "render",
    "partial_derivative",
    "translate",
    "graded_pieces",
    "grevlex_key",
]

Number = Union[int, Fraction]


class JetVariable(tuple):
    """The variable ``X_base^(level)``; compares and hashes as ``(base, level)``."""

    __slots__ = ()

    def __new__(cls, base: int, level: int = 0) -> "JetVariable":
        if int(base) != base or int(level) != level:
            raise TypeError("jet variable indices must be integers")
        if base < 1 or level < 0:
            raise ValueError(f"invalid jet variable base={base} level={level}")
        return tuple.__new__(cls, (int(base), int(level)))

    base = property(itemgetter(0))
    level = property(itemgetter(1))

    def __repr__(self) -> str:
        return f"JetVariable({self[0]}, {self[1]})"

    def __str__(self) -> str:
        return f"x{self[0]}" if self[1] == 0 else f"x{self[0]}_{self[1]}"

    def shifted(self, by: int) -> "JetVariable":
        return JetVariable(self[0], self[1] + by)


class Monomial(tuple):
    """Power product stored as a sorted tuple of ``(JetVariable, exponent)``."""

    __slots__ = ()

    def __new__(cls, pairs: Iterable = ()) -> "Monomial":
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        items = sorted((JetVariable(*v), int(e)) for v, e in pairs if e)
        for k in range(1, len(items)):
            if items[k][0] == items[k - 1][0]:
                raise ValueError(f"repeated variable {items[k][0]}")
        if any(e < 0 for _, e in items):
            raise ValueError("negative exponent in monomial")
        return tuple.__new__(cls, items)

    @classmethod
    def _trusted(cls, items) -> "Monomial":
        return tuple.__new__(cls, items)

    @property
    def exponents(self) -> dict:
        return dict(self)

    @property
    def total_degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def jet_weight(self) -> int:
        return sum(v[1] * e for v, e in self)

    def degree_in(self, var) -> int:
        for v, e in self:
            if v == var:
                return e
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self:
            return other
        if not other:
            return self
        merged = dict(self)
        for v, e in other:
            merged[v] = merged.get(v, 0) + e
        return Monomial._trusted(sorted(merged.items()))

    def without(self, var) -> "Monomial":
        return Monomial._trusted(tuple(p for p in self if p[0] != var))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


ONE = Monomial()


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    try:
        # gmpy2.mpq and friends
        return Fraction(int(c.numerator), int(c.denominator))
    except AttributeError:
        raise TypeError(f"not an exact rational: {c!r}") from None


class Polynomial:
    """Canonical sparse polynomial in the jet ring ``Q[X_i^(j); 1<=i<=n, 0<=j<=max_level]``."""

    __slots__ = ("_terms", "n", "max_level", "_hash")

    def __init__(self, terms: Mapping | None = None, n: int = 1, max_level: int = 0):
        if n < 1 or max_level < 0:
            raise ValueError("ambient needs n >= 1 and max_level >= 0")
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(mono)
            c = _as_fraction(c)
            if c:
                for v, _ in mono:
                    if v[0] > n or v[1] > max_level:
                        raise ValueError(f"variable {v} outside ambient n={n}, max_level={max_level}")
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self.n = n
        self.max_level = max_level
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, n: int, max_level: int) -> "Polynomial":
        # caller guarantees canonical terms inside the ambient
        p = object.__new__(cls)
        p._terms = terms
        p.n = n
        p.max_level = max_level
        p._hash = None
        return p

    # construction helpers
    @classmethod
    def zero(cls, n: int, max_level: int = 0) -> "Polynomial":
        return cls._raw({}, n, max_level)

    @classmethod
    def constant(cls, c: Number, n: int, max_level: int = 0) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw({ONE: c} if c else {}, n, max_level)

    @classmethod
    def variable(cls, base: int, level: int = 0, n: int | None = None, max_level: int | None = None) -> "Polynomial":
        v = JetVariable(base, level)
        n = base if n is None else n
        max_level = level if max_level is None else max_level
        if base > n or level > max_level:
            raise ValueError(f"variable {v} outside ambient")
        return cls._raw({Monomial._trusted(((v, 1),)): Fraction(1)}, n, max_level)

    @classmethod
    def gens(cls, n: int, max_level: int = 0) -> list:
        """Level-0 generators ``x1..xn`` in the given ambient."""
        return [cls.variable(i, 0, n, max_level) for i in range(1, n + 1)]

    # basic queries
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((m.total_degree for m in self._terms), default=-1)

    degree = total_degree

    def is_homogeneous(self) -> bool:
        return len({m.total_degree for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def top_level(self) -> int:
        """Highest jet level actually occurring (-1 for constants)."""
        return max((v[1] for v in self.variables()), default=-1)

    def coefficient(self, mono) -> Fraction:
        if not isinstance(mono, Monomial):
            mono = Monomial(mono)
        return self._terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    def with_ambient(self, n: int | None = None, max_level: int | None = None) -> "Polynomial":
        n = self.n if n is None else n
        max_level = self.max_level if max_level is None else max_level
        for v in self.variables():
            if v[0] > n or v[1] > max_level:
                raise ValueError(f"variable {v} outside ambient n={n}, max_level={max_level}")
        return Polynomial._raw(self._terms, n, max_level)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"ambient mismatch: n={self.n} vs n={other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.n, self.max_level)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self.n, max(self.max_level, other.max_level))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.n, self.max_level)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.n, self.max_level)
            return Polynomial._raw({m: c * other for m, c in self._terms.items()}, self.n, self.max_level)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in terms.items() if c}, self.n,
                               max(self.max_level, other.max_level))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.n, self.max_level)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {ONE: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # substitution
    def specialize(self, values: Mapping) -> "Polynomial":
        """Replace the given variables by rational numbers."""
        values = {JetVariable(*v): _as_fraction(c) for v, c in values.items()}
        terms: dict = {}
        for m, c in self._terms.items():
            rest = []
            for v, e in m:
                if v in values:
                    c = c * values[v] ** e
                    if not c:
                        break
                else:
                    rest.append((v, e))
            else:
                key = Monomial._trusted(tuple(rest))
                terms[key] = terms.get(key, 0) + c
        return Polynomial._raw({m: c for m, c in terms.items() if c}, self.n, self.max_level)

    def substitute(self, images: Mapping, n: int | None = None, max_level: int | None = None) -> "Polynomial":
        """Ring map sending each listed variable to a polynomial (others fixed)."""
        images = {JetVariable(*v): p for v, p in images.items()}
        n = self.n if n is None else n
        max_level = self.max_level if max_level is None else max_level
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v].with_ambient(n, max(max_level, images[v].max_level)) ** e
            return powers[key]

        total = Polynomial.zero(n, max_level)
        for m, c in self._terms.items():
            fixed = []
            term = Polynomial.constant(c, n, max_level)
            for v, e in m:
                if v in images:
                    term = term * power(v, e)
                else:
                    fixed.append((v, e))
            if fixed:
                term = term * Polynomial._raw({Monomial._trusted(tuple(fixed)): Fraction(1)}, n, max_level)
            total = total + term
        return total

    def evaluate(self, point: Iterable[Number]) -> Fraction:
        """Value at a rational point (level-0 polynomials only)."""
        point = [_as_fraction(a) for a in point]
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, ambient has n={self.n}")
        if self.top_level() > 0:
            raise ValueError("evaluate() needs a polynomial in level-0 variables")
        rest = self.specialize({JetVariable(i + 1, 0): a for i, a in enumerate(point)})
        return rest.constant_term()

    # display
    def sorted_terms(self, key=None) -> list:
        key = key or grevlex_key(self.n, self.max_level)
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r}, n={self.n})"


def grevlex_key(n: int, max_level: int):
    """Sort key for grevlex over the level-major sequence x1 < x2 < ... < x1_1 < ...

    Larger key means larger monomial.
    """
    seq = [JetVariable(i, j) for j in range(max_level + 1) for i in range(1, n + 1)]

    def key(mono: Monomial):
        exps = dict(mono)
        return (mono.total_degree, tuple(-exps.get(v, 0) for v in seq))

    return key


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(F: Polynomial, key=None) -> str:
    """Text form in the parser grammar, terms in descending monomial order."""
    if F.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(F.sorted_terms(key)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = _render_coeff(a)
        elif a == 1:
            body = str(m)
        else:
            body = f"{_render_coeff(a)}*{m}"
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# parser

class ParseError(ValueError):
    """Bad polynomial text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0
        self.max_level = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected unsigned integer", start)
        return int(self.text[start:self.pos])

    def parse(self):
        terms = self.expr()
        if self.peek():
            ch = self.peek()
            if ch == "x" or ch.isdigit() or ch == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", self.pos)
            raise ParseError(f"unexpected {ch!r}", self.pos)
        return terms

    def expr(self):
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = _scale(self.term(), sign)
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = _mul(acc, self.factor())
        return acc

    def factor(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            val = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
        elif ch == "x":
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise ParseError("expected variable index after 'x'", self.pos)
            base = self.uint()
            level = 0
            if self.pos < len(self.text) and self.text[self.pos] == "_":
                self.pos += 1
                if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                    raise ParseError("expected jet level after '_'", self.pos)
                level = self.uint()
            if not 1 <= base <= self.n:
                raise ParseError(f"variable index {base} out of range 1..{self.n}", start)
            self.max_level = max(self.max_level, level)
            val = {Monomial._trusted(((JetVariable(base, level), 1),)): Fraction(1)}
        elif ch.isdigit():
            num = self.uint()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den_pos = self.pos
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", den_pos)
            c = Fraction(num, den)
            val = {ONE: c} if c else {}
        elif not ch:
            raise ParseError("unexpected end of input", self.pos)
        else:
            raise ParseError(f"unexpected {ch!r}", self.pos)
        while self.peek() == "^":
            self.pos += 1
            if self.peek() == "-":
                raise ParseError("negative exponent", self.pos)
            val = _pow(val, self.uint())
        return val


def _scale(a: dict, s) -> dict:
    return {m: c * s for m, c in a.items()}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 * m2
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _pow(a: dict, k: int) -> dict:
    out = {ONE: Fraction(1)}
    for _ in range(k):
        out = _mul(out, a)
    return out


def parse_poly(text: str, n: int) -> Polynomial:
    """Parse ``text`` into a polynomial in ``x1..xn`` (jet names ``x<i>_<j>`` allowed).

    >>> parse_poly("x1^2 + x2^2", 2).total_degree
    2
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = _Parser(text, n)
    terms = p.parse()
    return Polynomial._raw(terms, n, p.max_level)


# ---------------------------------------------------------------------------
# calculus and coordinate changes

def partial_derivative(F: Polynomial, v) -> Polynomial:
    if isinstance(v, int):
        v = JetVariable(v, 0)
    v = JetVariable(*v)
    if v[0] > F.n or v[1] > F.max_level:
        raise ValueError(f"{v} is not in the ambient of F")
    terms: dict = {}
    for m, c in F.items():
        e = m.degree_in(v)
        if e:
            rest = [(w, f - 1) if w == v else (w, f) for w, f in m]
            key = Monomial._trusted(tuple(p for p in rest if p[1]))
            terms[key] = terms.get(key, 0) + c * e
    return Polynomial._raw({m: c for m, c in terms.items() if c}, F.n, F.max_level)


def translate(F: Polynomial, a) -> Polynomial:
    """Return ``F(X + a)``."""
    a = [_as_fraction(t) for t in a]
    if len(a) != F.n:
        raise ValueError(f"translation vector has length {len(a)}, ambient has n={F.n}")
    if F.top_level() > 0:
        raise ValueError("translate() needs a polynomial in level-0 variables")
    images = {}
    for i, t in enumerate(a, start=1):
        if t:
            images[JetVariable(i, 0)] = Polynomial.variable(i, 0, F.n, F.max_level) + t
    return F.substitute(images) if images else F


def graded_pieces(F: Polynomial, axis: int) -> list:
    """Split homogeneous ``F`` of degree d as ``sum_i f_i * x_axis^(d-i)``.

    Returns ``[(f_0, 0), ..., (f_d, d)]``; each ``f_i`` is homogeneous of
    degree ``i`` and free of ``x_axis``.
    """
    if F.top_level() > 0:
        raise ValueError("graded_pieces() needs a polynomial in level-0 variables")
    if not F.is_homogeneous():
        raise ValueError("graded_pieces() needs a homogeneous polynomial")
    if not 1 <= axis <= F.n:
        raise ValueError(f"axis {axis} out of range 1..{F.n}")
    v = JetVariable(axis, 0)
    d = max(F.total_degree, 0)
    pieces = [dict() for _ in range(d + 1)]
    for m, c in F.items():
        i = d - m.degree_in(v)
        pieces[i][m.without(v)] = c
    return [(Polynomial._raw(t, F.n, F.max_level), i) for i, t in enumerate(pieces)]

