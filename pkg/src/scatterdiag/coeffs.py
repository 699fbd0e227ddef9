"""Exact coefficient rings.

Rationals are :class:`fractions.Fraction`. Laurent polynomials in
``q^(1/2)`` store exponents doubled, so ``q^(1/2)`` is the key ``1`` and
``q`` is ``2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ConfigurationError, SchemaError

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"not a rational: {value!r}") from exc
    raise SchemaError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    """Serialized form ``"p/q"``; the denominator is always written."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SchemaError(f"expected a 'p/q' string, got {text!r}")
    return as_rational(text)


class QLaurent:
    """Element of Q[q^(1/2), q^(-1/2)], immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> "QLaurent":
        # terms already normalized (no zeros, Fraction values)
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> "QLaurent":
        return cls({0: Fraction(c)})

    @classmethod
    def monomial(cls, doubled_exp: int, c=1) -> "QLaurent":
        return cls({doubled_exp: Fraction(c)})

    @classmethod
    def delta(cls, doubled_exp: int = 1) -> "QLaurent":
        """q^(s/2) - q^(-s/2) for ``s = doubled_exp``."""
        return cls({doubled_exp: Fraction(1), -doubled_exp: Fraction(-1)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, QLaurent):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, QLaurent):
            other = QLaurent.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return QLaurent._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QLaurent):
            other = QLaurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QLaurent):
            return qlaurent_mul(self, other)
        if isinstance(other, (int, Fraction)):
            if not other:
                return QLaurent()
            return QLaurent._wrap({e: c * other for e, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = QLaurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def eval_one(self) -> Fraction:
        return qlaurent_eval_one(self)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {0}

    def degree_range(self):
        return min(self.terms), max(self.terms)

    def exact_div(self, divisor: "QLaurent") -> "QLaurent":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if not divisor:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        rem = dict(self.terms)
        lo_d, hi_d = divisor.degree_range()
        lead = divisor.terms[hi_d]
        quot = {}
        while rem:
            hi = max(rem)
            if hi - hi_d < min(rem) - lo_d:
                raise ArithmeticError("division is not exact")
            e = hi - hi_d
            c = rem[hi] / lead
            quot[e] = c
            for de, dc in divisor.terms.items():
                k = e + de
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return QLaurent._wrap(quot)

    def __repr__(self):
        return f"QLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {str(e): format_rational(self.terms[e]) for e in sorted(self.terms)}

    @classmethod
    def from_json(cls, obj) -> "QLaurent":
        if not isinstance(obj, dict):
            raise SchemaError(f"expected a map of doubled exponents, got {obj!r}")
        terms = {}
        for key, val in obj.items():
            try:
                e = int(key)
            except ValueError as exc:
                raise SchemaError(f"bad q-exponent key {key!r}") from exc
            terms[e] = parse_rational(val)
        return cls(terms)


def qlaurent_mul(f: QLaurent, g: QLaurent) -> QLaurent:
    out: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return QLaurent._wrap({e: c for e, c in out.items() if c})


def qlaurent_eval_one(f: QLaurent) -> Fraction:
    """Value at q^(1/2) = 1."""
    return sum(f.terms.values(), Fraction(0))


class SquareMatrix:
    """r x r matrix over Q stored row-major as tuples, immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise ConfigurationError("matrix must be square and nonempty")
        self.rows = rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, r: int) -> "SquareMatrix":
        return cls([[0] * r for _ in range(r)])

    @classmethod
    def identity(cls, r: int) -> "SquareMatrix":
        return cls([[int(i == j) for j in range(r)] for i in range(r)])

    @classmethod
    def elementary(cls, r: int, i: int, j: int) -> "SquareMatrix":
        """E_ij with 1-based indices, as in matrix notation."""
        if not (1 <= i <= r and 1 <= j <= r):
            raise ConfigurationError(f"E_{i}{j} out of range for rank {r}")
        return cls([[int((a, b) == (i - 1, j - 1)) for b in range(r)] for a in range(r)])

    def __bool__(self):
        return any(x for row in self.rows for x in row)

    def __eq__(self, other):
        if isinstance(other, SquareMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def _check(self, other: "SquareMatrix"):
        if other.rank != self.rank:
            raise ConfigurationError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return SquareMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        self._check(other)
        return SquareMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __neg__(self):
        return SquareMatrix._raw(tuple(tuple(-a for a in row) for row in self.rows))

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            self._check(other)
            cols = list(zip(*other.rows))
            return SquareMatrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.rows)
            )
        if isinstance(other, (int, Fraction)):
            return SquareMatrix._raw(tuple(tuple(a * other for a in row) for row in self.rows))
        return NotImplemented

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, rows) -> "SquareMatrix":
        obj = cls.__new__(cls)
        obj.rows = rows
        return obj

    def __repr__(self):
        return "SquareMatrix([" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows) + "])"

    def to_json(self) -> list:
        return [[format_rational(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, obj) -> "SquareMatrix":
        if not isinstance(obj, list) or not all(isinstance(row, list) for row in obj):
            raise SchemaError(f"matrix must be a nested array, got {obj!r}")
        try:
            return cls([[parse_rational(x) for x in row] for row in obj])
        except ConfigurationError as exc:
            raise SchemaError(str(exc)) from exc


def matrix_commutator(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """AB - BA."""
    a._check(b)
    return a * b - b * a
