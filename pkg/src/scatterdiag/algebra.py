"""Truncated Lie algebras of the tropical, quantum and extended vertex groups.

A :class:`LieElement` is a finite map ``(m, k) -> coefficient`` where ``m`` is
a nonzero lattice grade and ``1 <= k <= order`` the power of ``t``.
Coefficient types by flavor:

* tropical -- ``Fraction`` c, meaning ``c * t^k z^m d_{nu(m)}``;
* quantum -- :class:`QLaurent`, the coefficient of ``t^k z^m``;
* extended -- :class:`ExtCoeff` ``(A, c)``, meaning ``(A t^k z^m, c t^k z^m d_{nu(m)})``.

``nu(m)`` is the primitive normal used for derivations: :func:`lattice.perp`
for the tropical flavor and its negative for the extended flavor (see
:func:`derivation_normal`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from . import kernels
from .coeffs import QLaurent, SquareMatrix, matrix_commutator
from .errors import ConfigurationError, DegenerateGradingError, GradeZeroError
from .lattice import Vec, pair, perp, primitive_part, sort_angular

TROPICAL = "tropical"
QUANTUM = "quantum"
EXTENDED = "extended"


@dataclass(frozen=True)
class Flavor:
    tag: str
    rank: Optional[int] = None

    def __post_init__(self):
        if self.tag not in (TROPICAL, QUANTUM, EXTENDED):
            raise ConfigurationError(f"unknown flavor {self.tag!r}")
        if (self.rank is not None) != (self.tag == EXTENDED):
            raise ConfigurationError("rank is required for, and only for, the extended flavor")
        if self.rank is not None and self.rank < 1:
            raise ConfigurationError("rank must be positive")

    @classmethod
    def tropical(cls) -> "Flavor":
        return cls(TROPICAL)

    @classmethod
    def quantum(cls) -> "Flavor":
        return cls(QUANTUM)

    @classmethod
    def extended(cls, rank: int) -> "Flavor":
        return cls(EXTENDED, rank)

    def __str__(self):
        return self.tag if self.rank is None else f"{self.tag}(r={self.rank})"


def derivation_normal(m: Vec, flavor: Flavor) -> Vec:
    """Primitive n with <n, m> = 0 used to store derivation parts.

    The extended flavor orients its normal opposite to ``perp``; this is the
    orientation under which the extended two-wall seed saturates with a
    single ray carrying ``t^2 <m1, n2> E_ij z^(m1+m2)``.
    """
    n = perp(m)
    if flavor.tag == EXTENDED:
        return (-n[0], -n[1])
    return n


@dataclass(frozen=True)
class ExtCoeff:
    """Coefficient (A, c) of the extended algebra: matrix part and derivation part."""

    matrix: SquareMatrix
    deriv: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.deriv, Fraction):
            object.__setattr__(self, "deriv", Fraction(self.deriv))

    def __bool__(self):
        return bool(self.deriv) or bool(self.matrix)

    def __add__(self, other: "ExtCoeff") -> "ExtCoeff":
        return ExtCoeff(self.matrix + other.matrix, self.deriv + other.deriv)

    def __sub__(self, other: "ExtCoeff") -> "ExtCoeff":
        return ExtCoeff(self.matrix - other.matrix, self.deriv - other.deriv)

    def __neg__(self) -> "ExtCoeff":
        return ExtCoeff(-self.matrix, -self.deriv)

    def __mul__(self, s) -> "ExtCoeff":
        if isinstance(s, (int, Fraction)):
            return ExtCoeff(self.matrix * s, self.deriv * s)
        return NotImplemented

    __rmul__ = __mul__


def _check_coeff(flavor: Flavor, c):
    if flavor.tag == TROPICAL:
        if not isinstance(c, (Fraction, int)) or isinstance(c, bool):
            raise ConfigurationError(f"tropical coefficient must be rational, got {c!r}")
        return Fraction(c)
    if flavor.tag == QUANTUM:
        if isinstance(c, (Fraction, int)) and not isinstance(c, bool):
            return QLaurent.const(c)
        if not isinstance(c, QLaurent):
            raise ConfigurationError(f"quantum coefficient must be a QLaurent, got {c!r}")
        return c
    if not isinstance(c, ExtCoeff):
        raise ConfigurationError(f"extended coefficient must be an ExtCoeff, got {c!r}")
    if c.matrix.rank != flavor.rank:
        raise ConfigurationError(f"matrix rank {c.matrix.rank} does not match flavor rank {flavor.rank}")
    return c


class LieElement:
    """Element of the truncated graded Lie algebra, immutable."""

    __slots__ = ("flavor", "order", "terms")

    def __init__(self, flavor: Flavor, order: int, terms=None):
        if order < 1:
            raise ConfigurationError("truncation order must be >= 1")
        clean = {}
        for key, c in (terms or {}).items():
            m, k = key
            m = (int(m[0]), int(m[1]))
            if m == (0, 0):
                raise DegenerateGradingError("grade 0 is excluded from the algebra")
            if k < 1:
                raise ConfigurationError(f"t-order {k} < 1 is outside the ideal (t)")
            if k > order:
                continue
            c = _check_coeff(flavor, c)
            if c:
                clean[(m, k)] = c
        self.flavor = flavor
        self.order = order
        self.terms = clean

    @classmethod
    def _wrap(cls, flavor: Flavor, order: int, terms: dict) -> "LieElement":
        obj = cls.__new__(cls)
        obj.flavor = flavor
        obj.order = order
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, flavor: Flavor, order: int) -> "LieElement":
        return cls._wrap(flavor, order, {})

    @classmethod
    def monomial(cls, flavor: Flavor, order: int, m: Vec, k: int, c) -> "LieElement":
        return cls(flavor, order, {(m, k): c})

    # -- structure -----------------------------------------------------

    def _compatible(self, other: "LieElement"):
        if not isinstance(other, LieElement):
            raise TypeError(f"expected LieElement, got {type(other).__name__}")
        if self.flavor != other.flavor:
            raise ConfigurationError(f"flavor mismatch: {self.flavor} vs {other.flavor}")
        if self.order != other.order:
            raise ConfigurationError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.flavor == other.flavor and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.flavor, self.order, frozenset(self.terms)))

    def __repr__(self):
        body = ", ".join(f"{m}t^{k}: {c}" for (m, k), c in sorted(self.terms.items(), key=_term_key))
        return f"LieElement<{self.flavor}, N={self.order}>{{{body}}}"

    # -- vector space --------------------------------------------------

    def __add__(self, other: "LieElement") -> "LieElement":
        self._compatible(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return LieElement._wrap(self.flavor, self.order, out)

    def __neg__(self) -> "LieElement":
        return LieElement._wrap(self.flavor, self.order, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, s) -> "LieElement":
        s = Fraction(s)
        if not s:
            return LieElement.zero(self.flavor, self.order)
        return LieElement._wrap(self.flavor, self.order, {key: c * s for key, c in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    # -- filtration ----------------------------------------------------

    def truncate(self, n: int) -> "LieElement":
        """Drop terms of t-order > n; the result has truncation order n."""
        if not 1 <= n <= self.order:
            raise ConfigurationError(f"cannot truncate order {self.order} element to {n}")
        return LieElement._wrap(self.flavor, n, {key: c for key, c in self.terms.items() if key[1] <= n})

    def with_order(self, n: int) -> "LieElement":
        """Re-home the element at truncation order n, dropping terms above n."""
        return LieElement._wrap(self.flavor, n, {key: c for key, c in self.terms.items() if key[1] <= n})

    def leading_order(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(k for _, k in self.terms)

    def homogeneous(self, k: int) -> "LieElement":
        return LieElement._wrap(self.flavor, self.order, {key: c for key, c in self.terms.items() if key[1] == k})

    def grades(self) -> set:
        return {m for m, _ in self.terms}

    def bracket(self, other: "LieElement", strict: bool = False) -> "LieElement":
        return lie_bracket(self, other, strict=strict)


def _term_key(item):
    (m, k), _ = item
    return (k, m)


def lie_add(a: LieElement, b: LieElement) -> LieElement:
    return a + b


def truncate(a: LieElement, n: int) -> LieElement:
    return a.truncate(n)


def leading_order(a: LieElement) -> Optional[int]:
    return a.leading_order()


def derivation_bracket(m: Vec, n, m2: Vec, n2):
    """Bracket of z^m d_n and z^m2 d_n2 in the full derivation algebra.

    Returns ``(m + m2, <m2, n> n2 - <m, n2> n)``; ``n``, ``n2`` may be rational.
    """
    s = pair(n, m2)
    s2 = pair(n2, m)
    return (m[0] + m2[0], m[1] + m2[1]), (s * n2[0] - s2 * n[0], s * n2[1] - s2 * n[1])


def _deriv_coefficient(nvec, grade: Vec, flavor: Flavor) -> Fraction:
    # express nvec as a multiple of the stored normal of `grade`
    nu = derivation_normal(grade, flavor)
    if nu[0]:
        c = Fraction(nvec[0]) / nu[0]
    else:
        c = Fraction(nvec[1]) / nu[1]
    if c * nu[0] != nvec[0] or c * nu[1] != nvec[1]:
        raise ArithmeticError(f"derivation {nvec} is not normal to grade {grade}")
    return c


def _extended_bracket(a: LieElement, b: LieElement, strict: bool) -> dict:
    flavor, order = a.flavor, a.order
    out: dict = {}
    for (m1, k1), x in a.terms.items():
        n1 = derivation_normal(m1, flavor)
        v1 = (x.deriv * n1[0], x.deriv * n1[1])
        for (m2, k2), y in b.terms.items():
            k = k1 + k2
            if k > order:
                continue
            n2 = derivation_normal(m2, flavor)
            v2 = (y.deriv * n2[0], y.deriv * n2[1])
            mat = matrix_commutator(x.matrix, y.matrix)
            p12 = pair(v1, m2)
            p21 = pair(v2, m1)
            if p12:
                mat = mat + y.matrix * p12
            if p21:
                mat = mat - x.matrix * p21
            s, nvec = derivation_bracket(m1, v1, m2, v2)
            if s == (0, 0):
                if strict and (mat or nvec != (0, 0)):
                    raise GradeZeroError(f"bracket of grades {m1} and {m2} has a nonzero grade-0 part")
                continue
            d = _deriv_coefficient(nvec, s, flavor) if nvec != (0, 0) else Fraction(0)
            val = ExtCoeff(mat, d)
            key = (s, k)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}


def lie_bracket(a: LieElement, b: LieElement, strict: bool = False) -> LieElement:
    """Graded bracket truncated at the common order.

    Terms landing in grade 0 are dropped; with ``strict`` a nonzero grade-0
    term raises :class:`GradeZeroError` instead (only the extended flavor
    can produce one).
    """
    a._compatible(b)
    if not a.terms or not b.terms:
        return LieElement.zero(a.flavor, a.order)
    tag = a.flavor.tag
    if tag == TROPICAL:
        terms = kernels.tropical_bracket(a.terms, b.terms, a.order)
    elif tag == QUANTUM:
        raw = kernels.quantum_bracket(
            {key: c.terms for key, c in a.terms.items()},
            {key: c.terms for key, c in b.terms.items()},
            a.order,
        )
        terms = {key: QLaurent._wrap(c) for key, c in raw.items()}
    else:
        terms = _extended_bracket(a, b, strict)
    return LieElement._wrap(a.flavor, a.order, terms)


# -- classical limit ---------------------------------------------------

DELTA = QLaurent.delta(1)


def quantum_lift(a: LieElement) -> LieElement:
    """Embed a tropical element into the quantum algebra.

    ``c t^k z^m d_perp(u)`` (with ``m = g u``) maps to the coefficient
    ``(c/g) (q^(1/2) - q^(-1/2))^(k-1)``. The image spans a subalgebra on
    which :func:`classical_limit` is a Lie algebra homomorphism.
    """
    if a.flavor.tag != TROPICAL:
        raise ConfigurationError("quantum_lift expects a tropical element")
    terms = {}
    for (m, k), c in a.terms.items():
        _, g = primitive_part(m)
        terms[(m, k)] = (DELTA ** (k - 1)) * (c / g)
    return LieElement._wrap(Flavor.quantum(), a.order, terms)


def classical_limit(a: LieElement) -> LieElement:
    """q -> 1 limit after dividing the t^k part by (q^(1/2) - q^(-1/2))^(k-1).

    Raises ``ArithmeticError`` when some coefficient is not divisible.
    """
    if a.flavor.tag != QUANTUM:
        raise ConfigurationError("classical_limit expects a quantum element")
    terms = {}
    for (m, k), c in a.terms.items():
        _, g = primitive_part(m)
        v = c.exact_div(DELTA ** (k - 1)).eval_one() * g
        if v:
            terms[(m, k)] = v
    return LieElement._wrap(Flavor.tropical(), a.order, terms)


def defect_decomposition(g: LieElement) -> dict:
    """Split ``g`` by primitive direction of its grades.

    Keys come out in counterclockwise order starting at (1, 0).
    """
    groups: dict = {}
    for (m, k), c in g.terms.items():
        u, _ = primitive_part(m)
        groups.setdefault(u, {})[(m, k)] = c
    return {u: LieElement._wrap(g.flavor, g.order, groups[u]) for u in sort_angular(groups)}
