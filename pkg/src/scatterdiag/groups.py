"""Pro-nilpotent vertex groups in log coordinates and their torus actions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from . import kernels
from .algebra import EXTENDED, QUANTUM, TROPICAL, Flavor, LieElement, lie_bracket
from .coeffs import QLaurent
from .errors import ConfigurationError, MalformedWallFunctionError, UnsupportedOperationError
from .lattice import Vec, primitive_part


@lru_cache(maxsize=None)
def _bernoulli_weight(two_p: int) -> Fraction:
    """B_{2p} / (2p)!"""
    from sympy import bernoulli

    b = bernoulli(two_p)
    return Fraction(int(b.p), int(b.q)) / math.factorial(two_p)


def _compositions(n: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def bch_log(x: LieElement, y: LieElement, strict: bool = False) -> LieElement:
    """log(exp(x) exp(y)) truncated at the common order.

    Uses the recursion for the degree-n homogeneous parts Z_n,

        (n+1) Z_{n+1} = 1/2 [x - y, Z_n]
                        + sum_{p>=1, 2p<=n} B_{2p}/(2p)! sum_{k_1+..+k_2p = n}
                              [Z_k1, [Z_k2, ..., [Z_k2p, x + y]..]]

    with Z_1 = x + y. Every generator carries t-order >= 1, so Z_n vanishes
    once n times the lowest t-order exceeds the truncation.
    """
    x._compatible(y)
    if not x.terms:
        return y
    if not y.terms:
        return x
    order = x.order
    lo = min(x.leading_order(), y.leading_order())
    s = x + y
    d = x - y
    Z = {1: s}
    nested = {(): s}

    def nest(ks):
        v = nested.get(ks)
        if v is None:
            inner = nest(ks[1:])
            head = Z[ks[0]]
            if inner.terms and head.terms:
                v = lie_bracket(head, inner, strict=strict)
            else:
                v = LieElement.zero(x.flavor, order)
            nested[ks] = v
        return v

    total = s
    n = 1
    while (n + 1) * lo <= order:
        acc = lie_bracket(d, Z[n], strict=strict).scale(Fraction(1, 2))
        p = 1
        while 2 * p <= n:
            weight = _bernoulli_weight(2 * p)
            for comp in _compositions(n, 2 * p):
                v = nest(comp)
                if v.terms:
                    acc = acc + v.scale(weight)
            p += 1
        Z[n + 1] = acc.scale(Fraction(1, n + 1))
        total = total + Z[n + 1]
        n += 1
    return total


@dataclass(frozen=True)
class GroupElement:
    """exp(log); the identity has the empty log."""

    log: LieElement

    @classmethod
    def identity(cls, flavor: Flavor, order: int) -> "GroupElement":
        return cls(LieElement.zero(flavor, order))

    @property
    def flavor(self) -> Flavor:
        return self.log.flavor

    @property
    def order(self) -> int:
        return self.log.order

    def is_identity(self) -> bool:
        return not self.log.terms

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return bch(self, other)

    def inverse(self) -> "GroupElement":
        return invert(self)

    def __pow__(self, e: int) -> "GroupElement":
        if e == 1:
            return self
        if e == -1:
            return invert(self)
        if e == 0:
            return GroupElement.identity(self.flavor, self.order)
        # powers of one element commute with each other
        return GroupElement(self.log.scale(e))

    def truncate(self, n: int) -> "GroupElement":
        return GroupElement(self.log.truncate(n))


def bch(g: GroupElement, h: GroupElement, strict: bool = False) -> GroupElement:
    return GroupElement(bch_log(g.log, h.log, strict=strict))


def invert(g: GroupElement) -> GroupElement:
    return GroupElement(-g.log)


# -- torus ---------------------------------------------------------------


class TorusElement:
    """Truncated element of C[Lambda][[t]] (tropical) or the quantum torus.

    Terms map ``(m, k)`` with ``0 <= k <= order`` to a Fraction (tropical) or
    a :class:`QLaurent` (quantum), always as the coefficient of ``t^k z^m``.
    """

    __slots__ = ("flavor", "order", "terms")

    def __init__(self, flavor: Flavor, order: int, terms=None):
        if flavor.tag == EXTENDED:
            raise UnsupportedOperationError("the extended flavor has no torus module")
        clean = {}
        for (m, k), c in (terms or {}).items():
            m = (int(m[0]), int(m[1]))
            if k < 0:
                raise ConfigurationError(f"negative t-order {k}")
            if k > order:
                continue
            if flavor.tag == QUANTUM and not isinstance(c, QLaurent):
                c = QLaurent.const(c)
            elif flavor.tag == TROPICAL:
                c = Fraction(c)
            if c:
                clean[(m, k)] = c
        self.flavor = flavor
        self.order = order
        self.terms = clean

    @classmethod
    def _wrap(cls, flavor, order, terms):
        obj = cls.__new__(cls)
        obj.flavor = flavor
        obj.order = order
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, flavor: Flavor, order: int, m: Vec = (0, 0), k: int = 0, c=1) -> "TorusElement":
        return cls(flavor, order, {(m, k): c})

    @classmethod
    def one(cls, flavor: Flavor, order: int) -> "TorusElement":
        return cls.monomial(flavor, order)

    @classmethod
    def x(cls, flavor: Flavor, order: int) -> "TorusElement":
        return cls.monomial(flavor, order, (1, 0))

    @classmethod
    def y(cls, flavor: Flavor, order: int) -> "TorusElement":
        return cls.monomial(flavor, order, (0, 1))

    def _compatible(self, other):
        if not isinstance(other, TorusElement):
            raise TypeError(f"expected TorusElement, got {type(other).__name__}")
        if self.flavor != other.flavor or self.order != other.order:
            raise ConfigurationError("torus elements differ in flavor or order")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.flavor == other.flavor and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.flavor, self.order, frozenset(self.terms)))

    def __repr__(self):
        body = ", ".join(f"{m}t^{k}: {c}" for (m, k), c in sorted(self.terms.items(), key=lambda i: (i[0][1], i[0][0])))
        return f"TorusElement<{self.flavor}, N={self.order}>{{{body}}}"

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._compatible(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return TorusElement._wrap(self.flavor, self.order, out)

    def __neg__(self):
        return TorusElement._wrap(self.flavor, self.order, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TorusElement":
        s = Fraction(s)
        if not s:
            return TorusElement._wrap(self.flavor, self.order, {})
        return TorusElement._wrap(self.flavor, self.order, {key: c * s for key, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._compatible(other)
        if self.flavor.tag == TROPICAL:
            return TorusElement._wrap(self.flavor, self.order, kernels.tropical_product(self.terms, other.terms, self.order))
        raw = kernels.quantum_product(
            {key: c.terms for key, c in self.terms.items()},
            {key: c.terms for key, c in other.terms.items()},
            self.order,
        )
        return TorusElement._wrap(self.flavor, self.order, {key: QLaurent._wrap(c) for key, c in raw.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "TorusElement":
        out = TorusElement.one(self.flavor, self.order)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, n: int) -> "TorusElement":
        return TorusElement._wrap(self.flavor, n, {key: c for key, c in self.terms.items() if key[1] <= n})


def _apply_derivation(log: LieElement, u: TorusElement) -> TorusElement:
    if log.flavor.tag == TROPICAL:
        terms = kernels.tropical_derivation(log.terms, u.terms, u.order)
        return TorusElement._wrap(u.flavor, u.order, terms)
    raw = kernels.quantum_bracket(
        {key: c.terms for key, c in log.terms.items()},
        {key: c.terms for key, c in u.terms.items()},
        u.order,
        True,
    )
    return TorusElement._wrap(u.flavor, u.order, {key: QLaurent._wrap(c) for key, c in raw.items()})


def torus_action(g: GroupElement, u: TorusElement) -> TorusElement:
    """Act by exp(log g): exp of the derivation (tropical) or Ad (quantum)."""
    if g.flavor.tag == EXTENDED:
        raise UnsupportedOperationError("no faithful torus action is defined for the extended flavor")
    if g.flavor != u.flavor or g.order != u.order:
        raise ConfigurationError("group and torus elements differ in flavor or order")
    result = u
    term = u
    j = 1
    while True:
        term = _apply_derivation(g.log, term)
        if not term.terms:
            break
        term = term.scale(Fraction(1, j))
        result = result + term
        j += 1
    return result


# -- wall functions -------------------------------------------------------


def torus_log(f: TorusElement) -> TorusElement:
    """Formal log of f = 1 + h with h in (t)."""
    one = TorusElement.one(f.flavor, f.order)
    h = f - one
    if any(k == 0 for _, k in h.terms):
        raise MalformedWallFunctionError("wall function must be congruent to 1 mod t")
    out = TorusElement._wrap(f.flavor, f.order, {})
    power = one
    j = 1
    while True:
        power = power * h
        if not power.terms:
            break
        out = out + power.scale(Fraction((-1) ** (j + 1), j))
        j += 1
    return out


def torus_exp(a: TorusElement) -> TorusElement:
    if any(k == 0 for _, k in a.terms):
        raise MalformedWallFunctionError("exponent must lie in (t)")
    out = TorusElement.one(a.flavor, a.order)
    term = out
    j = 1
    while True:
        term = (term * a).scale(Fraction(1, j))
        if not term.terms:
            break
        out = out + term
        j += 1
    return out


def _multiple_of(mm: Vec, m: Vec) -> Optional[int]:
    a, b = m
    if a:
        j, r = divmod(mm[0], a)
    else:
        j, r = divmod(mm[1], b)
    if r or (j * a, j * b) != tuple(mm):
        return None
    return j


def log_from_wall_function(m: Vec, f: TorusElement) -> GroupElement:
    """exp(log(f) d_perp(m)) for f supported on powers of z^m."""
    if f.flavor.tag != TROPICAL:
        raise UnsupportedOperationError("wall functions are only defined for the tropical flavor")
    primitive_part(m)
    for (mm, k), c in f.terms.items():
        j = _multiple_of(mm, m)
        if j is None or j < 0:
            raise MalformedWallFunctionError(f"monomial z^{mm} is not a power of z^{tuple(m)}")
        if k >= 1 and j == 0:
            raise MalformedWallFunctionError(f"term t^{k} without a power of z^{tuple(m)}")
    lg = torus_log(f)
    return GroupElement(LieElement._wrap(f.flavor, f.order, dict(lg.terms)))


def wall_function_from_log(g: GroupElement) -> tuple[Optional[Vec], TorusElement]:
    """Inverse of :func:`log_from_wall_function` on single-ray elements.

    Returns the primitive direction (``None`` for the identity) and f.
    """
    log = g.log
    if log.flavor.tag != TROPICAL:
        raise UnsupportedOperationError("wall functions are only defined for the tropical flavor")
    direction = None
    for m, _ in log.terms:
        u, _ = primitive_part(m)
        if direction is None:
            direction = u
        elif u != direction:
            raise MalformedWallFunctionError("log is not supported on a single ray")
    a = TorusElement._wrap(log.flavor, log.order, dict(log.terms))
    return direction, torus_exp(a)
