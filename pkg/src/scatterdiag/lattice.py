"""Exact arithmetic on the rank-2 lattice and its dual.

Vectors are plain ``(a, b)`` integer tuples; the same representation is
used for lattice vectors, dual vectors and primitive directions.
"""

from __future__ import annotations

from functools import cmp_to_key
from math import gcd
from typing import Tuple

from .errors import DegenerateGradingError

Vec = Tuple[int, int]

ZERO: Vec = (0, 0)


def pair(n: Vec, m: Vec) -> int:
    """Dual pairing <n, m> = p*a + q*b."""
    return n[0] * m[0] + n[1] * m[1]


def skew(m: Vec, m2: Vec) -> int:
    """Unimodular antisymmetric form, the determinant det(m | m2)."""
    return m[0] * m2[1] - m[1] * m2[0]


def add(m: Vec, m2: Vec) -> Vec:
    return (m[0] + m2[0], m[1] + m2[1])


def scale(k: int, m: Vec) -> Vec:
    return (k * m[0], k * m[1])


def neg(m: Vec) -> Vec:
    return (-m[0], -m[1])


def index(m: Vec) -> int:
    """gcd of the coordinates; 0 only for the zero vector."""
    return gcd(m[0], m[1])


def primitive_part(m: Vec) -> tuple[Vec, int]:
    """Split ``m = k * m0`` with ``m0`` primitive and ``k > 0``."""
    k = gcd(m[0], m[1])
    if k == 0:
        raise DegenerateGradingError("zero vector has no primitive part")
    return (m[0] // k, m[1] // k), k


def is_primitive(m: Vec) -> bool:
    return gcd(m[0], m[1]) == 1


def perp(m: Vec) -> Vec:
    """Primitive annihilator of ``m``, oriented as (a, b) -> (-b, a)."""
    (a, b), _ = primitive_part(m)
    return (-b, a)


def _half(m: Vec) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    a, b = m
    return 0 if b > 0 or (b == 0 and a > 0) else 1


def angular_compare(d1: Vec, d2: Vec) -> int:
    """-1, 0 or 1 comparing counterclockwise angle from (1, 0).

    Directions are compared as rays, so (1, 1) and (2, 2) compare equal.
    """
    if d1 == ZERO or d2 == ZERO:
        raise DegenerateGradingError("zero vector has no angle")
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = skew(d1, d2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


angle_key = cmp_to_key(angular_compare)


def sort_angular(vectors):
    return sorted(vectors, key=angle_key)
