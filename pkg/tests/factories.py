"""Seeded random builders for Lie elements and diagrams."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from math import gcd

from scatterdiag import ExtCoeff, Flavor, LieElement, QLaurent, ScatteringDiagram, SquareMatrix, Wall, quantum_lift
from scatterdiag import Loop, crossings
from scatterdiag.diagrams import LINE, RAY
from scatterdiag.errors import NonGenericPathError

SMALL = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))
DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2), (3, 1), (1, 3))


def flavor_of(tag: str, rank: int = 2) -> Flavor:
    return Flavor.extended(rank) if tag == "extended" else Flavor(tag)


def random_grade(rng: random.Random, half_plane: bool = False):
    """Nonzero grade in [-2, 2]^2; with ``half_plane`` it lies in {a > 0} or {a = 0, b > 0}."""
    while True:
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        if (a, b) == (0, 0):
            continue
        if half_plane and not (a > 0 or (a == 0 and b > 0)):
            continue
        return (a, b)


def random_coeff(flavor: Flavor, rng: random.Random):
    if flavor.tag == "tropical":
        return rng.choice(SMALL + (Fraction(2),))
    if flavor.tag == "quantum":
        terms = {rng.randint(-3, 3): rng.choice(SMALL) for _ in range(rng.randint(1, 2))}
        return QLaurent(terms)
    r = flavor.rank
    rows = [[rng.choice((0, 0, 1, -1, Fraction(1, 2))) for _ in range(r)] for _ in range(r)]
    return ExtCoeff(SquareMatrix(rows), rng.choice((0, 1, -1, Fraction(1, 2))))


def random_lie(flavor: Flavor, order: int, rng: random.Random, terms: int = 3, half_plane: bool = False) -> LieElement:
    out = {}
    for _ in range(terms):
        c = random_coeff(flavor, rng)
        if c:
            out[(random_grade(rng, half_plane), rng.randint(1, order))] = c
    return LieElement(flavor, order, out)


def random_wall_log(flavor: Flavor, grade, order: int, rng: random.Random) -> LieElement:
    """Small log supported on multiples of ``grade``; coefficients in {+-1, +-1/2}."""
    terms = {}
    for j in range(1, min(order, rng.randint(1, 2)) + 1):
        k = rng.randint(j, min(order, j + 1))
        terms[((j * grade[0], j * grade[1]), k)] = rng.choice(SMALL)
    trop = LieElement(Flavor.tropical(), order, terms)
    if flavor.tag == "tropical":
        return trop
    if flavor.tag == "quantum":
        return quantum_lift(trop)
    r = flavor.rank
    ext = {}
    for key, c in terms.items():
        i, j = rng.randrange(r), rng.randrange(r)
        ext[key] = ExtCoeff(SquareMatrix([[c if (a, b) == (i, j) else 0 for b in range(r)] for a in range(r)]), rng.choice((0, c)))
    return LieElement(flavor, order, ext)


def random_seed(flavor: Flavor, order: int, rng: random.Random, lines: int) -> ScatteringDiagram:
    """``lines`` pairwise non-parallel lines through the origin."""
    dirs = rng.sample(DIRECTIONS, lines)
    walls = []
    for v in dirs:
        g = v if rng.random() < 0.5 else (-v[0], -v[1])
        walls.append(Wall((0, 0), v, LINE, random_wall_log(flavor, g, order, rng), g))
    return ScatteringDiagram(flavor, order, tuple(walls))


def random_diagram(flavor: Flavor, order: int, rng: random.Random) -> ScatteringDiagram:
    """Arbitrary (not necessarily single-vertex) diagram for serialization tests."""
    walls = []
    for _ in range(rng.randint(0, 4)):
        v = rng.choice(DIRECTIONS)
        g = v if rng.random() < 0.5 else (-v[0], -v[1])
        base = (Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        kind = rng.choice((LINE, RAY))
        walls.append(Wall(base, v, kind, random_wall_log(flavor, g, order, rng), g))
    return ScatteringDiagram(flavor, order, tuple(walls))


def is_primitive(v) -> bool:
    return gcd(v[0], v[1]) == 1


def random_generic_loop(d, rng, center=(0, 0)):
    """Star-shaped polygon around ``center`` with random rational vertices."""
    while True:
        k = rng.randint(3, 9)
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        gaps = [b - a for a, b in zip(angles, angles[1:] + [angles[0] + 2 * math.pi])]
        if max(gaps) >= math.pi * 0.95:
            continue
        pts = []
        for a in angles:
            r = Fraction(rng.randint(2, 40), 10)
            pts.append((center[0] + r * Fraction(round(math.cos(a) * 997), 997), center[1] + r * Fraction(round(math.sin(a) * 997), 997)))
        shift = rng.randrange(k)
        loop = Loop(tuple(pts[shift:] + pts[:shift]))
        if loop.orientation <= 0:
            continue
        try:
            crossings(d, loop)
        except NonGenericPathError:
            continue
        return loop
