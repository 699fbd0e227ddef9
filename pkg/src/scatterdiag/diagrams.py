"""Walls, scattering diagrams, loop crossings and path-ordered products.

All geometry is exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .algebra import Flavor, LieElement
from .errors import ConfigurationError, DegenerateGradingError, NonGenericPathError, UnsupportedOperationError
from .groups import GroupElement, bch
from .lattice import Vec, is_primitive, pair, perp, primitive_part, skew, sort_angular

LINE = "line"
RAY = "ray"

Point = tuple  # (Fraction, Fraction)


def _point(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Wall:
    """A line or ray ``base + direction * R`` (``R>=0`` for rays) with its automorphism.

    ``log`` is supported on positive multiples of the primitive ``grade``.
    """

    base: Point
    direction: Vec
    kind: str
    log: LieElement
    grade: Vec

    def __post_init__(self):
        object.__setattr__(self, "base", _point(self.base))
        object.__setattr__(self, "direction", (int(self.direction[0]), int(self.direction[1])))
        object.__setattr__(self, "grade", (int(self.grade[0]), int(self.grade[1])))
        if self.kind not in (LINE, RAY):
            raise ConfigurationError(f"wall kind must be 'line' or 'ray', got {self.kind!r}")
        for name in ("direction", "grade"):
            v = getattr(self, name)
            if v == (0, 0):
                raise DegenerateGradingError(f"wall {name} is the zero vector")
            if not is_primitive(v):
                raise ConfigurationError(f"wall {name} {v} is not primitive")
        if self.grade not in (self.direction, (-self.direction[0], -self.direction[1])):
            raise ConfigurationError(f"wall grade {self.grade} is not parallel to its direction {self.direction}")
        if not self.log.terms:
            raise ConfigurationError("walls with trivial automorphism are not part of a diagram")
        for m, _ in self.log.terms:
            u, _k = primitive_part(m)
            if u != self.grade:
                raise ConfigurationError(f"log term at grade {m} is not a positive multiple of {self.grade}")

    @property
    def auto(self) -> GroupElement:
        return GroupElement(self.log)

    @property
    def normal(self) -> Vec:
        return perp(self.grade)

    def contains(self, p) -> bool:
        rel = _sub(p, self.base)
        if _cross(rel, self.direction) != 0:
            return False
        return self.kind == LINE or _dot(rel, self.direction) >= 0

    def truncate(self, n: int) -> Optional["Wall"]:
        log = self.log.truncate(n)
        if not log.terms:
            return None
        return Wall(self.base, self.direction, self.kind, log, self.grade)


@dataclass(frozen=True)
class ScatteringDiagram:
    flavor: Flavor
    order: int
    walls: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "walls", tuple(self.walls))
        if self.order < 1:
            raise ConfigurationError("truncation order must be >= 1")
        for i, w in enumerate(self.walls):
            if w.log.flavor != self.flavor:
                raise ConfigurationError(f"wall {i} has flavor {w.log.flavor}, diagram is {self.flavor}")
            if w.log.order != self.order:
                raise ConfigurationError(f"wall {i} has order {w.log.order}, diagram is {self.order}")

    def truncate(self, n: int) -> "ScatteringDiagram":
        """Diagram at order n; walls whose automorphism becomes trivial are dropped."""
        walls = [w.truncate(n) for w in self.walls]
        return ScatteringDiagram(self.flavor, n, tuple(w for w in walls if w is not None))

    def with_walls(self, walls) -> "ScatteringDiagram":
        return ScatteringDiagram(self.flavor, self.order, tuple(walls))


@dataclass(frozen=True)
class Loop:
    """Closed piecewise-linear path through the given vertices."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(_point(v) for v in self.vertices)
        if len(verts) < 3:
            raise ConfigurationError("a loop needs at least three vertices")
        object.__setattr__(self, "vertices", verts)

    def segments(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def signed_area(self) -> Fraction:
        return sum((_cross(p, q) for p, q in self.segments()), Fraction(0)) / 2

    @property
    def orientation(self) -> int:
        """+1 for counterclockwise, -1 for clockwise."""
        a = self.signed_area()
        return (a > 0) - (a < 0)

    def reversed(self) -> "Loop":
        """Opposite traversal from the same base point."""
        v = self.vertices
        return Loop(v[:1] + tuple(reversed(v[1:])))

    def rotated(self, shift: int) -> "Loop":
        v = self.vertices
        shift %= len(v)
        return Loop(v[shift:] + v[:shift])


# -- singular set ------------------------------------------------------------


def _support_intersection(w1: Wall, w2: Wall):
    """Isolated intersection point of two supports, or None."""
    den = _cross(w1.direction, w2.direction)
    if den == 0:
        return None
    rel = _sub(w2.base, w1.base)
    r1 = _cross(rel, w2.direction) / den
    r2 = _cross(rel, w1.direction) / den
    if w1.kind == RAY and r1 < 0:
        return None
    if w2.kind == RAY and r2 < 0:
        return None
    return (w1.base[0] + r1 * w1.direction[0], w1.base[1] + r1 * w1.direction[1])


def singular_set(d: ScatteringDiagram) -> list:
    """Ray endpoints and pairwise transverse intersections, sorted."""
    pts = set()
    for w in d.walls:
        if w.kind == RAY:
            pts.add(w.base)
    walls = d.walls
    for i in range(len(walls)):
        for j in range(i + 1, len(walls)):
            p = _support_intersection(walls[i], walls[j])
            if p is not None:
                pts.add(p)
    return sorted(pts)


# -- crossings ------------------------------------------------------------------


class Crossing(NamedTuple):
    wall: Wall
    sign: int
    index: int
    point: Point


def _segment_hit(p, q, seg_no: int, w: Wall, w_no: int):
    """Parameter s in (0, 1) where segment p->q crosses w, or None."""
    dvec = _sub(q, p)
    v = w.direction
    den = _cross(dvec, v)
    rel = _sub(w.base, p)
    if den == 0:
        if _cross(rel, v) != 0:
            return None
        if w.kind == LINE:
            raise NonGenericPathError(f"segment {seg_no} runs along wall {w_no}")
        a = _dot(_sub(p, w.base), v)
        b = _dot(_sub(q, w.base), v)
        if max(a, b) >= 0:
            raise NonGenericPathError(f"segment {seg_no} runs along wall {w_no}")
        return None
    s = _cross(rel, v) / den
    r = _cross(rel, dvec) / den
    if s < 0 or s > 1:
        return None
    if w.kind == RAY and r < 0:
        return None
    if w.kind == RAY and r == 0:
        raise NonGenericPathError(f"segment {seg_no} passes through the endpoint of wall {w_no}")
    if s == 0 or s == 1:
        raise NonGenericPathError(f"a vertex of segment {seg_no} lies on wall {w_no}")
    return s


def crossings(d: ScatteringDiagram, loop: Loop) -> list:
    """Walls crossed by ``loop`` in traversal order, with crossing signs.

    The sign is that of <perp(grade), tangent>.
    """
    sing = set(singular_set(d))
    for i, v in enumerate(loop.vertices):
        if v in sing:
            raise NonGenericPathError(f"vertex {i} of the loop is a singular point")
    hits = []
    for seg_no, (p, q) in enumerate(loop.segments()):
        dvec = _sub(q, p)
        for w_no, w in enumerate(d.walls):
            s = _segment_hit(p, q, seg_no, w, w_no)
            if s is None:
                continue
            pt = (p[0] + s * dvec[0], p[1] + s * dvec[1])
            if pt in sing:
                raise NonGenericPathError(f"segment {seg_no} passes through singular point {_fmt_point(pt)} on wall {w_no}")
            sign = pair(w.normal, dvec)
            if sign == 0:
                raise NonGenericPathError(f"segment {seg_no} crosses wall {w_no} with zero crossing sign")
            hits.append((seg_no, s, w_no, Crossing(w, 1 if sign > 0 else -1, w_no, pt)))
    hits.sort(key=lambda h: (h[0], h[1], h[2]))
    return [h[3] for h in hits]


def _fmt_point(p) -> str:
    return f"({p[0]}, {p[1]})"


def path_ordered_product(d: ScatteringDiagram, loop: Loop, order: Optional[int] = None, strict: bool = False) -> GroupElement:
    """theta_s^eps_s ... theta_1^eps_1 over the crossings, later crossings on the left.

    With ``order`` the product is computed at that lower truncation.
    """
    n = d.order if order is None else order
    result = GroupElement.identity(d.flavor, n)
    for c in crossings(d, loop):
        log = c.wall.log if n == d.order else c.wall.log.truncate(n)
        if not log.terms:
            continue
        factor = GroupElement(log if c.sign > 0 else -log)
        result = bch(factor, result, strict=strict)
    return result


# -- single-vertex diagrams -------------------------------------------------------


def common_point(d: ScatteringDiagram) -> Optional[Point]:
    """A point lying on every wall, or None."""
    walls = d.walls
    if not walls:
        return None
    candidates = []
    w0 = walls[0]
    for w in walls[1:]:
        den = _cross(w0.direction, w.direction)
        if den:
            rel = _sub(w.base, w0.base)
            r = _cross(rel, w.direction) / den
            candidates.append((w0.base[0] + r * w0.direction[0], w0.base[1] + r * w0.direction[1]))
            break
    candidates.extend(w.base for w in walls if w.kind == RAY)
    candidates.extend(w.base for w in walls if w.kind == LINE)
    for c in candidates:
        if all(w.contains(c) for w in walls):
            return c
    return None


def _half_directions(d: ScatteringDiagram, vertex) -> set:
    dirs = set()
    for w in d.walls:
        v = w.direction
        if w.kind == LINE or w.base != vertex:
            dirs.add(v)
            dirs.add((-v[0], -v[1]))
        else:
            dirs.add(v)
    return dirs


def standard_loop(d: ScatteringDiagram, vertex=None, start: int = 0) -> Loop:
    """Small counterclockwise polygon around the common vertex of ``d``.

    One loop vertex sits strictly inside each angular gap between wall
    directions, so every edge crosses at most one direction. The loop starts
    just below (1, 0) unless rotated by ``start``.
    """
    if vertex is None:
        vertex = common_point(d)
        if vertex is None:
            raise UnsupportedOperationError("walls do not pass through a common point")
    dirs = sort_angular(_half_directions(d, vertex) | {(1, 0), (0, 1), (-1, 0), (0, -1)})
    radius = Fraction(1)
    for p in singular_set(d):
        if p != vertex:
            dist = max(abs(p[0] - vertex[0]), abs(p[1] - vertex[1]))
            radius = min(radius, dist / 2)
    pts = []
    for i in range(len(dirs)):
        u, v = dirs[i], dirs[(i + 1) % len(dirs)]
        w = (u[0] + v[0], u[1] + v[1])
        scale = radius / max(abs(w[0]), abs(w[1]))
        pts.append((vertex[0] + scale * w[0], vertex[1] + scale * w[1]))
    pts = pts[-1:] + pts[:-1]
    loop = Loop(tuple(pts))
    return loop.rotated(start) if start else loop


class Consistency(NamedTuple):
    consistent: bool
    defect: LieElement


def is_consistent(d: ScatteringDiagram, strict: bool = False) -> Consistency:
    """Path-ordered product around the standard loop of a single-vertex diagram."""
    if not d.walls:
        return Consistency(True, LieElement.zero(d.flavor, d.order))
    vertex = common_point(d)
    if vertex is None:
        raise UnsupportedOperationError("is_consistent needs all walls through a common point")
    log = path_ordered_product(d, standard_loop(d, vertex), strict=strict).log
    return Consistency(not log.terms, log)
