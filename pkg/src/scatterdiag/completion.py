"""Order-by-order saturation of a single-vertex scattering diagram."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import LieElement, defect_decomposition
from .diagrams import RAY, ScatteringDiagram, Wall, common_point, path_ordered_product, standard_loop
from .errors import CompletionError, ConfigurationError, UnsupportedOperationError
from .groups import bch_log
from .lattice import angle_key


@dataclass(frozen=True)
class CompletionReport:
    input: ScatteringDiagram
    output: ScatteringDiagram
    added: tuple = field(default_factory=tuple)
    per_order_defects: tuple = field(default_factory=tuple)


def complete(d: ScatteringDiagram, *, reverse: bool = False, loop_start: int = 0) -> CompletionReport:
    """Add rays at the common vertex until the diagram is consistent mod t^(N+1).

    At order n the loop product is, by induction, ``exp(D)`` with D of
    leading t-order n; D is split by primitive grade m0 and each piece g is
    cancelled by multiplying the ray ``vertex + m0 R>=0`` (grade m0) by
    ``exp(-g)``. ``reverse`` and ``loop_start`` change the processing order of
    the pieces and the base point of the loop; neither may change the result.
    """
    if not d.walls:
        raise ConfigurationError("cannot complete a diagram without walls")
    vertex = common_point(d)
    if vertex is None:
        raise UnsupportedOperationError("completion needs all walls through a common point")
    order = d.order
    rays: dict = {}
    defects = []
    for n in range(1, order + 1):
        current = _assemble(d, vertex, rays)
        loop = standard_loop(current, vertex, start=loop_start)
        defect = path_ordered_product(current, loop, order=n, strict=True).log
        lead = defect.leading_order()
        if lead is None:
            continue
        if lead < n:
            raise CompletionError(f"defect has leading order {lead} at step {n}; expected >= {n}")
        defects.append((n, defect.with_order(order)))
        pieces = list(defect_decomposition(defect).items())
        if reverse:
            pieces.reverse()
        for m0, g in pieces:
            old = rays.get(m0, LieElement.zero(d.flavor, order))
            new = bch_log(-g.with_order(order), old, strict=True)
            if new.terms:
                rays[m0] = new
            else:
                rays.pop(m0, None)
    out = _assemble(d, vertex, rays)
    added = out.walls[len(d.walls):]
    final = path_ordered_product(out, standard_loop(out, vertex)).log
    if final.terms:
        raise CompletionError(f"completed diagram is still inconsistent at order {final.leading_order()}")
    return CompletionReport(d, out, tuple(added), tuple(defects))


def _assemble(d: ScatteringDiagram, vertex, rays: dict) -> ScatteringDiagram:
    new = [Wall(vertex, m0, RAY, rays[m0], m0) for m0 in sorted(rays, key=angle_key)]
    return d.with_walls(d.walls + tuple(new))
