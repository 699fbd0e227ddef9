"""Exact scattering diagrams over rank-2 lattices.

Tropical, quantum and matrix-extended flavors share one engine: graded Lie
algebras truncated in t, BCH group law, path-ordered products around loops,
and order-by-order completion to a consistent diagram.
"""

from .algebra import EXTENDED, QUANTUM, TROPICAL, ExtCoeff, Flavor, LieElement, classical_limit, defect_decomposition, lie_bracket, quantum_lift
from .coeffs import QLaurent, SquareMatrix
from .completion import CompletionReport, complete
from .diagrams import LINE, RAY, Loop, ScatteringDiagram, Wall, crossings, is_consistent, path_ordered_product, singular_set, standard_loop
from .errors import (
    CompletionError,
    ConfigurationError,
    DegenerateGradingError,
    GradeZeroError,
    MalformedWallFunctionError,
    NonGenericPathError,
    ScatterError,
    SchemaError,
    UnsupportedOperationError,
)
from .groups import GroupElement, TorusElement, bch, bch_log, invert, log_from_wall_function, torus_action, wall_function_from_log
from .kernels import BACKEND
from .render import SvgOptions, render_svg
from .serialize import diagram_from_json, diagram_to_json, dump_diagram, load_diagram, parse_wall_function

__version__ = "0.1.0"
