"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the front end can
translate without a lookup table.
"""


class ScatterError(Exception):
    exit_code = 3


class ConfigurationError(ScatterError, ValueError):
    """Operands disagree on flavor, rank or truncation order."""


class DegenerateGradingError(ScatterError, ValueError):
    """A zero lattice vector was used as a grade or direction."""


class SchemaError(ScatterError, ValueError):
    exit_code = 2


class UnsupportedOperationError(ScatterError):
    """Operation has no meaning for the flavor or diagram at hand."""


class MalformedWallFunctionError(ScatterError, ValueError):
    exit_code = 2


class NonGenericPathError(ScatterError, ValueError):
    exit_code = 4


class GradeZeroError(ScatterError):
    """A bracket produced a nonzero term in lattice grade 0."""


class CompletionError(ScatterError, RuntimeError):
    """The order-by-order saturation broke its inductive invariant."""
