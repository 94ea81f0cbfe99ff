"""Exception hierarchy."""


class DomcellError(Exception):
    """Base class for all errors raised by domcell."""


class InvalidInstanceError(DomcellError, ValueError):
    """An order family, coloring, pair or map specification is malformed."""


class GuardError(DomcellError):
    """An instance exceeds a configured size guard."""


class MapEvaluationError(DomcellError):
    """A simplex self-map returned values that cannot be sanitized."""


class InternalConsistencyError(DomcellError, AssertionError):
    """A combinatorial fact that theory guarantees failed to hold.

    This always indicates a bug, never bad input.
    """
