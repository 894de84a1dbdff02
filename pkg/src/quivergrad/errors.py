"""Exception types raised by the workbench."""


class QuiverGradError(Exception):
    """Base class; ``reason`` is a short machine-readable tag."""

    reason = "error"


class ParseError(QuiverGradError, ValueError):
    reason = "syntax-error"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class QuiverError(QuiverGradError, ValueError):
    reason = "invalid-quiver"


class PresentationError(QuiverGradError, ValueError):
    reason = "invalid-presentation"


class PreconditionError(QuiverGradError, ValueError):
    reason = "precondition-violated"


class BoundTooSmall(QuiverGradError):
    reason = "bound-too-small"


class NotFiniteDimensional(QuiverGradError):
    reason = "not-finite-dimensional"


class GlobalDimensionExceeded(QuiverGradError):
    reason = "gldim-exceeds-n"


class NotNilpotent(QuiverGradError):
    reason = "not-nilpotent"


class ConsistencyError(QuiverGradError):
    """An internal cross-check between two independent routes failed."""

    reason = "internal-consistency"
