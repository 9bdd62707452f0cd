"""Exception types raised by the frolov package."""


class FrolovError(Exception):
    """Base class for all package errors."""


class UnsupportedDimensionError(FrolovError, ValueError):
    """No catalog polynomial exists for the requested dimension."""


class CoefficientOverflowError(FrolovError, OverflowError):
    """Exact polynomial coefficients left the supported integer range."""


class SingularMatrixError(FrolovError, ValueError):
    """A lattice basis is (numerically) singular."""


class UnsupportedSmoothnessError(FrolovError, ValueError):
    """Smoothness exceeds the exact-rational Gramian cap."""


class InvalidSmoothnessError(FrolovError, ValueError):
    """A smoothness vector has a component below 1 or is empty."""


class PointSetFormatError(FrolovError, ValueError):
    """A point-set file could not be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending line, if known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PointSetValidationError(PointSetFormatError):
    """A point-set file parsed but holds coordinates outside [0, 1]."""
