"""Exception hierarchy shared across the library."""


class SparseboundError(Exception):
    """Base class for all library errors."""


class DimensionTooLarge(SparseboundError):
    """Exact enumeration was requested beyond the brute-force cap."""


class NonConvergence(SparseboundError):
    """Iterative solver hit its iteration cap before reaching tolerance."""


class ParameterOutOfRange(SparseboundError):
    """A scheme parameter violates its validity constraint."""


class AllZeroVariances(SparseboundError):
    """Diagonal-weight optimization is undefined when every variance is zero."""


class UnreachableTarget(SparseboundError):
    """No sampling probability on the grid meets the requested error target."""


class ParseError(SparseboundError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedField(SparseboundError):
    """MatrixMarket field/symmetry this reader does not handle."""


class IoError(SparseboundError):
    """Report or matrix output could not be written."""
