"""Exception hierarchy.

Domain errors map to CLI exit code 2, numeric failures to exit code 3.
"""


class ChirpFrameError(Exception):
    pass


class DomainError(ChirpFrameError, ValueError):
    """Input outside the domain of an operation."""


class NumericError(ChirpFrameError, ArithmeticError):
    """A computation that should succeed did not (precision or logic failure)."""


class NoRootError(NumericError):
    pass


class MultipleZeroError(NumericError):
    pass


class NoZeroError(NumericError):
    pass


class ContourError(NumericError):
    pass


class GridError(NumericError):
    """Sampling grid too coarse for the requested transform."""


class DegenerateError(NumericError):
    """Too few lattice atoms intersect the sampling grid."""
