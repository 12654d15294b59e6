"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
any other GalError -> 4.
"""


class GalError(Exception):
    """Base class for every library-raised error."""


class ConfigError(GalError):
    """Invalid configuration, flags, or parameter combinations."""


class DataError(GalError):
    """Broken, inconsistent, or missing data artifacts."""


class ValidationError(DataError):
    """A problem instance violates its invariants."""


class InvalidNodeError(GalError):
    """A node lies out of bounds or on an obstacle."""


class ShapeError(GalError):
    """Incompatible tensor or map shapes."""


class NumericalError(GalError):
    """Non-finite values or a diverging optimization."""


class GraphError(GalError):
    """Misuse of the computation graph (non-scalar backward, freed graph)."""
