"""Exception types shared across the package."""


class BarydegError(Exception):
    """Base class for all package-specific errors."""


class PoleEvaluationError(BarydegError):
    """A rational form was evaluated at (or across) one of its poles.

    Carries the offending evaluation point in the ``point`` attribute.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class UndefinedValueError(BarydegError):
    """The model has no defined value at the requested support point."""


class TrivialModelError(BarydegError):
    """Degree classification was attempted on a numerically trivial model."""


class ConstraintError(BarydegError):
    """Degree constraints are infeasible for the requested model size."""


class ConfigurationError(BarydegError):
    """A fit configuration is inconsistent with the supplied data."""


class GridError(BarydegError):
    """A support grid cannot be constructed for the given sample set."""
