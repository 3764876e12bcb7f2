"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`ResolventBoundsError`, so callers (and the CLI) can tell numerical
trouble apart from programming errors.
"""


class ResolventBoundsError(Exception):
    """Base class for all package errors."""


class DomainError(ResolventBoundsError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidInputError(ResolventBoundsError, ValueError):
    """Malformed or inconsistent input (bad config, mismatched problems)."""


class PrecisionError(ResolventBoundsError):
    """A tail bound or certificate cannot be made meaningful.

    Raised for instance when a spectrum point exceeds the modulus cap.
    """


class SingularityError(ResolventBoundsError, ArithmeticError):
    """Evaluation at (or numerically at) a pole or an eigenvalue."""


class DivergenceError(ResolventBoundsError, ArithmeticError):
    """Powers of the operator do not stay bounded (spectral radius >= 1)."""


class ConditioningError(ResolventBoundsError, ArithmeticError):
    """Interpolation constraints are numerically rank deficient."""

    def __init__(self, msg, cluster=None, condition=None):
        super().__init__(msg)
        self.cluster = cluster
        self.condition = condition


class BoundViolation(ResolventBoundsError, AssertionError):
    """A proven inequality failed numerically, which points at a bug."""

    def __init__(self, msg, dump=None):
        super().__init__(msg)
        self.dump = dump
