"""Exception types shared across the package."""


class ConfidistError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(ConfidistError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InputError(ConfidistError, ValueError):
    """Malformed user input: CSV text, p-value statements, CLI values."""


class NumericError(ConfidistError, ArithmeticError):
    """A numeric routine failed to converge or the result is undefined."""


class DegenerateDataError(DomainError):
    """Data with zero spread (or too few points) where inference needs a
    positive standard error."""


class UnderflowWarning(UserWarning):
    """A tail probability fell below the smallest reportable magnitude and
    was returned as 0.0."""
