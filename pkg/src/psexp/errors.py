"""Exception types shared across the package.

Division by zero in the field raises the builtin ZeroDivisionError.
"""


class UnsupportedLength(ValueError):
    """Transform length is not a supported power of two."""


class ShapeError(ValueError):
    """Vector arguments have incompatible lengths."""


class NotInvertible(ValueError):
    """Series has no inverse (constant term is zero)."""


class NonzeroConstantTerm(ValueError):
    """exp() requires a series with zero constant term."""


class ConstantTermNotOne(ValueError):
    """log() requires a series with constant term one."""


class PrecisionTooLarge(ValueError):
    """Requested precision exceeds what the modulus supports."""


class CostRegressionError(RuntimeError):
    """A loop pass used more transforms or linear work than budgeted."""


class EmptyInput(ValueError):
    """An operation that needs at least one record got none."""


class SeriesFileError(ValueError):
    """Malformed series file."""
