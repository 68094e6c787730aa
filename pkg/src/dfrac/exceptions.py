"""Exception hierarchy.

Numeric failures (poles, undefined powers, invalid representations) derive
from :class:`NumericError`; bad inputs derive from :class:`InputError`. The
CLI maps the first family to exit code 3 and the second to exit code 2.
"""


class DfracError(Exception):
    """Base class for all errors raised by this package."""


class NumericError(DfracError, ArithmeticError):
    pass


class PoleError(NumericError):
    """Gamma function evaluated at a non-positive integer."""


class UndefinedPowerError(NumericError):
    """Falling-factorial power with a base in {-1, -2, ...}."""


class RepresentationError(NumericError):
    """The requested operator representation is not valid for this order."""


class InputError(DfracError, ValueError):
    pass


class HorizonError(InputError, IndexError):
    """Requested offset lies outside the available sequence."""


class GridMismatchError(InputError):
    pass


class HypothesisError(InputError):
    """Inputs do not satisfy the hypotheses of the result being checked."""
