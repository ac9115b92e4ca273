"""Exception types shared across the package.

Every error carries an ``exit_code`` used by the command-line client:
2 for configuration or parse problems, 1 for construction, verification,
or certification failures.
"""


class GeamkitError(Exception):
    exit_code = 1


class DimensionMismatch(GeamkitError):
    exit_code = 2


class SizeMismatch(GeamkitError):
    """Line sizes are incompatible with an informationally complete family."""

    exit_code = 2


class WeightError(GeamkitError):
    """Line weights are not a strictly positive probability distribution."""

    exit_code = 2


class EtaOutOfRange(GeamkitError):
    exit_code = 2


class ROutOfRange(GeamkitError):
    exit_code = 2


class NotPrime(GeamkitError):
    exit_code = 2


class PurityOutOfRange(GeamkitError):
    exit_code = 2


class ParseError(GeamkitError):
    exit_code = 2


class NotPositive(GeamkitError):
    """A constructed element has a negative eigenvalue (mixing too large)."""


class DegenerateLine(GeamkitError):
    """A line contains a vanishing traceless component."""


class DegenerateFrame(GeamkitError):
    """Self and pair overlaps coincide, so no dual frame exists."""


class NotConstantS(GeamkitError):
    """Per-line design constants differ, so closed forms do not apply."""
