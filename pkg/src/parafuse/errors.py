"""Exception hierarchy shared across the package."""


class ParafuseError(Exception):
    """Base class for all errors raised by parafuse."""


class InvalidLevelError(ParafuseError, ValueError):
    """Level parameter is not an integer >= 2."""


class InvalidLabelError(ParafuseError, ValueError):
    """Module label out of range for the given level."""


class NonCanonicalLabelError(ParafuseError, ValueError):
    """An operation defined only on canonical labels received a
    non-canonical one; callers must canonicalize explicitly."""


class UnitarityError(ParafuseError, ArithmeticError):
    """S-matrix failed the unitarity or normalization check."""


class RoundingResidualError(ParafuseError, ArithmeticError):
    """A Verlinde sum was too far from the nearest integer, which signals
    a wrong normalization or a label permutation bug."""


class DualityError(ParafuseError, ArithmeticError):
    """A label has no unique dual partner; the fusion table is broken."""


class SeriesDivisionError(ParafuseError, ArithmeticError):
    """Series division hit a non-invertible leading term or a non-exact
    coefficient quotient."""


class TruncationError(ParafuseError, ValueError):
    """Requested computation needs more series terms than the given
    truncation provides."""
