"""Exception types raised across the package."""


class DualCanonError(Exception):
    """Base class for all library errors."""


class NotInvertible(DualCanonError, ArithmeticError):
    pass


class DimensionMismatch(DualCanonError, ValueError):
    pass


class IndexOutOfRange(DualCanonError, IndexError):
    pass


class NotCoprime(DualCanonError, ValueError):
    pass


class IrrationalSpectrum(DualCanonError, ValueError):
    """The classical part has eigenvalues outside the rationals."""


class SpectraNotDisjoint(DualCanonError, ValueError):
    pass


class NotMuMutual(DualCanonError, ValueError):
    pass


class ZeroMatrix(DualCanonError, ValueError):
    pass


class UnsupportedCardinality(DualCanonError, ValueError):
    pass


class NotInUm(DualCanonError, ValueError):
    """Matrix has a row or column with more than one non-zero entry."""


class NotDiagonal(DualCanonError, ValueError):
    pass


class WrongShape(DualCanonError, ValueError):
    pass


class NotNilpotent(DualCanonError, ValueError):
    pass


class UnsupportedOrder(DualCanonError, ValueError):
    pass


class ParseError(DualCanonError, ValueError):
    pass
