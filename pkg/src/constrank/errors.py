"""Exception hierarchy shared by every constrank module."""


class ConstRankError(Exception):
    """Base class for all errors raised by constrank."""


class MissingParameter(ConstRankError, KeyError):
    pass


class ZeroPolynomial(ConstRankError, ValueError):
    pass


class NoRealRoot(ConstRankError, ValueError):
    pass


class DimensionMismatch(ConstRankError, ValueError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class IndexOutOfRange(ConstRankError, IndexError):
    pass


class NotSymmetric(ConstRankError, ValueError):
    pass


class BadParams(ConstRankError, ValueError):
    pass


class BadRank(BadParams):
    pass


class SingularA(ConstRankError, ValueError):
    pass


class DegreeTooHigh(ConstRankError, ValueError):
    pass


class IdentityFails(ConstRankError, AssertionError):
    """A polynomial identity that is a theorem did not reduce to zero."""
