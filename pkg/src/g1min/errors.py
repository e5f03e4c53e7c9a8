"""Exception hierarchy shared by every module."""


class G1MinError(Exception):
    """Base class for all library errors."""


class NonIntegralCoefficient(G1MinError):
    pass


class DimensionMismatch(G1MinError):
    pass


class DegreeMismatch(G1MinError):
    pass


class SingularInput(G1MinError):
    """Raised when an operation needs a nonzero discriminant."""


class SingularGenericFiber(SingularInput):
    pass


class NonIntegralLevel(G1MinError):
    """(v(disc) - v(disc_min)) / 12 is not a nonnegative integer."""


class UnsupportedResidueField(G1MinError):
    """The fiber configuration is only visible over an extension of F_p."""


class PositionViolation(G1MinError):
    pass


class DerivationFailed(G1MinError):
    pass
