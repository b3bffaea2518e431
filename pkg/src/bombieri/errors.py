"""Exception hierarchy shared by every module of the package."""


class BombieriError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(BombieriError, ValueError):
    """Vectors, systems or coefficient lists have incompatible lengths."""


class NotEmbeddable(BombieriError, ValueError):
    """More orthonormal vectors requested than the dimension allows."""


class ParamError(BombieriError, ValueError):
    """Exponent parameters missing, unused, or outside the legal range."""


class ZeroVectorRow(BombieriError, ValueError):
    """A Gram row sums to zero, i.e. the system contains a zero vector."""


class ParseError(BombieriError, ValueError):
    """Instance or report text could not be decoded."""


class ValidationError(BombieriError, ValueError):
    """Decoded input violates an invariant of its schema."""
