"""Exception types shared across the toolkit."""


class QkError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(QkError):
    """Operands live over different ambient dimensions."""


class DegreeMismatch(QkError):
    """Operands have different form degrees where equal degrees are required."""


class DegreeOverflow(QkError):
    """A wedge or raising operator would exceed the top degree 4n."""


class DegreeUnderflow(QkError):
    """A lowering operator was applied to a form of degree below 4."""


class DegreeOutOfRange(QkError):
    """Requested operator degree is outside 0..4n."""


class InvalidDimension(QkError):
    """Quaternionic dimension must be a positive integer."""


class SingularNormalEquations(QkError):
    """The Gram matrix of the normal equations is not invertible."""


class OutOfTheoremRange(QkError):
    """Decomposition requested beyond its guaranteed degree range without force."""


class SignInconsistent(QkError):
    """No single sign reconciles the adjoint and star-formula operators."""


class SingularCayley(QkError):
    """The Cayley transform denominator is not invertible."""


class OrderExceeded(QkError):
    """Group closure grew past the configured maximum order."""


class LatticeViolation(QkError):
    """A quotient group element does not preserve the integer lattice."""


class ParseError(QkError):
    """Malformed input file or serialized value."""
