"""Exception hierarchy."""


class UCFourierError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(UCFourierError, ValueError):
    """An argument lies outside the domain of an operation."""


class GridTooSmallError(DomainError):
    """A sampling grid cannot represent the polynomial without aliasing."""


class DegreeTooLargeError(DomainError):
    """The requested degree does not fit on the given grid."""


class SpecParseError(DomainError):
    """A function, weight or n-list specification could not be parsed."""


class CoefficientFileError(DomainError):
    """A coefficient file is malformed."""


class ToleranceViolation(UCFourierError):
    """An internal numerical check failed its stated tolerance."""
