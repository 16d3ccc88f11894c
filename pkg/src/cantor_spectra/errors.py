"""Exception hierarchy shared by all modules."""


class CantorSpectraError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CantorSpectraError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidDigitSetError(DomainError):
    """A digit set is empty, has negative entries or repeats an entry."""


class InexactDivisionError(CantorSpectraError, ArithmeticError):
    """Polynomial division over the integers left a nonzero remainder."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{divisor} does not divide {dividend} (remainder {remainder})")


class ValidationError(DomainError):
    """Base class for rejected system parameters; ``value`` names the culprit."""

    def __init__(self, message, value=None):
        self.value = value
        super().__init__(message)


class NotPrimeError(ValidationError):
    pass


class ExponentError(ValidationError):
    pass


class EmptyDigitSetError(ValidationError, InvalidDigitSetError):
    pass


class NegativeDigitError(ValidationError, InvalidDigitSetError):
    pass


class ResidueCollisionError(ValidationError):
    pass


class CapExceededError(ValidationError):
    pass


class UnsupportedSystemError(CantorSpectraError):
    """The system does not satisfy the hypothesis an operation relies on."""


class PreconditionError(CantorSpectraError, ValueError):
    """Inputs violate a documented precondition (e.g. a non-orthogonal seed)."""


class MalformedTreeError(CantorSpectraError, ValueError):
    """A labeled tree is not a complete homogeneous tree of its stated depth."""


class InstanceTooLargeError(CantorSpectraError, ValueError):
    """A brute-force search was asked to exceed its size guard."""
