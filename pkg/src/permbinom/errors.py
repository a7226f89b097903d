"""Exception hierarchy shared by every module and the CLI."""


class PermBinomError(Exception):
    """Base class; the CLI maps any subclass to exit code 2."""


class NotPrime(PermBinomError, ValueError):
    pass


class NotPrimePower(PermBinomError, ValueError):
    pass


class Overflow(PermBinomError, ValueError):
    pass


class DivisionByZero(PermBinomError, ZeroDivisionError):
    pass


class FieldMismatch(PermBinomError, TypeError):
    pass


class NotADivisor(PermBinomError, ValueError):
    pass


class BadExponents(PermBinomError, ValueError):
    pass


class ZeroCoefficient(PermBinomError, ValueError):
    pass


class ExponentOutOfRange(PermBinomError, ValueError):
    pass


class PreconditionFailed(PermBinomError, ValueError):
    pass


class TheoremViolation(PermBinomError, RuntimeError):
    """A construction that is proved to succeed did not."""


class InvalidCertificate(PermBinomError, AssertionError):
    pass


class DomainError(PermBinomError, ValueError):
    pass


class SieveBudgetExceeded(PermBinomError, ValueError):
    pass
