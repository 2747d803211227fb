"""Exception hierarchy. Every error raised by the library derives from MotstabError."""


class MotstabError(Exception):
    pass


class ParseError(MotstabError, ValueError):
    pass


class NotInvertible(MotstabError, ArithmeticError):
    pass


class ZeroClass(MotstabError, ArithmeticError):
    pass


class GuardViolated(MotstabError, ValueError):
    pass


class DenominatorZero(MotstabError, ZeroDivisionError):
    pass


class NotPolynomial(MotstabError, ValueError):
    pass


class NonIntegerCoefficients(MotstabError, ValueError):
    pass


class NotStable(MotstabError, ValueError):
    pass


class PreconditionViolated(MotstabError, ValueError):
    pass


class UnknownGroup(MotstabError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else "unknown group"


class InvariantViolated(MotstabError, ValueError):
    pass


class BudgetExceeded(MotstabError, RuntimeError):
    pass


class TooSmall(MotstabError, ValueError):
    pass


class SizeMismatch(MotstabError, ValueError):
    pass


class MissingQuotient(MotstabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing quotient"


class NotPrime(MotstabError, ValueError):
    pass


class NonIntegerResult(MotstabError, ArithmeticError):
    pass


class UsageError(MotstabError):
    pass
