"""Exception types raised across the package."""


class ThresholdCodesError(Exception):
    """Base class for all package errors."""


# finite fields

class NonPrimeP(ThresholdCodesError, ValueError):
    pass


class FieldOverflow(ThresholdCodesError, OverflowError):
    pass


class ZeroInverse(ThresholdCodesError, ZeroDivisionError):
    pass


class MixedFields(ThresholdCodesError, ValueError):
    pass


# binary codes

class IndexOutOfRange(ThresholdCodesError, IndexError):
    pass


class EmptySet(ThresholdCodesError, ValueError):
    pass


class BudgetExceeded(ThresholdCodesError):
    """Raised when an exhaustive enumeration would exceed the work cap.

    ``required`` holds the number of elementary operations the request needs.
    """

    def __init__(self, required, budget, what="subset enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} needs {required} elementary operations, budget is {budget}"
        )


class InvalidParams(ThresholdCodesError, ValueError):
    pass


class CodeFormatError(ThresholdCodesError, ValueError):
    """Malformed code file; ``line`` is the 1-based offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# Kautz-Singleton family

class NotPrimePower(ThresholdCodesError, ValueError):
    pass


class NoValidStrength(ThresholdCodesError, ValueError):
    pass


class MemoryBudget(ThresholdCodesError):
    pass


# rate bounds

class OutOfRange(ThresholdCodesError, ValueError):
    pass


class InvalidTau(ThresholdCodesError, ValueError):
    pass


class DomainError(ThresholdCodesError, ValueError):
    pass


# simulation

class InvalidDistribution(ThresholdCodesError, ValueError):
    pass
