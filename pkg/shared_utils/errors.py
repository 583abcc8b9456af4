"""
Error hierarchy shared by every feature package.
Each error knows the CLI exit code it maps to and carries a detail dict
that is serialised verbatim into JSON error output.
"""
from typing import Any, Dict, Iterable, Optional

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3


class BunmotError(Exception):
    """Base class for all domain errors"""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = detail

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "detail": self.detail,
        }


# ------------- Data errors (bad curve profiles) -------------

class DataError(BunmotError):
    exit_code = EXIT_DATA


class BadLength(DataError):
    pass


class FunctionalEquationViolated(DataError):
    pass


class BadLeadingCoefficient(DataError):
    pass


class NonPositiveJacCount(DataError):
    pass


class ProfileLoadError(DataError):
    pass


class BadFieldSize(DataError):
    pass


class NegativeCount(DataError):
    pass


# ------------- Usage errors (bad arguments, out-of-regime calls) -------------

class UsageError(BunmotError, ValueError):
    exit_code = EXIT_USAGE


class PoleAtArgument(UsageError):
    pass


class NonConvergentDirection(UsageError):
    pass


class InfiniteWindow(UsageError):
    pass


class EmptyWindow(UsageError):
    pass


class WindowUnboundedMismatch(UsageError):
    pass


class GenusMismatch(UsageError):
    pass


class UnboundGenus(UsageError):
    pass


class UnstableRegime(UsageError):
    pass


class NegativeRank(UsageError):
    pass


class NegativeN(UsageError):
    pass


class BeyondTruncation(UsageError):
    pass


class ExprSyntaxError(UsageError):
    """Parse failure at a byte offset of the source text"""

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        expected_sorted = sorted(set(expected or ()))
        super().__init__(message, offset=offset, expected=expected_sorted)
        self.offset = offset
        self.expected = expected_sorted

    def __str__(self) -> str:
        if self.expected:
            return f"{self.message} at offset {self.offset} (expected one of: {', '.join(self.expected)})"
        return f"{self.message} at offset {self.offset}"
