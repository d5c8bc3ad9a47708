from __future__ import annotations

from typing import Optional


class MfplanError(Exception):
    pass


class InvalidDistanceError(MfplanError, ValueError):
    pass


class InvalidKError(MfplanError, ValueError):
    pass


class InvalidProbabilityError(MfplanError, ValueError):
    pass


class ConfigError(MfplanError, ValueError):
    pass


class DegenerateTargetError(MfplanError):
    """The requested output error is too loose for distillation to help."""


class InfeasibleError(MfplanError):
    """No admissible parameters meet the target.

    ``constraint`` names the binding constraint and ``best`` holds the closest value reached, when one is known.
    """

    def __init__(self, message: str, *, constraint: str, best: Optional[float] = None) -> None:
        super().__init__(message)
        self.constraint = constraint
        self.best = best


class CircuitError(MfplanError):
    pass


class CircuitParseError(CircuitError):
    def __init__(self, message: str, lineno: Optional[int] = None) -> None:
        self.message = message
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class TooLargeError(MfplanError):
    pass


class FitRangeWarning(UserWarning):
    pass


class RejectionValidityWarning(UserWarning):
    pass


class TransversalityWarning(UserWarning):
    pass
