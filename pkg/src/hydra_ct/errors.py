"""Exception hierarchy.

Every error carries the CLI exit code it maps to (2 parse/config,
3 budget, 4 coverage).
"""
from __future__ import annotations


class HydraError(Exception):
    exit_code = 1


class ParseError(HydraError, ValueError):
    exit_code = 2

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class AlphabetMismatch(HydraError, ValueError):
    exit_code = 2


class ConfigError(HydraError, ValueError):
    exit_code = 2


class NotAnAutomorphism(ConfigError):
    pass


class ContractError(HydraError, ValueError):
    exit_code = 2


class HypothesisError(HydraError, ValueError):
    """An experiment was asked to run outside its mathematical hypotheses."""

    exit_code = 2


class StabilizationError(HydraError, ValueError):
    exit_code = 2


class BudgetExceeded(HydraError, RuntimeError):
    exit_code = 3

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds budget {limit}")
        self.size = size
        self.limit = limit


class CoverageError(HydraError, LookupError):
    exit_code = 4

    def __init__(self, message: str, uncovered=()):
        super().__init__(message)
        self.uncovered = list(uncovered)
