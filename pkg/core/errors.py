"""
Exception hierarchy for exponent-lab.
"""


class ExponentLabError(Exception):
    """Base class for every error raised by this project."""


class DomainError(ExponentLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetError(ExponentLabError):
    """A request exceeds a configured search budget or cap."""


class EngineError(ExponentLabError):
    """An internal invariant was broken; indicates a bug, not bad input."""


class DatasetError(ExponentLabError):
    """A shipped data file violates its invariants."""


class CacheError(ExponentLabError):
    """The witness cache cannot be read or written."""
