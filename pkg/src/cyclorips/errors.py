"""Exception types shared across the package."""

from __future__ import annotations


class CycloripsError(Exception):
    """Base class for all package errors."""


class ParameterError(CycloripsError, ValueError):
    """A caller-supplied argument violates an operation's precondition."""


class UnsupportedRangeError(ParameterError):
    """The requested scale lies outside the range the closed forms cover."""


class InternalConsistencyError(CycloripsError):
    """Two routes that must agree (exact combinatorics vs dynamics,
    classification vs oracle) disagreed; indicates a bug, not bad input."""


class ConstructionError(CycloripsError):
    """An adversarial sample failed one of its self-certification checks."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}
