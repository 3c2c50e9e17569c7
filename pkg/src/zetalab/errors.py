"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: ValidationError -> 1,
ConvergenceError -> 2.  Acceptance failures are reported by the suite
runner itself (exit 3).
"""

from __future__ import annotations


class ZetalabError(Exception):
    """Base class for all package errors."""


class ValidationError(ZetalabError, ValueError):
    """Bad inputs: out-of-window parameters, malformed configs."""


class ConvergenceError(ZetalabError, RuntimeError):
    """A numerical routine exhausted its budget before reaching tolerance.

    Carries the best partial value so callers can report it.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class PrecisionError(ZetalabError, ValueError):
    """Requested evaluation lies outside the double-precision validity window."""
