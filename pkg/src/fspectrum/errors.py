"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Any


class FSpectrumError(Exception):
    """Base class for all errors raised by the package."""


class InputError(FSpectrumError, ValueError):
    """Malformed input: wrong ground set, bad labels, unparsable numbers."""


class GroundMismatch(InputError):
    """Two objects that must share a ground set do not."""


class DomainError(FSpectrumError, ValueError):
    """A well-formed argument that lies outside an operation's domain."""


class NotInvertible(DomainError):
    """Raised by ``invert`` for members of F0."""


class TheoremViolation(FSpectrumError, AssertionError):
    """An internal consistency assertion failed.

    ``counterexample`` holds a JSON-serialisable payload describing the
    failing input, so that callers can report and replay it.
    """

    def __init__(self, message: str, counterexample: Any = None) -> None:
        super().__init__(message)
        self.counterexample = counterexample
