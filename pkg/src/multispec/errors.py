"""Exception types shared across the package.

Errors fall into two families: bad inputs (``ValidationError``, carrying a
machine-readable ``kind``) and exceeded resource guards (``GuardError``).
The CLI maps the former to exit code 1 and the latter to exit code 2.
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Input violates a documented invariant or precondition.

    ``kind`` is a short stable identifier (e.g. ``"alpha_sum"``) so callers
    and tests can distinguish failures without parsing messages.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class GuardError(RuntimeError):
    """A size/depth guard was exceeded (enumeration length, dense caps)."""


class ConvergenceError(RuntimeError):
    """An iterative numeric method failed to converge within its cap."""
