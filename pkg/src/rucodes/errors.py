"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ParameterError(ValueError):
    """Invalid or mismatched parameters (non-prime p, foreign field, ...)."""


class ValidationError(ParameterError):
    """A code descriptor violates one of its range or unit constraints.

    ``constraint`` names the violated rule so callers (and the CLI) can
    report it verbatim.
    """

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        msg = constraint if not detail else f"{constraint}: {detail}"
        super().__init__(msg)


class ResourceError(RuntimeError):
    """A brute-force computation would exceed its configured budget."""

    def __init__(self, message: str, required: float | None = None, cap: float | None = None):
        self.required = required
        self.cap = cap
        super().__init__(message)


class NotInvertibleError(ArithmeticError):
    """Inverse requested for a non-unit ring element."""


class InternalError(RuntimeError):
    """An internal consistency check failed."""
