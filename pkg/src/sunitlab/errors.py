"""Exception hierarchy shared by all modules.

Each error carries a stable machine-readable ``code`` and the process exit
status the CLI maps it to.
"""

from __future__ import annotations


class SUnitError(Exception):
    """Base class for all package errors."""

    code = "error"
    exit_status = 1


class ValidationError(SUnitError):
    """Bad input: parameters outside documented ranges or malformed config."""

    code = "validation"
    exit_status = 2


class CapacityError(SUnitError):
    """A requested computation exceeds a configured capacity limit."""

    code = "capacity"
    exit_status = 3


class FactorizationError(CapacityError):
    """An integer survived every configured factorization method."""

    code = "factorization"
    exit_status = 3


class VerificationError(SUnitError):
    """An internally produced result failed its own verification: a bug."""

    code = "verification"
    exit_status = 4


class ToleranceError(VerificationError):
    """Floating-point accumulation exceeded a rounding guard."""

    code = "tolerance"
    exit_status = 4
