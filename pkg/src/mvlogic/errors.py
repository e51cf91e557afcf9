"""Exception types shared across the package."""
from __future__ import annotations


class MVLogicError(Exception):
    """Base class for all package errors."""


class StructuralError(MVLogicError):
    """Malformed input: wrong dimensions, out-of-range entries, missing keys."""


class SchemaError(StructuralError):
    """A JSON document does not match its schema.

    ``path`` is a JSON-pointer-like location of the offending value.
    """

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(f"{path or '/'}: {message}" if path else message)
        self.message = message
        self.path = path


class InvalidTableError(MVLogicError):
    """A conjunction table violates one of the five axioms."""

    def __init__(self, message: str, report=None) -> None:
        super().__init__(message)
        self.report = report


class CapExceededError(MVLogicError):
    """A guarded enumeration or search was asked to exceed its cap."""


class IncompatibleMapError(MVLogicError):
    """A value map is not a congruence for the conjunction table."""

    def __init__(self, message: str, witness=None) -> None:
        super().__init__(message)
        self.witness = witness


class NegationMismatchError(MVLogicError):
    """An embedding or map does not commute with the chain negations."""


class UndeclaredAtomError(StructuralError):
    """A sentence mentions an atom outside the module signature."""


class NotDerivableError(MVLogicError):
    """A conclusion required as a precondition is not derivable."""


class SessionError(MVLogicError):
    """Invalid generator-session transition or unknown candidate."""
