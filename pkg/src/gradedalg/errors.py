"""Exception types shared across the package."""

from __future__ import annotations


class GradedAlgError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(GradedAlgError):
    """Two operands live over different fields."""


class DimensionMismatchError(GradedAlgError):
    """Shapes or ambient dimensions are incompatible."""


class UnsupportedFieldError(GradedAlgError):
    """The requested operation needs a finite field (or vice versa)."""


class NotInvertibleError(GradedAlgError):
    """A matrix that must be invertible is singular."""


class NotAssociativeError(GradedAlgError):
    """A candidate product fails associativity.

    Carries a witness: a triple of (degree, basis_index) pairs on which the
    associator is nonzero, plus the offending value.
    """

    def __init__(self, witness, value, labels=None):
        self.witness = witness
        self.value = value
        self.labels = labels
        pretty = " , ".join(labels) if labels else repr(witness)
        super().__init__(f"product is not associative on triple {pretty} (defect {value})")


class NotACocycleError(GradedAlgError):
    """A candidate deformation direction violates the cocycle identity.

    Carries the violated triple of (degree, basis_index) pairs.
    """

    def __init__(self, witness, value):
        self.witness = witness
        self.value = value
        super().__init__(f"cochain is not a cocycle: identity fails on {witness!r} (defect {value})")


class InvalidParameterError(GradedAlgError):
    """A stability parameter violates its defining inequalities."""


class ParseError(GradedAlgError):
    """An input document is malformed."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")
