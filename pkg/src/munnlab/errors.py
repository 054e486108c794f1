"""Exception hierarchy.

Every error carries the CLI exit code it maps to.
"""

from __future__ import annotations


class MunnLabError(Exception):
    exit_code = 1


class InvalidInput(MunnLabError, ValueError):
    exit_code = 2


class InvalidGroup(InvalidInput):
    """A Cayley table that does not define a group.

    ``witness`` holds the offending index tuple when one exists.
    """

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class ShapeMismatch(InvalidInput):
    pass


class RelationViolation(InvalidInput):
    pass


class NotInModPlus(InvalidInput):
    pass


class EmptyUnion(InvalidInput):
    pass


class ModularCase(MunnLabError):
    """The characteristic divides the group order, so kG is not semisimple."""

    exit_code = 3


class ClassifierDisagreement(MunnLabError):
    exit_code = 4


class BudgetExceeded(MunnLabError):
    exit_code = 5


class InternalInvariantViolation(MunnLabError, AssertionError):
    exit_code = 70


class SymmetryViolation(InternalInvariantViolation):
    pass
