class RecollementError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RecollementError, ValueError):
    """Malformed input: bad shapes, unknown names, non-prime modulus, ..."""


class RelationViolation(InputError):
    def __init__(self, relation, message=None):
        self.relation = relation
        super().__init__(message or f"relation {relation} does not vanish")


class AtomListIncomplete(RecollementError):
    """An object could not be written as a sum of the declared atoms."""


class BudgetExceeded(RecollementError):
    def __init__(self, needed, budget):
        self.needed = needed
        self.budget = budget
        super().__init__(f"subobject enumeration needs {needed} subspace tuples, budget is {budget}")


class PreconditionError(RecollementError):
    """A hypothesis of a gluing or restriction result (typically exactness of a functor) fails on this instance."""

    def __init__(self, message, functor=None):
        self.functor = functor
        super().__init__(message)


class InvariantError(RecollementError):
    """Internal consistency failure; indicates a bug or a corrupted atom list."""
