"""Torsion pairs in recollements of module categories over finite fields."""

from .errors import (AtomListIncomplete, BudgetExceeded, InputError, InvariantError, PreconditionError,
                     RecollementError, RelationViolation)
from .linalg import Matrix
from .reps import Algebra, AtomList, Quiver, Representation, RepMorphism
from .recollement import FUNCTORS, RecollementInstance, TriModule
from .torsion import TorsionPair, TtfTriple, Truth, Verdict
from . import gluing, io, linalg, reps, torsion

__all__ = [
    "Algebra", "AtomList", "AtomListIncomplete", "BudgetExceeded", "FUNCTORS", "InputError", "InvariantError",
    "Matrix", "PreconditionError", "Quiver", "RecollementError", "RecollementInstance", "RelationViolation",
    "RepMorphism", "Representation", "TorsionPair", "TriModule", "TtfTriple", "Truth", "Verdict",
    "gluing", "io", "linalg", "reps", "torsion",
]
