"""Length, dimension, regularity and distance of projective parameterized codes."""

from .errors import BudgetExceeded, TheoremViolation
from .field import FieldElement, FieldSpec, field_build
from .toric import ExponentMatrix, ToricSet, enumerate_X, enumerate_torus, reduce_matrix

__all__ = [
    "BudgetExceeded",
    "TheoremViolation",
    "FieldElement",
    "FieldSpec",
    "field_build",
    "ExponentMatrix",
    "ToricSet",
    "enumerate_X",
    "enumerate_torus",
    "reduce_matrix",
]
__version__ = "0.1.0"
