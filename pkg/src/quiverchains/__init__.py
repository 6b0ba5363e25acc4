"""Exact homological computations with bounded complexes of quiver representations."""

from .linalg import Field, Matrix, GF2, QQ
from .algebra import BaseAlgebra, AModule, AModuleMorphism, ModuleCategory
from .quiver import Quiver, a2_quiver, line_quiver, fork_quiver
from .reps import Representation, RepMorphism, RepCategory

__all__ = [
    "Field", "Matrix", "GF2", "QQ",
    "BaseAlgebra", "AModule", "AModuleMorphism", "ModuleCategory",
    "Quiver", "a2_quiver", "line_quiver", "fork_quiver",
    "Representation", "RepMorphism", "RepCategory",
]
