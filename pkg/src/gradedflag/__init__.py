"""Exact algebra of (2k+1)-graded Lie algebras and their generalized flag geometries."""

from .catalog import CatalogEntry, by_name, gl_blocks, sl2, sl_blocks
from .elementary_group import (GroupElement, act_in_chart, bergman, codenominator, denominator,
                               numerator)
from .exact_linalg import Matrix, Subspace
from .filtration import Filtration, is_transversal, torsor_solve, u_of
from .grading import Grading, grading_from_euler, validate_grading
from .kernels import BACKEND
from .lie_algebra import Element, LieAlgebra
from .scalar import Q
from .vector_fields import PolyMap, realize

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CatalogEntry", "Element", "Filtration", "Grading", "GroupElement", "LieAlgebra",
    "Matrix", "PolyMap", "Q", "Subspace", "act_in_chart", "bergman", "by_name", "codenominator",
    "denominator", "gl_blocks", "grading_from_euler", "is_transversal", "numerator", "realize",
    "sl2", "sl_blocks", "torsor_solve", "u_of", "validate_grading",
]
