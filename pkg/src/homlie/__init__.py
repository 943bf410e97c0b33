"""Exact computations with finite-dimensional Hom-Lie algebras over the rationals."""

from .algebra import (
    HomLieAlgebra,
    abelian,
    center,
    derived_subalgebra,
    direct_sum,
    quotient,
    validate,
)
from .linalg import Matrix, Subspace

__all__ = [
    "HomLieAlgebra",
    "Matrix",
    "Subspace",
    "abelian",
    "center",
    "derived_subalgebra",
    "direct_sum",
    "quotient",
    "validate",
]
