from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .linalg import DimensionError, Matrix, Vector

if TYPE_CHECKING:
    from .algebra import HomLieAlgebra


@dataclass(frozen=True)
class LinearMapBetween:
    """A linear map ``domain -> codomain`` given by a codomain.dim x domain.dim matrix."""

    domain: HomLieAlgebra
    codomain: HomLieAlgebra
    m: Matrix

    def __post_init__(self):
        if self.m.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionError(
                f"map matrix is {self.m.rows}x{self.m.cols}, expected "
                f"{self.codomain.dim}x{self.domain.dim}")

    def __call__(self, x: Sequence) -> Vector:
        return self.m.apply(x)

    def after(self, other: LinearMapBetween) -> LinearMapBetween:
        """Composition ``self ∘ other``."""
        return LinearMapBetween(other.domain, self.codomain, self.m @ other.m)

    def inverse(self) -> LinearMapBetween:
        return LinearMapBetween(self.codomain, self.domain, self.m.inverse())

    @classmethod
    def identity(cls, a: HomLieAlgebra) -> LinearMapBetween:
        return cls(a, a, Matrix.identity(a.dim))
