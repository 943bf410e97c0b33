"""Hom-Lie algebras given by structure constants and a twist matrix.

``c[i][j]`` is the coordinate vector of ``[b_i, b_j]``; ``phi`` acts on column
vectors, so its j-th column is the image of ``b_j``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    block_diag,
    is_invariant,
    is_zero_vector,
    kernel,
    scalar,
    unit_vector,
    vadd,
    vec,
    vscale,
    zero_vector,
)
from .maps import LinearMapBetween


class ValidationError(ValueError):
    """Raised when a tensor fails skew-symmetry or the Hom-Jacobi identity."""

    def __init__(self, message: str, where: tuple[int, ...]):
        super().__init__(message)
        self.where = where


class NotAnIdeal(ValueError):
    pass


@dataclass(frozen=True)
class HomLieAlgebra:
    c: tuple
    phi: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.c)
        if self.phi.shape != (n, n):
            raise DimensionError(f"phi is {self.phi.shape}, expected {(n, n)}")
        for row in self.c:
            if len(row) != n or any(len(v) != n for v in row):
                raise DimensionError("structure constants must be n x n x n")

    @property
    def dim(self) -> int:
        return len(self.c)

    def __repr__(self) -> str:
        return f"HomLieAlgebra({self.name or '?'}, dim={self.dim})"

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Sequence],
                      phi: Matrix | Sequence | None = None, name: str = "") -> HomLieAlgebra:
        """Build from ``{(i, j): vector}`` for i < j (0-based); the rest is implied."""
        c = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket index pair {(i, j)} must satisfy 0 <= i < j < {dim}")
            v = vec(v)
            if len(v) != dim:
                raise DimensionError(f"bracket value for {(i, j)} has wrong length")
            c[i][j] = v
            c[j][i] = vscale(-1, v)
        if phi is None:
            phi = Matrix.identity(dim)
        elif not isinstance(phi, Matrix):
            phi = Matrix.from_rows(phi, dim)
        return cls(tuple(tuple(r) for r in c), phi, name)

    def with_phi(self, phi: Matrix, name: str | None = None) -> HomLieAlgebra:
        return HomLieAlgebra(self.c, phi, self.name if name is None else name)

    def renamed(self, name: str) -> HomLieAlgebra:
        return HomLieAlgebra(self.c, self.phi, name)

    def ad_left(self, j: int) -> Matrix:
        """Matrix of x -> [x, b_j]."""
        return Matrix.from_columns([self.c[i][j] for i in range(self.dim)], self.dim)


def abelian(n: int, phi: Matrix | Sequence | None = None, name: str | None = None) -> HomLieAlgebra:
    return HomLieAlgebra.from_brackets(n, {}, phi, name if name is not None else f"abelian-{n}")


def bracket(a: HomLieAlgebra, x: Sequence, y: Sequence) -> Vector:
    n = a.dim
    if len(x) != n or len(y) != n:
        raise DimensionError(f"bracket arguments must have length {n}")
    out = [Fraction(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = a.c[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            t = xi * yj
            for k, ck in enumerate(row[j]):
                if ck:
                    out[k] += t * ck
    return tuple(out)


def _basis_bracket(a: HomLieAlgebra, x: Sequence, j: int) -> Vector:
    """[x, b_j] for an arbitrary x."""
    out = zero_vector(a.dim)
    for i, xi in enumerate(x):
        if xi:
            out = vadd(out, vscale(xi, a.c[i][j]))
    return out


@dataclass(frozen=True)
class AlgebraProfile:
    is_multiplicative: bool
    is_regular: bool
    center: Subspace
    derived: Subspace
    is_abelian: bool
    is_stem: bool

    def report(self) -> dict:
        return {
            "dim": self.center.ambient_dim,
            "center_dim": self.center.dim,
            "derived_dim": self.derived.dim,
            "multiplicative": self.is_multiplicative,
            "regular": self.is_regular,
            "stem": self.is_stem,
            "abelian": self.is_abelian,
        }


def check_axioms(a: HomLieAlgebra) -> None:
    """Raise ValidationError at the first skew or Hom-Jacobi failure."""
    n = a.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if a.c[i][j][k] != -a.c[j][i][k]:
                    raise ValidationError(
                        f"skew-symmetry fails at (i,j,k)=({i},{j},{k}): "
                        f"c[i][j][k]={a.c[i][j][k]}, c[j][i][k]={a.c[j][i][k]}", (i, j, k))
    # triples with a repeated index cancel by skew-symmetry; the sum is cyclic
    cols = a.phi.columns()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = vadd(vadd(
                    bracket(a, cols[i], a.c[j][k]),
                    bracket(a, cols[j], a.c[k][i])),
                    bracket(a, cols[k], a.c[i][j]))
                if not is_zero_vector(total):
                    raise ValidationError(
                        f"Hom-Jacobi identity fails on basis triple ({i},{j},{k})", (i, j, k))


def multiplicativity_failure(a: HomLieAlgebra) -> tuple[int, int] | None:
    cols = a.phi.columns()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.phi.apply(a.c[i][j]) != bracket(a, cols[i], cols[j]):
                return (i, j)
    return None


def is_multiplicative(a: HomLieAlgebra) -> bool:
    return multiplicativity_failure(a) is None


def is_regular(a: HomLieAlgebra) -> bool:
    return is_multiplicative(a) and a.phi.is_invertible()


def is_abelian(a: HomLieAlgebra) -> bool:
    return all(is_zero_vector(v) for row in a.c for v in row)


def center(a: HomLieAlgebra) -> Subspace:
    n = a.dim
    if n == 0:
        return Subspace.zero(0)
    stacked = a.ad_left(0)
    for j in range(1, n):
        stacked = stacked.vstack(a.ad_left(j))
    return kernel(stacked)


def derived_subalgebra(a: HomLieAlgebra) -> Subspace:
    n = a.dim
    return Subspace.span([a.c[i][j] for i in range(n) for j in range(i + 1, n)], n)


def is_stem(a: HomLieAlgebra) -> bool:
    return center(a) <= derived_subalgebra(a)


def validate(a: HomLieAlgebra) -> AlgebraProfile:
    check_axioms(a)
    mult = is_multiplicative(a)
    z = center(a)
    d = derived_subalgebra(a)
    return AlgebraProfile(
        is_multiplicative=mult,
        is_regular=mult and a.phi.is_invertible(),
        center=z,
        derived=d,
        is_abelian=d.dim == 0,
        is_stem=z <= d,
    )


def _check_subspace(a: HomLieAlgebra, s: Subspace) -> None:
    if s.ambient_dim != a.dim:
        raise DimensionError(f"subspace of Q^{s.ambient_dim} in an algebra of dim {a.dim}")


def is_subalgebra(a: HomLieAlgebra, s: Subspace) -> bool:
    _check_subspace(a, s)
    basis = s.vectors()
    for i, x in enumerate(basis):
        for y in basis[i + 1:]:
            if not s.contains(bracket(a, x, y)):
                return False
    return is_invariant(s, a.phi)


def is_ideal(a: HomLieAlgebra, s: Subspace) -> bool:
    _check_subspace(a, s)
    for x in s.vectors():
        for j in range(a.dim):
            if not s.contains(_basis_bracket(a, x, j)):
                return False
    return is_invariant(s, a.phi)


def subalgebra(a: HomLieAlgebra, s: Subspace, name: str | None = None) -> tuple[HomLieAlgebra, LinearMapBetween]:
    """The subalgebra on ``s`` in its RREF basis, with the inclusion map."""
    if not is_subalgebra(a, s):
        raise ValueError("subspace is not a Hom-Lie subalgebra")
    basis = s.vectors()
    k = len(basis)
    c = tuple(tuple(s.coords(bracket(a, x, y)) for y in basis) for x in basis)
    phi = Matrix.from_columns([s.coords(a.phi.apply(x)) for x in basis], k)
    sub = HomLieAlgebra(c, phi, name if name is not None else f"{a.name}|sub{k}")
    return sub, LinearMapBetween(sub, a, s.inclusion())


def quotient(a: HomLieAlgebra, i: Subspace, name: str | None = None) -> tuple[HomLieAlgebra, LinearMapBetween]:
    """``a / i`` on the coset representatives e_q, q a non-pivot column of ``i``."""
    if not is_ideal(a, i):
        raise NotAnIdeal("subspace is not a phi-invariant ideal")
    reps = i.non_pivots

    def project(v):
        r = i.reduce(v)
        return tuple(r[q] for q in reps)

    m = len(reps)
    c = tuple(tuple(project(a.c[s][t]) for t in reps) for s in reps)
    phi = Matrix.from_columns([project(a.phi.column(s)) for s in reps], m)
    q = HomLieAlgebra(c, phi, name if name is not None else f"{a.name}/I{i.dim}")
    proj = Matrix.from_columns([project(unit_vector(a.dim, j)) for j in range(a.dim)], m)
    return q, LinearMapBetween(a, q, proj)


def lift_matrix(a: HomLieAlgebra, i: Subspace) -> Matrix:
    """Columns are the canonical coset representatives used by :func:`quotient`."""
    return Matrix.from_columns([unit_vector(a.dim, q) for q in i.non_pivots], a.dim)


def central_quotient(a: HomLieAlgebra) -> tuple[HomLieAlgebra, LinearMapBetween]:
    return quotient(a, center(a), name=f"{a.name}/Z")


def derived_algebra(a: HomLieAlgebra) -> tuple[HomLieAlgebra, LinearMapBetween]:
    return subalgebra(a, derived_subalgebra(a), name=f"{a.name}'")


def direct_sum(a: HomLieAlgebra, b: HomLieAlgebra, name: str | None = None) -> HomLieAlgebra:
    n, m = a.dim, b.dim
    zero_a, zero_b = zero_vector(n), zero_vector(m)
    c = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(a.c[i][j] + zero_b)
            elif i >= n and j >= n:
                row.append(zero_a + b.c[i - n][j - n])
            else:
                row.append(zero_vector(n + m))
        c.append(tuple(row))
    return HomLieAlgebra(tuple(c), block_diag(a.phi, b.phi),
                         name if name is not None else f"{a.name}+{b.name}")


def bracket_endomorphism_failure(a: HomLieAlgebra, f: Matrix) -> tuple[int, int] | None:
    cols = f.columns()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if f.apply(a.c[i][j]) != bracket(a, cols[i], cols[j]):
                return (i, j)
    return None


def yau_twist(lie: HomLieAlgebra, auto: Matrix, name: str | None = None) -> HomLieAlgebra:
    """Twist a Lie algebra along a bracket endomorphism: [x,y]' = auto[x,y], phi = auto."""
    n = lie.dim
    if lie.phi != Matrix.identity(n):
        raise ValueError("yau_twist expects a Lie algebra (phi = identity)")
    check_axioms(lie)
    if auto.shape != (n, n):
        raise DimensionError("automorphism has the wrong shape")
    bad = bracket_endomorphism_failure(lie, auto)
    if bad is not None:
        raise ValueError(f"map does not preserve the bracket on basis pair {bad}")
    c = tuple(tuple(auto.apply(v) for v in row) for row in lie.c)
    return HomLieAlgebra(c, auto, name if name is not None else f"{lie.name}~twist")


def structure_mutation(a: HomLieAlgebra, i: int, j: int, k: int, delta=1) -> HomLieAlgebra:
    """Copy of ``a`` with the single entry c[i][j][k] shifted by ``delta``."""
    c = [[list(v) for v in row] for row in a.c]
    c[i][j][k] += scalar(delta)
    return HomLieAlgebra(tuple(tuple(tuple(v) for v in row) for row in c), a.phi, a.name)
