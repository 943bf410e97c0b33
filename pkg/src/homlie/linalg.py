"""Exact linear algebra over the rationals.

Matrices and vectors hold :class:`fractions.Fraction` entries.  Subspaces are
kept as the reduced row-echelon form of a basis, so two subspaces are equal
exactly when their dataclasses compare equal.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted")
    return Fraction(x)


def format_scalar(q: Fraction) -> str:
    q = scalar(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def vadd(x: Sequence, y: Sequence) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} != {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} != {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vscale(t, x: Sequence) -> Vector:
    return tuple(t * a for a in x)


def is_zero_vector(x: Sequence) -> bool:
    return all(a == 0 for a in x)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix; ``data`` is a tuple of row tuples."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionError("matrix data does not match its shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> Matrix:
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], rows: int) -> Matrix:
        columns = [vec(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionError("column length mismatch")
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(n, n, tuple(
            tuple(scalar(values[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows,
                      tuple(self.column(j) for j in range(self.cols)))

    def apply(self, x: Sequence) -> Vector:
        if len(x) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to length {len(x)}")
        return tuple(sum((a * b for a, b in zip(r, x) if a and b), Fraction(0))
                     for r in self.data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix.from_columns([self.apply(c) for c in cols], self.rows)
        return self.apply(other)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      tuple(vadd(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return Matrix(self.rows, self.cols,
                      tuple(vsub(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, t) -> Matrix:
        t = scalar(t)
        return Matrix(self.rows, self.cols, tuple(vscale(t, r) for r in self.data))

    def with_entry(self, i: int, j: int, value) -> Matrix:
        rows = [list(r) for r in self.data]
        rows[i][j] = scalar(value)
        return Matrix(self.rows, self.cols, tuple(tuple(r) for r in rows))

    def is_zero(self) -> bool:
        return all(is_zero_vector(r) for r in self.data)

    def rank(self) -> int:
        return len(_echelon(self.data, self.cols)[1])

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise DimensionError("only square matrices have inverses")
        n = self.rows
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.data)]
        reduced, pivots = _echelon(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ValueError("matrix is singular")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in reduced[:n]))

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows:
            raise DimensionError("row count mismatch in hstack")
        return Matrix(self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise DimensionError("column count mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(len(rows), len(cols),
                      tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(a) for a in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    top = a.hstack(Matrix.zeros(a.rows, b.cols))
    bottom = Matrix.zeros(b.rows, a.cols).hstack(b)
    return top.vstack(bottom)


def _echelon(rows, ncols: int):
    """Gauss-Jordan elimination; returns (reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [a / lead for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: Matrix) -> Matrix:
    reduced, _ = _echelon(m.data, m.cols)
    return Matrix(m.rows, m.cols, tuple(tuple(r) for r in reduced))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored by its canonical RREF basis (rows)."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [vec(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        reduced, pivots = _echelon(rows, ambient_dim)
        data = tuple(tuple(r) for r in reduced[:len(pivots)])
        return cls(ambient_dim, Matrix(len(data), ambient_dim, data))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> Subspace:
        return cls.span([unit_vector(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a != 0) for r in self.basis.data]

    @property
    def non_pivots(self) -> list[int]:
        p = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in p]

    def vectors(self) -> list[Vector]:
        return list(self.basis.data)

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace.

        The result vanishes on every pivot coordinate.
        """
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        for p, row in zip(self.pivots, self.basis.data):
            if v[p] != 0:
                v = vsub(v, vscale(v[p], row))
        return v

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        v = vec(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c: Sequence) -> Vector:
        if len(c) != self.dim:
            raise DimensionError("coordinate vector length mismatch")
        return self.basis.T.apply(c) if self.dim else zero_vector(self.ambient_dim)

    def inclusion(self) -> Matrix:
        """ambient_dim x dim matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.basis.data, self.ambient_dim)

    def coordinate_map(self) -> Matrix:
        """dim x ambient_dim matrix reading off coordinates (valid on the subspace)."""
        return Matrix.from_rows([unit_vector(self.ambient_dim, p) for p in self.pivots],
                                self.ambient_dim)

    def __le__(self, other: Subspace) -> bool:
        _check_same_ambient(self, other)
        return all(other.contains(v) for v in self.basis.data)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(format_scalar(a) for a in r) + ")"
                         for r in self.basis.data)
        return f"Subspace(Q^{self.ambient_dim}: span{{{rows}}})"


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    reduced, pivots = _echelon(m.data, m.cols)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def image(m: Matrix, s: Subspace | None = None) -> Subspace:
    """Image of ``s`` (default: the whole domain) under ``m``."""
    if s is None:
        return Subspace.span(m.columns(), m.rows)
    if s.ambient_dim != m.cols:
        raise DimensionError("subspace does not live in the matrix domain")
    return Subspace.span([m.apply(v) for v in s.vectors()], m.rows)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    # Zassenhaus: reduce [[A, A], [B, 0]]; rows with vanishing left half span a ∩ b.
    _check_same_ambient(a, b)
    n = a.ambient_dim
    rows = [list(v) + list(v) for v in a.vectors()]
    rows += [list(v) + [Fraction(0)] * n for v in b.vectors()]
    reduced, _ = _echelon(rows, 2 * n)
    out = [r[n:] for r in reduced if is_zero_vector(r[:n]) and not is_zero_vector(r[n:])]
    return Subspace.span(out, n)


def complement(a: Subspace) -> Subspace:
    """Coordinate complement spanned by the non-pivot standard basis vectors."""
    return Subspace.coordinate(a.ambient_dim, a.non_pivots)


def is_invariant(s: Subspace, phi: Matrix) -> bool:
    return all(s.contains(phi.apply(v)) for v in s.vectors())


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    b = vec(b)
    if len(b) != a.rows:
        raise DimensionError("right-hand side length mismatch")
    aug = [list(r) + [bi] for r, bi in zip(a.data, b)]
    reduced, pivots = _echelon(aug, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def invariant_complement(a: Subspace, phi: Matrix) -> Subspace | None:
    """A complement U of ``a`` with ``phi(U) ⊆ U``, or None when none exists.

    In the basis (basis of a, coordinate complement) phi is block upper
    triangular [[A, B], [0, D]].  Projections onto ``a`` along a complement
    are [[I, X], [0, 0]]; commuting with phi means A X - X D = B.  The kernel
    of a commuting projection is the invariant complement.
    """
    n = a.ambient_dim
    if phi.shape != (n, n):
        raise DimensionError("phi must be square of the ambient dimension")
    if not phi.is_invertible():
        raise ValueError("phi is not invertible")
    if not is_invariant(a, phi):
        raise ValueError("subspace is not phi-invariant")
    k = a.dim
    comp = complement(a)
    if k == 0 or k == n:
        return comp
    basis = Matrix.from_columns(a.vectors() + comp.vectors(), n)
    local = basis.inverse() @ phi @ basis
    A = local.submatrix(range(k), range(k))
    B = local.submatrix(range(k), range(k, n))
    D = local.submatrix(range(k, n), range(k, n))
    m = n - k
    # unknown X[i][j] -> index i*m + j
    rows, rhs = [], []
    for i in range(k):
        for j in range(m):
            row = [Fraction(0)] * (k * m)
            for t in range(k):
                row[t * m + j] += A[i, t]
            for t in range(m):
                row[i * m + t] -= D[t, j]
            rows.append(row)
            rhs.append(B[i, j])
    x = solve(Matrix(k * m, k * m, tuple(tuple(r) for r in rows)), rhs)
    if x is None:
        return None
    X = Matrix(k, m, tuple(tuple(x[i * m:(i + 1) * m]) for i in range(k)))
    # kernel of the projection: local coordinates (-X y, y)
    local_ker = (-X).vstack(Matrix.identity(m))
    return Subspace.span((basis @ local_ker).columns(), n)


def charpoly(m: Matrix) -> tuple[Fraction, ...]:
    """Coefficients of det(tI - m), highest degree first (Faddeev-LeVerrier)."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [Fraction(1)]
    mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(coeffs[-1]))
        trace = sum((mk[i, i] for i in range(n)), Fraction(0))
        coeffs.append(-trace / k)
    return tuple(coeffs)
