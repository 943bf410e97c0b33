"""Brute-force reference computations, independent of the package's code paths.

Everything here works on raw nested lists (structure constants ``c[i][j][k]``,
twist matrices as row lists) and uses sympy for linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy


def as_rows(m) -> list[list[Fraction]]:
    """Accept a package Matrix or nested lists."""
    data = m.data if hasattr(m, "data") else m
    return [[Fraction(x) for x in row] for row in data]


def as_tensor(a) -> list:
    return [[[Fraction(x) for x in v] for v in row] for row in a.c]


def sym(rows) -> sympy.Matrix:
    rows = as_rows(rows)
    if not rows:
        return sympy.zeros(0, 0)
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def apply(rows, x) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(r, x)), Fraction(0)) for r in as_rows(rows)]


def column(rows, j) -> list[Fraction]:
    return [r[j] for r in as_rows(rows)]


def br(c, x, y) -> list[Fraction]:
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            for k in range(n):
                out[k] += Fraction(x[i]) * Fraction(y[j]) * c[i][j][k]
    return out


def unit(n, i) -> list[Fraction]:
    return [Fraction(int(k == i)) for k in range(n)]


def skew_ok(c) -> bool:
    n = len(c)
    return all(c[i][j][k] == -c[j][i][k] for i, j, k in product(range(n), repeat=3))


def hom_jacobi_ok(c, phi) -> bool:
    """All n^3 triples, repeats included."""
    n = len(c)
    for i, j, k in product(range(n), repeat=3):
        ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
        total = [a + b + d for a, b, d in zip(
            br(c, apply(phi, ei), br(c, ej, ek)),
            br(c, apply(phi, ej), br(c, ek, ei)),
            br(c, apply(phi, ek), br(c, ei, ej)))]
        if any(total):
            return False
    return True


def multiplicative_ok(c, phi) -> bool:
    n = len(c)
    for i, j in product(range(n), repeat=2):
        ei, ej = unit(n, i), unit(n, j)
        if apply(phi, br(c, ei, ej)) != br(c, apply(phi, ei), apply(phi, ej)):
            return False
    return True


def is_hom_lie(c, phi) -> bool:
    return skew_ok(c) and hom_jacobi_ok(c, phi)


def is_regular(c, phi) -> bool:
    return is_hom_lie(c, phi) and multiplicative_ok(c, phi) and sym(phi).det() != 0


def to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def rref_rows(vectors, n) -> list[list[Fraction]]:
    """Canonical basis (sympy RREF, zero rows dropped) of span(vectors)."""
    if not vectors:
        return []
    m, pivots = sympy.Matrix([[sympy.Rational(str(Fraction(x))) for x in v] for v in vectors]).rref()
    return [[to_fraction(m[r, k]) for k in range(n)] for r in range(len(pivots))]


def center_basis(c) -> list[list[Fraction]]:
    """Solve [x, b_j] = 0 for all j directly."""
    n = len(c)
    if n == 0:
        return []
    eqs = []
    for j in range(n):
        for k in range(n):
            eqs.append([c[i][j][k] for i in range(n)])
    ns = sym(eqs).nullspace()
    return rref_rows([[to_fraction(v[i]) for i in range(n)] for v in ns], n)


def derived_basis(c) -> list[list[Fraction]]:
    n = len(c)
    vecs = [c[i][j] for i in range(n) for j in range(n)]
    return rref_rows([v for v in vecs if any(v)], n)


def pivots(basis) -> list[int]:
    return [next(k for k, x in enumerate(r) if x) for r in basis]


def in_span(basis, x, n) -> bool:
    return len(rref_rows(basis + [x], n)) == len(rref_rows(basis, n)) if any(x) else True


def coords_in(basis, x) -> list[Fraction]:
    """Coordinates of x in the given basis (rows); x must lie in the span."""
    if not basis:
        return []
    sol, _ = sym(basis).T.gauss_jordan_solve(sym([x]).T)
    out = [to_fraction(sol[i]) for i in range(len(basis))]
    check = [sum((out[i] * basis[i][k] for i in range(len(basis))), Fraction(0)) for k in range(len(x))]
    assert check == list(x), "vector not in span"
    return out


class QuotientData:
    """V/I on the representatives e_q, q not a pivot of I's RREF basis."""

    def __init__(self, c, phi, ideal_basis):
        n = len(c)
        self.n = n
        self.ideal = ideal_basis
        piv = pivots(ideal_basis)
        self.reps = [q for q in range(n) if q not in piv]
        self.c, self.phi = c, phi

    def project(self, x) -> list[Fraction]:
        """Coordinates on the representatives of x + I."""
        full = self.ideal + [unit(self.n, q) for q in self.reps]
        co = coords_in(full, x)
        return co[len(self.ideal):]

    def lift(self, coords) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for a, q in zip(coords, self.reps):
            out[q] += a
        return out


def quotient_tensor(c, phi, ideal_basis):
    q = QuotientData(c, phi, ideal_basis)
    m = len(q.reps)
    qc = [[q.project(br(c, unit(q.n, a), unit(q.n, b))) for b in q.reps] for a in q.reps]
    qphi_cols = [q.project(apply(phi, unit(q.n, a))) for a in q.reps]
    qphi = [[qphi_cols[j][i] for j in range(m)] for i in range(m)]
    return qc, qphi


def subalgebra_tensor(c, phi, basis):
    k = len(basis)
    sc = [[coords_in(basis, br(c, basis[a], basis[b])) for b in range(k)] for a in range(k)]
    cols = [coords_in(basis, apply(phi, basis[a])) for a in range(k)]
    sphi = [[cols[j][i] for j in range(k)] for i in range(k)]
    return sc, sphi


def morphism_ok(c1, phi1, c2, phi2, f) -> bool:
    f = as_rows(f)
    n1 = len(c1)
    for j in range(n1):
        ej = unit(n1, j)
        if apply(f, apply(phi1, ej)) != apply(phi2, apply(f, ej)):
            return False
        for i in range(n1):
            ei = unit(n1, i)
            if apply(f, br(c1, ei, ej)) != br(c2, apply(f, ei), apply(f, ej)):
                return False
    return True


def isomorphism_ok(c1, phi1, c2, phi2, f) -> bool:
    f = as_rows(f)
    if len(f) != len(c2) or (f and len(f[0]) != len(c1)) or len(c1) != len(c2):
        return False
    if len(c1) and sym(f).det() == 0:
        return False
    return morphism_ok(c1, phi1, c2, phi2, f)


def isoclinism_ok(a, b, alpha, beta) -> bool:
    """Reference check of an isoclinism pair between package algebras a and b."""
    ca, cb = as_tensor(a), as_tensor(b)
    pa, pb = as_rows(a.phi), as_rows(b.phi)
    if not (is_regular(ca, pa) and is_regular(cb, pb)):
        return False
    za, zb = center_basis(ca), center_basis(cb)
    qa, qb = QuotientData(ca, pa, za), QuotientData(cb, pb, zb)
    qca, qpa = quotient_tensor(ca, pa, za)
    qcb, qpb = quotient_tensor(cb, pb, zb)
    if not isomorphism_ok(qca, qpa, qcb, qpb, alpha):
        return False
    da, db = derived_basis(ca), derived_basis(cb)
    dca, dpa = subalgebra_tensor(ca, pa, da)
    dcb, dpb = subalgebra_tensor(cb, pb, db)
    if not isomorphism_ok(dca, dpa, dcb, dpb, beta):
        return False
    m = len(qa.reps)
    for s, t in product(range(m), repeat=2):
        x, y = qa.lift(unit(m, s)), qa.lift(unit(m, t))
        lhs = apply(beta, coords_in(da, br(ca, x, y))) if da else []
        ax, ay = qb.lift(apply(alpha, unit(m, s))), qb.lift(apply(alpha, unit(m, t)))
        rhs = coords_in(db, br(cb, ax, ay)) if db else []
        if lhs != rhs:
            return False
    return True


def factor_set_ok(base, r) -> bool:
    """Skewness and the twisted cocycle identity over all triples of quotient basis vectors."""
    c, phi = as_tensor(base), as_rows(base.phi)
    z = center_basis(c)
    qc, qphi = quotient_tensor(c, phi, z)
    m = len(qc)
    k = len(z)

    def rr(x, y):
        out = [Fraction(0)] * k
        for a in range(m):
            for b in range(m):
                if x[a] and y[b]:
                    for t in range(k):
                        out[t] += x[a] * y[b] * Fraction(r[a][b][t])
        return out

    for a, b in product(range(m), repeat=2):
        if [Fraction(x) for x in r[a][b]] != [-Fraction(x) for x in r[b][a]]:
            return False
    for a, b, d in product(range(m), repeat=3):
        ea, eb, ed = unit(m, a), unit(m, b), unit(m, d)
        total = [x + y + w for x, y, w in zip(
            rr(br(qc, ea, eb), apply(qphi, ed)),
            rr(br(qc, eb, ed), apply(qphi, ea)),
            rr(br(qc, ed, ea), apply(qphi, eb)))]
        if any(total):
            return False
    return True


def rebuilt_tensor(base, r):
    """Structure constants of Z ⊕ V/Z with bracket (r(a,b), [a,b]) and the block twist."""
    c, phi = as_tensor(base), as_rows(base.phi)
    z = center_basis(c)
    qc, qphi = quotient_tensor(c, phi, z)
    k, m = len(z), len(qc)
    n = k + m
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b in product(range(m), repeat=2):
        out[k + a][k + b] = [Fraction(x) for x in r[a][b]] + list(qc[a][b])
    zphi_cols = [coords_in(z, apply(phi, x)) for x in z]
    psi = [[Fraction(0)] * n for _ in range(n)]
    for j in range(k):
        for i in range(k):
            psi[i][j] = zphi_cols[j][i]
    for i in range(m):
        for j in range(m):
            psi[k + i][k + j] = qphi[i][j]
    return out, psi
