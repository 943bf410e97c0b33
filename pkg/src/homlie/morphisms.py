"""Morphisms, isoclinisms and a bounded isomorphism search.

An :class:`IsoclinismPair` relates two regular algebras V and W through
``alpha: V/Z(V) -> W/Z(W)`` and ``beta: V' -> W'``.  Both sides use the
canonical algebras of :func:`~homlie.algebra.central_quotient` and
:func:`~homlie.algebra.derived_algebra`, so the pair is determined by two
plain matrices.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterator
from dataclasses import dataclass, replace
from fractions import Fraction

from .algebra import (
    HomLieAlgebra,
    bracket,
    center,
    central_quotient,
    derived_algebra,
    derived_subalgebra,
    direct_sum,
    is_abelian,
    is_ideal,
    is_multiplicative,
    is_regular,
    lift_matrix,
    quotient,
)
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    _echelon,
    charpoly,
    image,
    kernel,
    solve,
    subspace_intersect,
    unit_vector,
)
from .maps import LinearMapBetween


class IsoclinismError(ValueError):
    pass


class NotRegular(IsoclinismError):
    pass


class NotAMorphism(IsoclinismError):
    pass


class NotSurjective(IsoclinismError):
    pass


class KernelMeetsDerived(IsoclinismError):
    pass


# -- morphisms ----------------------------------------------------------------

def morphism_failure(f: LinearMapBetween) -> str | None:
    """Describe the first violated morphism condition, or None."""
    a, b, m = f.domain, f.codomain, f.m
    if m @ a.phi != b.phi @ m:
        return "f∘phi1 != phi2∘f"
    cols = m.columns()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if m.apply(a.c[i][j]) != bracket(b, cols[i], cols[j]):
                return f"f[b{i},b{j}] != [f b{i}, f b{j}]"
    return None


def verify_morphism(f: LinearMapBetween) -> bool:
    return morphism_failure(f) is None


def verify_isomorphism(f: LinearMapBetween) -> bool:
    if not f.m.is_invertible() or not verify_morphism(f):
        return False
    # regularity transfers along isomorphisms
    return not (is_regular(f.domain) and not is_regular(f.codomain))


# -- isoclinism pairs ---------------------------------------------------------

@dataclass(frozen=True)
class _Canonical:
    algebra: HomLieAlgebra
    z: Subspace
    d: Subspace
    quotient: HomLieAlgebra
    lift: Matrix          # quotient coords -> representative in V
    project: Matrix       # V -> quotient coords
    derived: HomLieAlgebra


def _canonical(v: HomLieAlgebra) -> _Canonical:
    if not is_regular(v):
        raise NotRegular(f"isoclinism needs regular algebras; {v.name or 'algebra'} is not")
    z = center(v)
    q, proj = central_quotient(v)
    dv, _ = derived_algebra(v)
    return _Canonical(v, z, derived_subalgebra(v), q, lift_matrix(v, z), proj.m, dv)


@dataclass(frozen=True)
class IsoclinismPair:
    source: HomLieAlgebra
    target: HomLieAlgebra
    alpha: LinearMapBetween
    beta: LinearMapBetween
    verified: bool = False


def make_pair(v: HomLieAlgebra, w: HomLieAlgebra, alpha: Matrix, beta: Matrix) -> IsoclinismPair:
    cv, cw = _canonical(v), _canonical(w)
    return IsoclinismPair(v, w, LinearMapBetween(cv.quotient, cw.quotient, alpha),
                          LinearMapBetween(cv.derived, cw.derived, beta))


def isoclinism_failure(p: IsoclinismPair) -> str | None:
    cv, cw = _canonical(p.source), _canonical(p.target)
    if p.alpha.domain != cv.quotient or p.alpha.codomain != cw.quotient:
        return "alpha is not a map between the canonical central quotients"
    if p.beta.domain != cv.derived or p.beta.codomain != cw.derived:
        return "beta is not a map between the canonical derived subalgebras"
    if not verify_isomorphism(p.alpha):
        return "alpha is not an isomorphism of central quotients"
    if not verify_isomorphism(p.beta):
        return "beta is not an isomorphism of derived subalgebras"
    v, w = p.source, p.target
    q = cv.quotient.dim
    a_lift = cw.lift @ p.alpha.m
    for s in range(q):
        for t in range(s + 1, q):
            lhs = p.beta.m.apply(cv.d.coords(bracket(v, cv.lift.column(s), cv.lift.column(t))))
            rhs = cw.d.coords(bracket(w, a_lift.column(s), a_lift.column(t)))
            if lhs != rhs:
                return f"square fails on quotient basis pair ({s},{t})"
    return None


def verify_isoclinism(p: IsoclinismPair) -> bool:
    return isoclinism_failure(p) is None


def _verified(p: IsoclinismPair) -> IsoclinismPair:
    problem = isoclinism_failure(p)
    if problem is not None:
        raise IsoclinismError(f"constructed pair does not verify: {problem}")
    return replace(p, verified=True)


def _pair_from_morphism(f: LinearMapBetween) -> IsoclinismPair:
    """Pair induced by a morphism mapping Z(V) into Z(W) and V' onto W'."""
    cv, cw = _canonical(f.domain), _canonical(f.codomain)
    alpha = cw.project @ f.m @ cv.lift
    beta_cols = [cw.d.coords(f.m.apply(x)) for x in cv.d.vectors()]
    beta = Matrix.from_columns(beta_cols, cw.d.dim)
    return make_pair(f.domain, f.codomain, alpha, beta)


def identity_pair(v: HomLieAlgebra) -> IsoclinismPair:
    cv = _canonical(v)
    return _verified(make_pair(v, v, Matrix.identity(cv.quotient.dim),
                               Matrix.identity(cv.derived.dim)))


def pair_from_isomorphism(f: LinearMapBetween) -> IsoclinismPair:
    if not verify_isomorphism(f):
        raise NotAMorphism("map is not an isomorphism")
    return _verified(_pair_from_morphism(f))


def invert_pair(p: IsoclinismPair) -> IsoclinismPair:
    q = make_pair(p.target, p.source, p.alpha.m.inverse(), p.beta.m.inverse())
    return replace(q, verified=verify_isoclinism(q))


def compose_pairs(second: IsoclinismPair, first: IsoclinismPair) -> IsoclinismPair:
    """``second ∘ first``; requires first.target == second.source."""
    if first.target != second.source:
        raise IsoclinismError("pairs are not composable")
    q = make_pair(first.source, second.target, second.alpha.m @ first.alpha.m,
                  second.beta.m @ first.beta.m)
    return replace(q, verified=verify_isoclinism(q))


def isoclinism_abelian_sum(v: HomLieAlgebra, w: HomLieAlgebra) -> IsoclinismPair:
    """V ~ V⊕W for W abelian, induced by the embedding v -> (v, 0)."""
    if not is_abelian(w):
        raise IsoclinismError("second summand must be abelian")
    s = direct_sum(v, w)
    embed = Matrix.identity(v.dim).vstack(Matrix.zeros(w.dim, v.dim))
    return _verified(_pair_from_morphism(LinearMapBetween(v, s, embed)))


def isoclinism_from_quotient(v: HomLieAlgebra, i: Subspace) -> IsoclinismPair:
    """V ~ V/I for an ideal I with I ∩ V' = 0."""
    if not is_ideal(v, i):
        raise IsoclinismError("subspace is not an ideal")
    if subspace_intersect(i, derived_subalgebra(v)).dim != 0:
        raise KernelMeetsDerived("ideal meets the derived subalgebra")
    _, proj = quotient(v, i)
    return isoclinism_from_epimorphism(proj)


def isoclinism_quotients(v: HomLieAlgebra, i: Subspace) -> IsoclinismPair:
    """V/(I ∩ V') ~ V/I for any ideal I, via the natural surjection."""
    if not is_ideal(v, i):
        raise IsoclinismError("subspace is not an ideal")
    j = subspace_intersect(i, derived_subalgebra(v))
    vj, _ = quotient(v, j)
    vi, proj_i = quotient(v, i)
    f = LinearMapBetween(vj, vi, proj_i.m @ lift_matrix(v, j))
    return isoclinism_from_epimorphism(f)


def isoclinism_from_epimorphism(f: LinearMapBetween) -> IsoclinismPair:
    problem = morphism_failure(f)
    if problem is not None:
        raise NotAMorphism(f"not a morphism: {problem}")
    if f.m.rank() != f.codomain.dim:
        raise NotSurjective("map is not onto")
    if subspace_intersect(kernel(f.m), derived_subalgebra(f.domain)).dim != 0:
        raise KernelMeetsDerived("kernel meets the derived subalgebra")
    return _verified(_pair_from_morphism(f))


def compatibility_failure(p: IsoclinismPair) -> str | None:
    cv, cw = _canonical(p.source), _canonical(p.target)
    beta_in_w = cw.d.inclusion() @ p.beta.m
    for s, x in enumerate(cv.d.vectors()):
        if p.alpha.m.apply(cv.project.apply(x)) != cw.project.apply(beta_in_w.column(s)):
            return f"alpha(x+Z) != beta(x)+Z for derived basis vector {s}"
    a_lift = cw.lift @ p.alpha.m @ cv.project
    for s, x in enumerate(cv.d.vectors()):
        bx = beta_in_w.column(s)
        for j in range(p.source.dim):
            lhs = p.beta.m.apply(cv.d.coords(bracket(p.source, x, unit_vector(p.source.dim, j))))
            rhs = cw.d.coords(bracket(p.target, bx, a_lift.column(j)))
            if lhs != rhs:
                return f"beta[x,v] != [beta x, v'] for derived vector {s}, basis vector {j}"
    return None


def check_compatibility(p: IsoclinismPair) -> bool:
    return compatibility_failure(p) is None


# -- bounded search -----------------------------------------------------------

class Verdict(enum.Enum):
    FOUND = "found"
    NOT_FOUND_WITHIN_BOUND = "not_found_within_bound"
    IMPOSSIBLE = "impossible"


@dataclass(frozen=True)
class SearchResult:
    verdict: Verdict
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.FOUND


def invariant_mismatch(a: HomLieAlgebra, b: HomLieAlgebra) -> str | None:
    """First isomorphism invariant on which ``a`` and ``b`` differ."""
    if a.dim != b.dim:
        return f"dimension {a.dim} != {b.dim}"
    checks = [
        ("abelian", is_abelian),
        ("center dimension", lambda x: center(x).dim),
        ("derived dimension", lambda x: derived_subalgebra(x).dim),
        ("multiplicative", is_multiplicative),
        ("twist rank", lambda x: x.phi.rank()),
        ("twist characteristic polynomial", lambda x: charpoly(x.phi)),
    ]
    for label, fn in checks:
        if fn(a) != fn(b):
            return f"{label} differs: {fn(a)} != {fn(b)}"
    if is_regular(a) and is_regular(b):
        qa, _ = central_quotient(a)
        qb, _ = central_quotient(b)
        za, zb = center(qa).dim, center(qb).dim
        if za != zb:
            return f"center of central quotient differs: {za} != {zb}"
    return None


def _value_order(bound: int) -> list[int]:
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


class _Affine:
    """Affine solution set ``particular + span(null)`` of a linear system."""

    def __init__(self, particular: list, null: list, ok: bool = True):
        self.particular = particular
        self.null = null
        self.ok = ok

    @classmethod
    def solve(cls, nvars: int, rows: list) -> _Affine:
        """Rows are ``coefficients + [rhs]``."""
        return cls([Fraction(0)] * nvars, [unit_vector(nvars, i) for i in range(nvars)]).extend(rows)

    def extend(self, rows: list) -> _Affine:
        d = len(self.null)
        small = []
        for row in rows:
            coeffs = row[:-1]
            nz = [(i, a) for i, a in enumerate(coeffs) if a]
            small.append([sum((a * v[i] for i, a in nz), Fraction(0)) for v in self.null]
                         + [row[-1] - sum((a * self.particular[i] for i, a in nz), Fraction(0))])
        reduced, pivots = _echelon(small, d + 1)
        if pivots and pivots[-1] == d:
            return _Affine(self.particular, self.null, ok=False)
        t0 = [Fraction(0)] * d
        for r, p in zip(reduced, pivots):
            t0[p] = r[-1]
        particular = list(self.particular)
        for k, tk in enumerate(t0):
            if tk:
                particular = [x + tk * y for x, y in zip(particular, self.null[k])]
        null = []
        for fv in (j for j in range(d) if j not in pivots):
            t = [Fraction(0)] * d
            t[fv] = Fraction(1)
            for r, p in zip(reduced, pivots):
                t[p] = -r[fv]
            vecn = [Fraction(0)] * len(particular)
            for k, tk in enumerate(t):
                if tk:
                    vecn = [x + tk * y for x, y in zip(vecn, self.null[k])]
            null.append(vecn)
        return _Affine(particular, null)


def enumerate_isomorphisms(a: HomLieAlgebra, b: HomLieAlgebra, bound: int) -> Iterator[LinearMapBetween]:
    """Isomorphisms a -> b with integer entries in [-bound, bound], in a fixed order.

    The twist condition f∘phi_a = phi_b∘f is linear and is solved first; the
    search then fixes one column (the image of one basis vector) at a time and
    adds the now-linear bracket conditions f[b_i,b_j] = [f b_i, f b_j].
    """
    n = a.dim
    if n != b.dim:
        return
    if n == 0:
        yield LinearMapBetween(a, b, Matrix.zeros(0, 0))
        return
    # unknown f[i][j] -> index j*n + i
    nv = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            # (f phi_a - phi_b f)[i][j] = 0
            row = [Fraction(0)] * (nv + 1)
            for k in range(n):
                row[k * n + i] += a.phi[k, j]
                row[j * n + k] -= b.phi[i, k]
            rows.append(row)
    # isomorphisms carry Z(a) into Z(b) and a' into b'
    for sa, sb in ((center(a), center(b)), (derived_subalgebra(a), derived_subalgebra(b))):
        if sb.dim == n:
            continue
        annihilator = kernel(Matrix.from_rows(sb.vectors(), n)) if sb.dim else Subspace.full(n)
        for x in sa.vectors():
            for y in annihilator.vectors():
                row = [Fraction(0)] * (nv + 1)
                for k, xk in enumerate(x):
                    if xk:
                        for r, yr in enumerate(y):
                            row[k * n + r] += yr * xk
                rows.append(row)
    start = _Affine.solve(nv, rows)
    values = _value_order(bound)

    def bracket_rows(i, j, cols):
        target = bracket(b, cols[i], cols[j])
        out = []
        for r in range(n):
            row = [Fraction(0)] * (nv + 1)
            for k, ck in enumerate(a.c[i][j]):
                if ck:
                    row[k * n + r] += ck
            row[-1] = target[r]
            out.append(row)
        return out

    def rec(j, system, cols):
        if j == n:
            f = LinearMapBetween(a, b, Matrix.from_columns(cols, n))
            if verify_isomorphism(f):
                yield f
            return
        # affine set of possible images of b_j
        base = [system.particular[j * n + r] for r in range(n)]
        directions = Subspace.span([[v[j * n + r] for r in range(n)] for v in system.null], n)
        dvecs, pivots = directions.vectors(), directions.pivots
        for vals in itertools.product(values, repeat=len(pivots)):
            cand = list(base)
            for p, val, d in zip(pivots, vals, dvecs):
                t = val - base[p]
                if t:
                    cand = [x + t * y for x, y in zip(cand, d)]
            if any(x.denominator != 1 or abs(x) > bound for x in cand):
                continue
            cand = tuple(cand)
            if Matrix.from_columns(cols + [cand], n).rank() != j + 1:
                continue
            new_rows = []
            for r in range(n):
                row = [Fraction(0)] * (nv + 1)
                row[j * n + r] = Fraction(1)
                row[-1] = cand[r]
                new_rows.append(row)
            new_cols = cols + [cand]
            for i in range(j):
                new_rows += bracket_rows(i, j, new_cols)
            nxt = system.extend(new_rows)
            if nxt.ok:
                yield from rec(j + 1, nxt, new_cols)

    if start.ok:
        yield from rec(0, start, [])


def bounded_isomorphism_search(a: HomLieAlgebra, b: HomLieAlgebra, bound: int) -> SearchResult:
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    reason = invariant_mismatch(a, b)
    if reason is not None:
        return SearchResult(Verdict.IMPOSSIBLE, None, reason)
    for f in enumerate_isomorphisms(a, b, bound):
        return SearchResult(Verdict.FOUND, f, "isomorphism found")
    return SearchResult(Verdict.NOT_FOUND_WITHIN_BOUND, None,
                        f"no isomorphism with entries in [-{bound}, {bound}]")


def bounded_isoclinism_search(v: HomLieAlgebra, w: HomLieAlgebra, bound: int) -> SearchResult:
    """Search alpha over bounded quotient isomorphisms; beta is then forced."""
    cv, cw = _canonical(v), _canonical(w)
    for label, x, y in (("central quotients", cv.quotient, cw.quotient),
                        ("derived subalgebras", cv.derived, cw.derived)):
        reason = invariant_mismatch(x, y)
        if reason is not None:
            return SearchResult(Verdict.IMPOSSIBLE, None, f"{label}: {reason}")
    q, kv, kw = cv.quotient.dim, cv.d.dim, cw.d.dim
    for alpha in enumerate_isomorphisms(cv.quotient, cw.quotient, bound):
        a_lift = cw.lift @ alpha.m
        xs, ys = [], []
        for s in range(q):
            for t in range(s + 1, q):
                xs.append(cv.d.coords(bracket(v, cv.lift.column(s), cv.lift.column(t))))
                ys.append(cw.d.coords(bracket(w, a_lift.column(s), a_lift.column(t))))
        if kv == 0:
            beta = Matrix.zeros(kw, 0)
        else:
            system = Matrix.from_rows(xs, kv)
            beta_rows = []
            for r in range(kw):
                sol = solve(system, [y[r] for y in ys])
                if sol is None:
                    break
                beta_rows.append(sol)
            else:
                beta = Matrix.from_rows(beta_rows, kv) if kw else Matrix.zeros(0, kv)
                p = make_pair(v, w, alpha.m, beta)
                if verify_isoclinism(p):
                    return SearchResult(Verdict.FOUND, replace(p, verified=True), "isoclinism found")
            continue
        p = make_pair(v, w, alpha.m, beta)
        if verify_isoclinism(p):
            return SearchResult(Verdict.FOUND, replace(p, verified=True), "isoclinism found")
    return SearchResult(Verdict.NOT_FOUND_WITHIN_BOUND, None,
                        f"no isoclinism with alpha entries in [-{bound}, {bound}]")


def image_of(f: LinearMapBetween, s: Subspace) -> Subspace:
    if s.ambient_dim != f.domain.dim:
        raise DimensionError("subspace does not live in the domain")
    return image(f.m, s)
