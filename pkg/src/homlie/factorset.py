"""Factor sets over regular Hom-Lie algebras and the algebras built from them.

A factor set over V is a skew-bilinear r : V/Z(V) x V/Z(V) -> Z(V), stored in
the canonical bases: the RREF basis of Z(V) and the coset representatives of
:func:`~homlie.algebra.central_quotient`.  The algebra R built from r lives on
Z(V) ⊕ V/Z(V) with the center block first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import (
    HomLieAlgebra,
    bracket,
    center,
    central_quotient,
    derived_subalgebra,
    direct_sum,
    is_abelian,
    is_regular,
    is_stem,
    lift_matrix,
    quotient,
    subalgebra,
)
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    block_diag,
    charpoly,
    complement,
    invariant_complement,
    is_zero_vector,
    kernel,
    subspace_intersect,
    subspace_sum,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vector,
)
from .maps import LinearMapBetween
from .morphisms import (
    IsoclinismPair,
    NotRegular,
    compose_pairs,
    invert_pair,
    isoclinism_abelian_sum,
    pair_from_isomorphism,
    verify_isoclinism,
    verify_isomorphism,
)


class FactorSetError(ValueError):
    pass


class InvariantComplementNotFound(FactorSetError):
    pass


class NotStem(FactorSetError):
    pass


class PipelineError(FactorSetError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass(frozen=True)
class BaseData:
    """Center, central quotient and induced twists of a regular algebra."""

    algebra: HomLieAlgebra
    z: Subspace
    quotient: HomLieAlgebra
    project: Matrix
    lift: Matrix
    phi_z: Matrix

    @property
    def z_dim(self) -> int:
        return self.z.dim

    @property
    def q_dim(self) -> int:
        return self.quotient.dim


def base_data(v: HomLieAlgebra) -> BaseData:
    if not is_regular(v):
        raise NotRegular("factor sets are defined over regular algebras only")
    z = center(v)
    q, proj = central_quotient(v)
    phi_z = Matrix.from_columns([z.coords(v.phi.apply(x)) for x in z.vectors()], z.dim)
    return BaseData(v, z, q, proj.m, lift_matrix(v, z), phi_z)


@dataclass(frozen=True)
class FactorSet:
    base: HomLieAlgebra
    q_dim: int
    z_dim: int
    r: tuple
    section_f: Matrix | None = None

    def __post_init__(self):
        if len(self.r) != self.q_dim or any(
                len(row) != self.q_dim or any(len(x) != self.z_dim for x in row) for row in self.r):
            raise DimensionError("factor set tensor must be q_dim x q_dim x z_dim")

    def __call__(self, x, y) -> tuple:
        out = zero_vector(self.z_dim)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = vadd(out, vscale(xi * yj, self.r[i][j]))
        return out

    @classmethod
    def zero(cls, base: HomLieAlgebra) -> FactorSet:
        bd = base_data(base)
        r = tuple(tuple(zero_vector(bd.z_dim) for _ in range(bd.q_dim)) for _ in range(bd.q_dim))
        return cls(base, bd.q_dim, bd.z_dim, r)

    @classmethod
    def from_pairs(cls, base: HomLieAlgebra, values: dict) -> FactorSet:
        """From ``{(i, j): z-coordinates}`` with i < j; skew part implied."""
        bd = base_data(base)
        r = [[zero_vector(bd.z_dim) for _ in range(bd.q_dim)] for _ in range(bd.q_dim)]
        for (i, j), val in values.items():
            val = vec(val)
            r[i][j] = val
            r[j][i] = vscale(-1, val)
        return cls(base, bd.q_dim, bd.z_dim, tuple(tuple(row) for row in r))

    def with_entry(self, i: int, j: int, value) -> FactorSet:
        r = [list(row) for row in self.r]
        r[i][j] = vec(value)
        return FactorSet(self.base, self.q_dim, self.z_dim,
                         tuple(tuple(row) for row in r), self.section_f)


def _check_dims(fs: FactorSet) -> BaseData:
    bd = base_data(fs.base)
    if (fs.q_dim, fs.z_dim) != (bd.q_dim, bd.z_dim):
        raise DimensionError(
            f"factor set has (q_dim, z_dim)=({fs.q_dim}, {fs.z_dim}); base needs "
            f"({bd.q_dim}, {bd.z_dim})")
    return bd


def factor_set_failure(fs: FactorSet) -> str | None:
    bd = _check_dims(fs)
    q = bd.quotient
    m = fs.q_dim
    for i in range(m):
        for j in range(m):
            if fs.r[i][j] != vscale(-1, fs.r[j][i]):
                return f"skew-symmetry fails at ({i},{j})"
    twist = q.phi.columns()
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                total = vadd(vadd(
                    fs(q.c[i][j], twist[k]),
                    fs(q.c[j][k], twist[i])),
                    fs(q.c[k][i], twist[j]))
                if not is_zero_vector(total):
                    return f"cocycle identity fails on quotient basis triple ({i},{j},{k})"
    return None


def validate_factor_set(fs: FactorSet) -> bool:
    return factor_set_failure(fs) is None


def is_multiplicative_factor_set(fs: FactorSet) -> bool:
    bd = _check_dims(fs)
    twist = bd.quotient.phi.columns()
    for i in range(fs.q_dim):
        for j in range(i + 1, fs.q_dim):
            if fs(twist[i], twist[j]) != bd.phi_z.apply(fs.r[i][j]):
                return False
    return True


def build_algebra(fs: FactorSet, name: str | None = None) -> HomLieAlgebra:
    """R = Z(V) ⊕ V/Z(V) with [(x1,a),(x2,b)] = (r(a,b), [a,b]) and twist (phi|Z, phi~)."""
    problem = factor_set_failure(fs)
    if problem is not None:
        raise FactorSetError(f"invalid factor set: {problem}")
    bd = base_data(fs.base)
    k, m = fs.z_dim, fs.q_dim
    n = k + m
    c = []
    for a in range(n):
        row = []
        for b in range(n):
            if a < k or b < k:
                row.append(zero_vector(n))
            else:
                row.append(fs.r[a - k][b - k] + bd.quotient.c[a - k][b - k])
        c.append(tuple(row))
    psi = block_diag(bd.phi_z, bd.quotient.phi)
    return HomLieAlgebra(tuple(c), psi, name if name is not None else f"R({fs.base.name})")


def central_block(fs: FactorSet) -> Subspace:
    """Z_R = {(x, 0)} inside the algebra built from ``fs``."""
    return Subspace.coordinate(fs.z_dim + fs.q_dim, range(fs.z_dim))


def extract_factor_set(v: HomLieAlgebra) -> tuple[FactorSet, LinearMapBetween]:
    """Factor set of v through a phi-invariant section, with theta: R -> v."""
    bd = base_data(v)
    u = invariant_complement(bd.z, v.phi)
    if u is None:
        raise InvariantComplementNotFound(
            "center has no phi-invariant complement; the section cannot commute with the twist")
    # decompose each coset representative as (Z part) + (U part)
    n = v.dim
    basis = Matrix.from_columns(bd.z.vectors() + u.vectors(), n)
    inv = basis.inverse()
    k = bd.z_dim
    sect_cols = []
    for s in range(bd.q_dim):
        coords = inv.apply(bd.lift.column(s))
        u_part = zero_vector(n)
        for t, ut in enumerate(u.vectors()):
            u_part = vadd(u_part, vscale(coords[k + t], ut))
        sect_cols.append(u_part)
    f = Matrix.from_columns(sect_cols, n)
    q = bd.quotient
    r = []
    for s in range(bd.q_dim):
        row = []
        for t in range(bd.q_dim):
            val = vsub(bracket(v, f.column(s), f.column(t)), f.apply(q.c[s][t]))
            row.append(bd.z.coords(val))
        r.append(tuple(row))
    fs = FactorSet(v, bd.q_dim, k, tuple(r), f)
    rebuilt = build_algebra(fs, name=f"R({v.name})")
    theta = LinearMapBetween(rebuilt, v, bd.z.inclusion().hstack(f))
    return fs, theta


def _beta_on_center(p: IsoclinismPair) -> Matrix:
    """beta restricted to Z(V) -> Z(W), in the RREF center bases."""
    v, w = p.source, p.target
    zv, zw = center(v), center(w)
    dv, dw = derived_subalgebra(v), derived_subalgebra(w)
    cols = []
    for x in zv.vectors():
        y = dw.from_coords(p.beta.m.apply(dv.coords(x)))
        if not zw.contains(y):
            raise FactorSetError("beta does not map Z(V) into Z(W)")
        cols.append(zw.coords(y))
    nu = Matrix.from_columns(cols, zw.dim)
    if not nu.is_invertible():
        raise FactorSetError("beta does not restrict to an isomorphism of centers")
    return nu


def transport_factor_set(p: IsoclinismPair, s: FactorSet) -> FactorSet:
    """Pull a factor set over W back to V: r(a, b) = nu^-1 s(alpha a, alpha b)."""
    if not verify_isoclinism(p):
        raise FactorSetError("isoclinism pair does not verify")
    for label, x in (("source", p.source), ("target", p.target)):
        if not is_stem(x):
            raise NotStem(f"{label} algebra {x.name} is not stem")
    if s.base != p.target:
        raise FactorSetError("factor set does not live over the pair's target")
    _check_dims(s)
    nu_inv = _beta_on_center(p).inverse()
    alpha = p.alpha.m
    bd = base_data(p.source)
    r = []
    for a in range(bd.q_dim):
        row = []
        for b in range(bd.q_dim):
            row.append(nu_inv.apply(s(alpha.column(a), alpha.column(b))))
        r.append(tuple(row))
    return FactorSet(p.source, bd.q_dim, bd.z_dim, tuple(r))


def transport_isomorphism(p: IsoclinismPair, r: FactorSet, s: FactorSet) -> LinearMapBetween:
    """eta(x, a) = (beta x, alpha a) from build_algebra(r) to build_algebra(s)."""
    eta = LinearMapBetween(build_algebra(r), build_algebra(s),
                           block_diag(_beta_on_center(p), p.alpha.m))
    if not verify_isomorphism(eta):
        raise FactorSetError("transported map is not an isomorphism")
    return eta


def _split(zr: Subspace, zs: Subspace, eta: LinearMapBetween):
    if not verify_isomorphism(eta):
        raise FactorSetError("eta is not an isomorphism")
    if Subspace.span([eta.m.apply(x) for x in zr.vectors()], eta.codomain.dim) != zs:
        raise FactorSetError("eta does not map the central block onto the central block")
    qr, pr = quotient(eta.domain, zr)
    qs, ps = quotient(eta.codomain, zs)
    return qr, pr, qs, ps


def induced_automorphisms(eta: LinearMapBetween, zr: Subspace, zs: Subspace) -> tuple[Matrix, Matrix]:
    """(mu, nu): the maps eta induces on the quotient blocks and on the central blocks."""
    qr, _, qs, ps = _split(zr, zs, eta)
    mu = ps.m @ eta.m @ lift_matrix(eta.domain, zr)
    nu = Matrix.from_columns([zs.coords(eta.m.apply(x)) for x in zr.vectors()], zs.dim)
    phi_zr = Matrix.from_columns([zr.coords(eta.domain.phi.apply(x)) for x in zr.vectors()], zr.dim)
    phi_zs = Matrix.from_columns([zs.coords(eta.codomain.phi.apply(x)) for x in zs.vectors()], zs.dim)
    if mu @ qr.phi != qs.phi @ mu or nu @ phi_zr != phi_zs @ nu:
        raise FactorSetError("induced maps do not commute with the twists")
    if not verify_isomorphism(LinearMapBetween(qr, qs, mu)):
        raise FactorSetError("induced quotient map is not an isomorphism")
    return mu, nu


def delta_block(eta: LinearMapBetween, zr: Subspace, zs: Subspace) -> Matrix:
    """Center component of eta on the coset representatives of the quotient block."""
    _split(zr, zs, eta)
    cols = []
    for x in lift_matrix(eta.domain, zr).columns():
        y = eta.m.apply(x)
        cols.append(zs.coords(vsub(y, zs.reduce(y))))
    return Matrix.from_columns(cols, zs.dim)


def eta_failure(r: FactorSet, s: FactorSet, mu: Matrix, nu: Matrix, delta: Matrix) -> str | None:
    br, bs = _check_dims(r), _check_dims(s)
    if mu.shape != (s.q_dim, r.q_dim) or nu.shape != (s.z_dim, r.z_dim) \
            or delta.shape != (s.z_dim, r.q_dim):
        return "matrix shapes do not match the factor sets"
    if not mu.is_invertible() or not nu.is_invertible():
        return "mu and nu must be invertible"
    if mu @ br.quotient.phi != bs.quotient.phi @ mu:
        return "mu does not commute with the quotient twists"
    if nu @ br.phi_z != bs.phi_z @ nu:
        return "nu does not commute with the twists on the centers"
    if delta @ br.quotient.phi != bs.phi_z @ delta:
        return "delta does not intertwine the quotient twist with the center twist"
    qr, qs = br.quotient, bs.quotient
    cols = mu.columns()
    for a in range(r.q_dim):
        for b in range(a + 1, r.q_dim):
            if mu.apply(qr.c[a][b]) != bracket(qs, cols[a], cols[b]):
                return f"mu is not a bracket map on quotient basis pair ({a},{b})"
            lhs = vadd(nu.apply(r.r[a][b]), delta.apply(qr.c[a][b]))
            if lhs != s(cols[a], cols[b]):
                return f"compatibility nu r + delta[.,.] = s(mu, mu) fails on pair ({a},{b})"
    return None


def eta_from_mu_nu_delta(r: FactorSet, s: FactorSet, mu: Matrix, nu: Matrix,
                         delta: Matrix) -> LinearMapBetween:
    """eta(x, a) = (nu x + delta a, mu a) from build_algebra(r) to build_algebra(s)."""
    problem = eta_failure(r, s, mu, nu, delta)
    if problem is not None:
        raise FactorSetError(problem)
    m = nu.hstack(delta).vstack(Matrix.zeros(mu.rows, nu.cols).hstack(mu))
    eta = LinearMapBetween(build_algebra(r), build_algebra(s), m)
    if not verify_isomorphism(eta):
        raise FactorSetError("assembled eta is not an isomorphism")
    return eta


def delta_from_isoclinism(p: IsoclinismPair, r: FactorSet, s: FactorSet) -> Matrix:
    """delta on the derived part of V/Z(V), read off beta(0, [a, b]); zero elsewhere.

    ``p`` relates R = build_algebra(r) and S = build_algebra(s).
    """
    R, S = p.source, p.target
    if R != build_algebra(r) or S != build_algebra(s):
        raise FactorSetError("pair does not relate the algebras built from r and s")
    if not verify_isoclinism(p):
        raise FactorSetError("isoclinism pair does not verify")
    for label, x in (("R", R), ("S", S)):
        if not is_stem(x):
            raise NotStem(f"{label} is not stem")
    br, bs = _check_dims(r), _check_dims(s)
    k, m = r.z_dim, r.q_dim
    dR, dS = derived_subalgebra(R), derived_subalgebra(S)
    qr = br.quotient
    q_derived = derived_subalgebra(qr)
    cols = {}
    for y in q_derived.vectors():
        x = zero_vector(k) + y  # (0, y) in R
        img = dS.from_coords(p.beta.m.apply(dR.coords(x)))
        cols[tuple(y)] = img[:s.z_dim]
    mu = p.alpha.m
    nu = _beta_on_center(p)

    def assemble(comp: Subspace) -> Matrix:
        basis = Matrix.from_columns(q_derived.vectors() + comp.vectors(), m)
        images = [cols[tuple(y)] for y in q_derived.vectors()]
        images += [zero_vector(s.z_dim)] * comp.dim
        return Matrix.from_columns(images, s.z_dim) @ basis.inverse()

    delta = assemble(complement(q_derived))
    if delta @ qr.phi != bs.phi_z @ delta:
        # the coordinate complement is not twist-invariant; use an invariant one
        comp = invariant_complement(q_derived, qr.phi)
        if comp is None:
            raise FactorSetError("no twist-compatible extension of delta")
        delta = assemble(comp)
    problem = eta_failure(r, s, mu, nu, delta)
    if problem is not None:
        raise FactorSetError(f"delta does not satisfy the compatibility conditions: {problem}")
    return delta


def stem_isoclinic_iff_isomorphic(v: HomLieAlgebra, w: HomLieAlgebra,
                                  p: IsoclinismPair) -> LinearMapBetween:
    """Isomorphism v -> w assembled from an isoclinism of stem algebras."""
    stage = "preconditions"
    try:
        if not verify_isoclinism(p) or p.source != v or p.target != w:
            raise FactorSetError("pair does not verify between v and w")
        for label, x in (("v", v), ("w", w)):
            if not is_stem(x):
                raise NotStem(f"{label} is not stem")
        stage = "extract"
        r, theta_v = extract_factor_set(v)
        s_w, theta_w = extract_factor_set(w)
        stage = "transport"
        s = transport_factor_set(p, s_w)
        eta_t = transport_isomorphism(p, s, s_w)          # S -> S_w
        to_w = theta_w.after(eta_t)                       # S -> w
        stage = "isoclinism R~S"
        p_rs = compose_pairs(invert_pair(pair_from_isomorphism(to_w)),
                             compose_pairs(p, pair_from_isomorphism(theta_v)))
        if not p_rs.verified:
            raise FactorSetError("composed pair R ~ S does not verify")
        stage = "delta"
        delta = delta_from_isoclinism(p_rs, r, s)
        stage = "eta"
        mu, nu = p_rs.alpha.m, _beta_on_center(p_rs)
        eta = eta_from_mu_nu_delta(r, s, mu, nu, delta)
        stage = "assemble"
        f = to_w.after(eta).after(theta_v.inverse())
        f = LinearMapBetween(v, w, f.m)
        if not verify_isomorphism(f):
            raise FactorSetError("assembled map is not an isomorphism")
        return f
    except PipelineError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise PipelineError(stage, str(exc)) from exc


@dataclass(frozen=True)
class StemDecomposition:
    t: HomLieAlgebra
    a: HomLieAlgebra
    witness: LinearMapBetween
    t_space: Subspace
    a_space: Subspace

    def isoclinism(self) -> IsoclinismPair:
        """T ~ V through T ~ T⊕A ≅ V."""
        return compose_pairs(pair_from_isomorphism(self.witness),
                             isoclinism_abelian_sum(self.t, self.a))


def _relative_invariant_complement(sub: Subspace, ambient: Subspace, phi: Matrix) -> Subspace | None:
    """Twist-invariant complement of ``sub`` inside the invariant subspace ``ambient``."""
    n = ambient.ambient_dim
    k = ambient.dim
    phi_local = Matrix.from_columns([ambient.coords(phi.apply(x)) for x in ambient.vectors()], k)
    sub_local = Subspace.span([ambient.coords(x) for x in sub.vectors()], k)
    comp = invariant_complement(sub_local, phi_local)
    if comp is None:
        return None
    return Subspace.span([ambient.from_coords(x) for x in comp.vectors()], n)


def stem_decompose(v: HomLieAlgebra) -> StemDecomposition:
    if not is_regular(v):
        raise NotRegular("stem decomposition needs a regular algebra")
    z, d = center(v), derived_subalgebra(v)
    zd = subspace_intersect(z, d)
    a_space = _relative_invariant_complement(zd, z, v.phi)
    if a_space is None:
        raise InvariantComplementNotFound("Z(V) ∩ V' has no invariant complement in Z(V)")
    rest = invariant_complement(subspace_sum(d, a_space), v.phi)
    if rest is None:
        raise InvariantComplementNotFound("V' ⊕ A has no invariant complement in V")
    t_space = subspace_sum(d, rest)
    t_alg, _ = subalgebra(v, t_space, name=f"T({v.name})")
    a_alg, _ = subalgebra(v, a_space, name=f"A({v.name})")
    witness = LinearMapBetween(direct_sum(t_alg, a_alg), v,
                               t_space.inclusion().hstack(a_space.inclusion()))
    if not is_abelian(a_alg) or not (a_space <= z):
        raise FactorSetError("abelian part is not central")
    if not is_stem(t_alg):
        raise FactorSetError("stem part is not stem")
    if not verify_isomorphism(witness):
        raise FactorSetError("decomposition witness is not an isomorphism")
    return StemDecomposition(t_alg, a_alg, witness, t_space, a_space)


def _abelian_isomorphism(a: HomLieAlgebra, b: HomLieAlgebra) -> Matrix | None:
    """Invertible g with g phi_a = phi_b g, tried on small combinations of the solution space."""
    n = a.dim
    if n != b.dim or charpoly(a.phi) != charpoly(b.phi):
        return None
    if n == 0:
        return Matrix.zeros(0, 0)
    rows = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[k * n + i] += a.phi[k, j]
                row[j * n + k] -= b.phi[i, k]
            rows.append(row)
    sols = kernel(Matrix.from_rows(rows, n * n)).vectors()
    mats = [Matrix.from_columns([x[j * n:(j + 1) * n] for j in range(n)], n) for x in sols]
    for coeffs in product(range(-2, 3), repeat=len(mats)):
        g = Matrix.zeros(n, n)
        for t, mt in zip(coeffs, mats):
            if t:
                g = g + mt.scale(t)
        if g.is_invertible():
            return g
    return None


def same_dim_isoclinic_iff_isomorphic(v: HomLieAlgebra, w: HomLieAlgebra,
                                      p: IsoclinismPair) -> LinearMapBetween:
    """Isomorphism v -> w for isoclinic regular algebras of equal dimension.

    Raises PipelineError at stage ``abelian parts`` when the abelian summands
    carry non-similar twists; such algebras are isoclinic but not isomorphic.
    """
    if v.dim != w.dim:
        raise PipelineError("preconditions", f"dimensions differ: {v.dim} != {w.dim}")
    stage = "preconditions"
    try:
        if not verify_isoclinism(p) or p.source != v or p.target != w:
            raise FactorSetError("pair does not verify between v and w")
        stage = "stem decomposition"
        dv, dw = stem_decompose(v), stem_decompose(w)
        stage = "isoclinism of stem parts"
        to_v = dv.isoclinism()                                   # T_v ~ v
        to_w = dw.isoclinism()                                   # T_w ~ w
        p_t = compose_pairs(invert_pair(to_w), compose_pairs(p, to_v))
        if not p_t.verified:
            raise FactorSetError("stem parts are not isoclinic through p")
        stage = "stem isomorphism"
        g_t = stem_isoclinic_iff_isomorphic(dv.t, dw.t, p_t)
        stage = "abelian parts"
        g_a = _abelian_isomorphism(dv.a, dw.a)
        if g_a is None:
            raise FactorSetError(
                "abelian summands have non-similar twists; the algebras are isoclinic "
                "but not isomorphic")
        stage = "assemble"
        block = LinearMapBetween(dv.witness.domain, dw.witness.domain, block_diag(g_t.m, g_a))
        f = dw.witness.after(block).after(dv.witness.inverse())
        f = LinearMapBetween(v, w, f.m)
        if not verify_isomorphism(f):
            raise FactorSetError("assembled map is not an isomorphism")
        return f
    except PipelineError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise PipelineError(stage, str(exc)) from exc
