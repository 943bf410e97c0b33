import oracles
import pytest

from homlie.algebra import (
    abelian,
    center,
    derived_subalgebra,
    direct_sum,
    is_stem,
    quotient,
)
from homlie.checks import replace_verified
from homlie.linalg import Matrix, Subspace, subspace_intersect
from homlie.maps import LinearMapBetween
from homlie.morphisms import (
    IsoclinismError,
    KernelMeetsDerived,
    NotAMorphism,
    NotRegular,
    NotSurjective,
    Verdict,
    bounded_isoclinism_search,
    bounded_isomorphism_search,
    check_compatibility,
    compose_pairs,
    enumerate_isomorphisms,
    identity_pair,
    invert_pair,
    isoclinism_abelian_sum,
    isoclinism_from_epimorphism,
    isoclinism_from_quotient,
    make_pair,
    verify_isoclinism,
    verify_isomorphism,
    verify_morphism,
)


def test_verify_morphism_examples(catalog, ins, v):
    for e in catalog.values():
        assert verify_morphism(LinearMapBetween.identity(e.algebra))
    _fs, theta = ins.extracted["W-ex310"]
    assert verify_morphism(theta)
    assert verify_morphism(LinearMapBetween(v, v, v.phi))


def test_verify_isomorphism_examples(v, w, ins):
    assert verify_isomorphism(LinearMapBetween.identity(v))
    assert not verify_isomorphism(LinearMapBetween(v, w, Matrix.from_rows(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]])))
    _, theta = ins.extracted["W-ex310"]
    assert verify_isomorphism(theta)


def test_shape_mismatch_is_rejected(v, w):
    with pytest.raises(ValueError):
        LinearMapBetween(v, w, Matrix.identity(3))


def test_isomorphisms_preserve_profiles(catalog):
    for e in catalog.values():
        a = e.algebra
        for f in enumerate_isomorphisms(a, a, 1):
            assert verify_isomorphism(f)
            assert oracles.isomorphism_ok(oracles.as_tensor(a), oracles.as_rows(a.phi),
                                          oracles.as_tensor(a), oracles.as_rows(a.phi), f.m)
            break
    w, s = catalog["W-ex310"].algebra, catalog["V-plus-abelian1"].algebra
    f = bounded_isomorphism_search(w, s, 1).witness
    for fn in (lambda x: center(x).dim, lambda x: derived_subalgebra(x).dim, is_stem):
        assert fn(f.domain) == fn(f.codomain)


def test_example_pair(ins):
    p = ins.example_pair
    assert verify_isoclinism(p)
    assert oracles.isoclinism_ok(p.source, p.target, p.alpha.m, p.beta.m)
    broken = make_pair(p.source, p.target, p.alpha.m, p.beta.m.with_entry(0, 0, -1))
    assert not verify_isoclinism(broken)
    assert not oracles.isoclinism_ok(p.source, p.target, p.alpha.m, broken.beta.m)


def test_isoclinism_needs_regular_algebras(v):
    bad = v.with_phi(Matrix.diag([1, 1, 0]))
    with pytest.raises(NotRegular):
        identity_pair(bad)


def test_isoclinism_is_an_equivalence(ins):
    p = replace_verified(ins.example_pair)
    assert verify_isoclinism(identity_pair(ins.v))
    back = invert_pair(p)
    assert back.verified
    loop = compose_pairs(back, p)
    assert loop.verified
    assert loop.alpha.m == Matrix.identity(3)
    q = isoclinism_abelian_sum(ins.w, abelian(2))
    assert compose_pairs(q, p).verified
    with pytest.raises(IsoclinismError):
        compose_pairs(p, q)


def test_abelian_sum_examples(v, w):
    p = isoclinism_abelian_sum(v, abelian(1))
    assert p.verified
    assert bounded_isomorphism_search(p.target, w, 1)
    assert isoclinism_abelian_sum(abelian(2), abelian(1)).verified
    p5 = isoclinism_abelian_sum(v, abelian(2))
    assert p5.verified and p5.target.dim == 5
    with pytest.raises(IsoclinismError):
        isoclinism_abelian_sum(v, w)


def test_from_quotient_examples(v, w):
    z = center(w)
    p = isoclinism_from_quotient(w, z)
    assert p.verified
    assert subspace_intersect(z, derived_subalgebra(w)).dim == 0
    assert bounded_isomorphism_search(p.target, v, 1)
    ident = isoclinism_from_quotient(v, Subspace.zero(3))
    assert ident.alpha.m == Matrix.identity(3) and ident.beta.m == Matrix.identity(2)
    with pytest.raises(KernelMeetsDerived):
        isoclinism_from_quotient(w, derived_subalgebra(w))
    with pytest.raises(IsoclinismError):
        isoclinism_from_quotient(v, Subspace.span([[1, 0, 0]], 3))


def test_from_epimorphism_examples(ins, v, w):
    assert isoclinism_from_epimorphism(ins.w_to_v).verified
    assert isoclinism_from_epimorphism(LinearMapBetween.identity(w)).verified
    _, kill_derived = quotient(w, derived_subalgebra(w))
    with pytest.raises(KernelMeetsDerived):
        isoclinism_from_epimorphism(kill_derived)
    # each precondition fails with its own error
    not_onto = LinearMapBetween(v, w, Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    with pytest.raises(NotSurjective):
        isoclinism_from_epimorphism(not_onto)
    bad = LinearMapBetween(w, v, Matrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]))
    with pytest.raises(NotAMorphism):
        isoclinism_from_epimorphism(bad)


def test_constructed_pairs_verify_against_oracle(ins):
    checked = 0
    for label, p in ins.constructed_pairs():
        assert p.verified, label
        assert check_compatibility(p), label
        if p.source.dim + p.target.dim <= 6:
            assert oracles.isoclinism_ok(p.source, p.target, p.alpha.m, p.beta.m), label
            checked += 1
    assert checked >= 30


def test_compatibility_examples(ins, v):
    assert check_compatibility(identity_pair(v))
    assert check_compatibility(replace_verified(ins.example_pair))
    assert check_compatibility(isoclinism_abelian_sum(v, abelian(1)))


def test_search_examples(v, w):
    r = bounded_isomorphism_search(v, v, 1)
    assert r.verdict is Verdict.FOUND and verify_isomorphism(r.witness)
    r = bounded_isomorphism_search(v, w, 1)
    assert r.verdict is Verdict.IMPOSSIBLE and "dimension" in r.reason
    r = bounded_isomorphism_search(w, direct_sum(v, abelian(1)), 1)
    assert r.verdict is Verdict.FOUND and verify_isomorphism(r.witness)


def test_search_gives_up_within_bound():
    a = abelian(1, [[1]])
    # twist 2 vs twist 2 with a scaling needed outside the bound: any nonzero scalar works here
    assert bounded_isomorphism_search(abelian(1, [[2]]), abelian(1, [[2]]), 1)
    b = abelian(2, [[1, 0], [0, 2]])
    c = abelian(2, [[1, 5], [0, 2]])
    # conjugating needs an entry of absolute value 5
    r = bounded_isomorphism_search(b, c, 1)
    assert r.verdict is Verdict.NOT_FOUND_WITHIN_BOUND
    assert bounded_isomorphism_search(b, c, 5)
    assert bounded_isomorphism_search(a, abelian(1, [[3]]), 1).verdict is Verdict.IMPOSSIBLE


def test_search_is_deterministic(catalog):
    a = catalog["heisenberg"].algebra
    b = catalog["heisenberg-permuted"].algebra
    assert bounded_isomorphism_search(a, b, 1).witness.m == bounded_isomorphism_search(a, b, 1).witness.m


def test_isoclinism_search(v, w, catalog):
    r = bounded_isoclinism_search(v, w, 1)
    assert r and verify_isoclinism(r.witness)
    r = bounded_isoclinism_search(catalog["heisenberg"].algebra, catalog["sl2"].algebra, 1)
    assert r.verdict is Verdict.IMPOSSIBLE


def test_every_enumerated_map_is_an_isomorphism(catalog):
    a = catalog["lie-2d"].algebra
    maps = list(enumerate_isomorphisms(a, a, 1))
    # e1 -> e1 + b e2, e2 -> d e2 with b in {-1,0,1}, d in {-1,1}
    assert len(maps) == 6
    for f in maps:
        assert verify_isomorphism(f)
