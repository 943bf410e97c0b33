"""Counterexamples and limitations, each confirmed independently of the package code paths."""

import logging
from fractions import Fraction
from itertools import product

import oracles
import pytest
import sympy

from homlie.algebra import (
    HomLieAlgebra,
    abelian,
    center,
    is_ideal,
    is_regular,
    yau_twist,
)
from homlie.checks import center_not_ideal_example, unipotent_heisenberg
from homlie.factorset import (
    InvariantComplementNotFound,
    PipelineError,
    extract_factor_set,
    same_dim_isoclinic_iff_isomorphic,
)
from homlie.linalg import Matrix, Subspace, is_invariant
from homlie.morphisms import (
    Verdict,
    bounded_isoclinism_search,
    bounded_isomorphism_search,
)

log = logging.getLogger(__name__)


def test_equal_dimension_isoclinic_but_not_isomorphic():
    a, b = abelian(1, [[1]]), abelian(1, [[2]])
    # isoclinic: both quotients by the center and both derived algebras are zero
    assert oracles.isoclinism_ok(a, b, [], [])
    found = bounded_isoclinism_search(a, b, 1)
    assert found
    # not isomorphic: t * 1 = 2 * t forces t = 0
    t = sympy.Symbol("t")
    assert sympy.solve(sympy.Eq(t * 1, 2 * t), t) == [0]
    assert bounded_isomorphism_search(a, b, 3).verdict is Verdict.IMPOSSIBLE
    with pytest.raises(PipelineError) as err:
        same_dim_isoclinic_iff_isomorphic(a, b, found.witness)
    assert err.value.stage == "abelian parts"


def test_complement_of_center_need_not_be_invariant(w):
    # W of the running example: Z(W) = span{w4}; U = span{w1, w2 + w4, w3} is a complement
    u = [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]]
    z = [[0, 0, 0, 1]]
    assert len(oracles.rref_rows(u + z, 4)) == 4
    image = oracles.apply(w.phi, [0, 1, 0, 1])  # phi(w2 + w4) = w3 + w4
    assert image == [0, 0, 1, 1]
    assert not oracles.in_span(u, image, 4)
    assert not is_invariant(Subspace.span(u, 4), w.phi)


def test_unipotent_twist_has_no_invariant_complement(ins):
    a = unipotent_heisenberg(ins)
    c, phi = oracles.as_tensor(a), oracles.as_rows(a.phi)
    assert oracles.is_regular(c, phi)
    assert oracles.center_basis(c) == [[0, 0, 1]]
    # every complement of span{e3} is span{e1 + x e3, e2 + y e3}; phi(e1 + x e3) = e1 + (1 + x) e3
    x, y, s, t = sympy.symbols("x y s t")
    u1 = sympy.Matrix([1, 0, x])
    u2 = sympy.Matrix([0, 1, y])
    image = oracles.sym(phi) * u1
    eqs = list(image - s * u1 - t * u2)
    assert sympy.solve(eqs, [x, y, s, t], dict=True) == []
    with pytest.raises(InvariantComplementNotFound):
        extract_factor_set(a)


def test_center_can_fail_to_be_an_ideal_without_regularity():
    a = center_not_ideal_example()
    assert a is not None
    log.info("center is not an ideal for the Heisenberg bracket with phi rows %s", a.phi.tolist())
    c, phi = oracles.as_tensor(a), oracles.as_rows(a.phi)
    assert oracles.is_hom_lie(c, phi)
    assert not oracles.is_regular(c, phi)
    z = oracles.center_basis(c)
    assert any(not oracles.in_span(z, oracles.apply(phi, x), 3) for x in z)
    assert not is_ideal(a, center(a))


def test_center_is_an_ideal_for_every_regular_small_twist():
    heis = HomLieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1]})
    # every automorphism of the Heisenberg bracket with 0/1 entries gives a regular algebra
    count = 0
    for entries in product(range(2), repeat=9):
        phi = Matrix.from_rows([entries[0:3], entries[3:6], entries[6:9]])
        if not phi.is_invertible():
            continue
        try:
            a = yau_twist(heis, phi)
        except ValueError:
            continue
        assert is_regular(a) and is_ideal(a, center(a))
        count += 1
    assert count > 0


def test_twisting_the_example_bracket_itself_is_not_the_example(v):
    swap = Matrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    lie = v.with_phi(Matrix.identity(3))
    twisted = yau_twist(lie, swap)
    # swap of [v1, v2] = v2 is v3, so the result has [v1, v2] = v3 while the example has v2
    assert twisted.c[0][1] == (0, 0, 1)
    assert v.c[0][1] == (0, 1, 0)
    assert twisted != v
    # the Lie algebra behind the example is [v1, v2] = v3, [v1, v3] = v2
    behind = HomLieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1], (0, 2): [0, 1, 0]})
    assert yau_twist(behind, swap) == v
    assert oracles.is_hom_lie(oracles.as_tensor(behind), [[Fraction(int(i == j)) for j in range(3)]
                                                          for i in range(3)])
