"""Random regular Hom-Lie algebras for property tests.

Instances come from Lie algebras in the catalog, twisted by a random
small-integer automorphism, optionally summed with a twisted abelian algebra.
Each family below writes down a parametrised automorphism group by hand;
:func:`~homlie.algebra.yau_twist` re-checks that the sample really is one.
"""

from __future__ import annotations

import random
from collections.abc import Callable

from .algebra import HomLieAlgebra, abelian, direct_sum, yau_twist
from .linalg import Matrix

SMALL = (-2, -1, 1, 2)


def _nonzero(rng: random.Random) -> int:
    return rng.choice(SMALL)


def invertible_integer_matrix(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> Matrix:
    while True:
        m = Matrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], n)
        if m.is_invertible():
            return m


def _lie_2d(rng):
    # e1 -> e1 + b e2, e2 -> d e2
    return Matrix.from_rows([[1, 0], [rng.randint(-2, 2), _nonzero(rng)]])


def _heisenberg(rng):
    # g on span{e1, e2}, e3 -> det(g) e3, plus central shifts of e1, e2
    g = invertible_integer_matrix(rng, 2, -1, 1)
    a, b = rng.randint(-2, 2), rng.randint(-2, 2)
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    return Matrix.from_rows([[g[0, 0], g[0, 1], 0], [g[1, 0], g[1, 1], 0], [a, b, det]])


def _w_lie(rng):
    # e1 -> e1 + x2 e2 + x3 e3 + s e4; G on span{e2, e3}; e4 -> l e4
    g = invertible_integer_matrix(rng, 2, -1, 1)
    x2, x3, s = (rng.randint(-1, 1) for _ in range(3))
    lam = _nonzero(rng)
    return Matrix.from_rows([
        [1, 0, 0, 0],
        [x2, g[0, 0], g[0, 1], 0],
        [x3, g[1, 0], g[1, 1], 0],
        [s, 0, 0, lam],
    ])


_SHEAR = Matrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]])


def _w_sheared(rng):
    # e2 -> e2 + e4 is an isomorphism W-lie -> W-sheared
    return _SHEAR @ _w_lie(rng) @ _SHEAR.inverse()


_SL2_GENERATORS = [
    Matrix.from_rows([[1, 1], [0, 1]]),
    Matrix.from_rows([[1, 0], [1, 1]]),
    Matrix.from_rows([[0, 1], [-1, 0]]),
    Matrix.from_rows([[2, 0], [0, 1]]),
]


def adjoint_sl2(g: Matrix) -> Matrix:
    """Matrix of X -> g X g^-1 on sl2 in the basis (h, e, f)."""
    basis = [Matrix.from_rows([[1, 0], [0, -1]]), Matrix.from_rows([[0, 1], [0, 0]]),
             Matrix.from_rows([[0, 0], [1, 0]])]
    gi = g.inverse()
    cols = []
    for x in basis:
        y = g @ x @ gi
        cols.append([(y[0, 0] - y[1, 1]) / 2, y[0, 1], y[1, 0]])
    return Matrix.from_columns(cols, 3)


def _sl2(rng):
    g = Matrix.identity(2)
    for _ in range(rng.randint(1, 3)):
        g = g @ rng.choice(_SL2_GENERATORS)
    return adjoint_sl2(g)


def _permuted(base_sampler, perm: Matrix):
    return lambda rng: perm @ base_sampler(rng) @ perm.inverse()


# heisenberg-permuted is heisenberg under e1 -> e2, e2 -> e3, e3 -> e1
_CYCLE = Matrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])

AUTOMORPHISM_SAMPLERS: dict[str, Callable[[random.Random], Matrix]] = {
    "lie-2d": _lie_2d,
    "heisenberg": _heisenberg,
    "heisenberg-permuted": _permuted(_heisenberg, _CYCLE),
    "sl2": _sl2,
    "W-lie": _w_lie,
    "W-sheared": _w_sheared,
}


def twisted_sample(rng: random.Random, lie_algebras: dict[str, HomLieAlgebra]) -> HomLieAlgebra:
    """One Yau twist of a randomly chosen catalog Lie algebra."""
    name = rng.choice(sorted(AUTOMORPHISM_SAMPLERS))
    auto = AUTOMORPHISM_SAMPLERS[name](rng)
    return yau_twist(lie_algebras[name], auto, name=f"{name}^tw")


def abelian_sample(rng: random.Random, max_dim: int = 2) -> HomLieAlgebra:
    n = rng.randint(1, max_dim)
    return abelian(n, invertible_integer_matrix(rng, n), name=f"abelian-{n}^tw")


def random_regular_algebra(rng: random.Random, lie_algebras: dict[str, HomLieAlgebra]) -> HomLieAlgebra:
    roll = rng.random()
    if roll < 0.6:
        return twisted_sample(rng, lie_algebras)
    if roll < 0.85:
        return direct_sum(twisted_sample(rng, lie_algebras), abelian_sample(rng))
    if roll < 0.95:
        return abelian_sample(rng, 3)
    a = twisted_sample(rng, lie_algebras)
    while a.dim > 3:
        a = twisted_sample(rng, lie_algebras)
    b = twisted_sample(rng, lie_algebras)
    while b.dim > 3:
        b = twisted_sample(rng, lie_algebras)
    return direct_sum(a, b)


def lie_algebras_from_catalog(catalog: dict) -> dict[str, HomLieAlgebra]:
    return {name: catalog[name].algebra for name in AUTOMORPHISM_SAMPLERS}


def generate(count: int, seed: int, catalog: dict) -> list[HomLieAlgebra]:
    rng = random.Random(seed)
    lie = lie_algebras_from_catalog(catalog)
    return [random_regular_algebra(rng, lie) for _ in range(count)]

