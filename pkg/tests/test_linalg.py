import random

import pytest

from glk.cyclo import Cyclotomic, zeta
from glk.errors import DomainError
from glk.linalg import mat_mul, mat_vec, matrix_inverse, nullspace, rref


def rand_matrix(rng, m, nrows, ncols):
    return [
        [Cyclotomic(m, [rng.randrange(-4, 5) for _ in range(4)]) for _ in range(ncols)]
        for _ in range(nrows)
    ]


def test_rref_identity():
    one, zero = Cyclotomic.one(15), Cyclotomic.zero(15)
    rows = [[one * 2, zero], [one, one]]
    reduced, pivots = rref(rows)
    assert pivots == [0, 1]
    assert reduced == [[one, zero], [zero, one]]


def test_nullspace_vectors_annihilate():
    rng = random.Random(17)
    for _ in range(15):
        rows = rand_matrix(rng, 15, rng.randrange(1, 4), rng.randrange(1, 5))
        zero = Cyclotomic.zero(15)
        for v in nullspace(rows):
            assert all(c == zero for c in mat_vec(rows, v))


def test_nullspace_rank_nullity():
    rng = random.Random(19)
    for _ in range(15):
        nrows, ncols = rng.randrange(1, 4), rng.randrange(1, 5)
        rows = rand_matrix(rng, 15, nrows, ncols)
        _, pivots = rref(rows)
        assert len(pivots) + len(nullspace(rows)) == ncols


def test_nullspace_free_variable_normalization():
    # x + y = 0 has kernel vector (-1, 1) with the free variable set to 1
    one = Cyclotomic.one(3)
    ker = nullspace([[one, one]])
    assert ker == [[-one, one]]


def test_matrix_inverse_round_trip():
    rng = random.Random(23)
    one, zero = Cyclotomic.one(15), Cyclotomic.zero(15)
    eye = [[one, zero], [zero, one]]
    found = 0
    while found < 10:
        a = rand_matrix(rng, 15, 2, 2)
        try:
            inv = matrix_inverse(a)
        except DomainError:
            continue
        found += 1
        assert mat_mul(a, inv) == eye
        assert mat_mul(inv, a) == eye


def test_matrix_inverse_rejects_singular():
    one = Cyclotomic.one(15)
    with pytest.raises(DomainError):
        matrix_inverse([[one, one], [one, one]])
    with pytest.raises(DomainError):
        matrix_inverse([])


def test_deterministic_pivoting():
    z = zeta(15)
    rows = [[z, z**2, z + 1], [z**3, z, z**2]]
    assert rref(rows) == rref(rows)
    assert nullspace(rows) == nullspace(rows)
