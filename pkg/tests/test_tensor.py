import random

import pytest

from src.ring import ParamSpace, Ratio
from src.tensor import Mat, embed, kron, mat_poly
from src.utils.errors import LegMismatchError

SPACE = ParamSpace(2)
A = SPACE.a
Q12 = SPACE.q(1, 2)


def R(x):
    return Ratio.of(SPACE, x)


def _random_mat(rng, legs=1):
    pool = [R(0), R(1), R(-2), R(A), R(1 - A), R(Q12), Ratio(SPACE.one(), 1 + A)]
    size = SPACE.n ** legs
    return Mat([[rng.choice(pool) for _ in range(size)] for _ in range(size)], SPACE.n, legs)


def _perm_matrix():
    """Flip on V (x) V for n=2: the a=1, q=1 specialization of P."""
    out = Mat.zeros(SPACE, 2)
    for i in (1, 2):
        for j in (1, 2):
            out[(i, j), (j, i)] = R(1)
    return out


# -------------------- Mat Tests --------------------
def test_shape_is_checked():
    with pytest.raises(ValueError):
        Mat([[R(1)]], 2, 1)


def test_unit_convention():
    M = Mat.unit(SPACE, 1, 2)
    assert M.entries[0, 1] == 1
    assert M.nonzero_count() == 1


def test_flat_is_big_endian():
    M = Mat.zeros(SPACE, 3)
    assert M.flat((1, 1, 2)) == 1
    assert M.flat((2, 1, 1)) == 4
    assert M.unflat(6) == (2, 2, 1)


def test_matmul_associative():
    rng = random.Random(3)
    A1, B1, C1 = (_random_mat(rng) for _ in range(3))
    assert (A1 @ B1) @ C1 == A1 @ (B1 @ C1)


def test_inverse():
    M = Mat([[R(1), R(Q12)], [R(1 - A), R(A)]], 2)
    assert M @ M.inverse() == Mat.identity(SPACE)


def test_json_round_trip():
    M = Mat([[R(1 - A), R(0)], [Ratio(SPACE.one(), 1 + A), R(Q12)]], 2)
    text = M.to_json()
    assert '"convention": "big-endian"' in text
    assert "(1-a)/(1)" in text
    assert Mat.from_json(SPACE, text) == M


# -------------------- kron Tests --------------------
def test_kron_identity():
    I = Mat.identity(SPACE)
    assert kron(I, I) == Mat.identity(SPACE, 2)


def test_kron_matrix_units():
    K = kron(Mat.unit(SPACE, 1, 1), Mat.unit(SPACE, 2, 2))
    assert K.nonzero_count() == 1
    assert K[(1, 2), (1, 2)] == 1


def test_kron_mixed_product():
    rng = random.Random(11)
    A1, B1, C1, D1 = (_random_mat(rng) for _ in range(4))
    assert kron(A1, B1) @ kron(C1, D1) == kron(A1 @ C1, B1 @ D1)


def test_kron_associative():
    rng = random.Random(5)
    A1, B1, C1 = (_random_mat(rng) for _ in range(3))
    assert kron(kron(A1, B1), C1) == kron(A1, kron(B1, C1))


def test_kron_dimension_mismatch():
    other = Mat.identity(ParamSpace(3))
    with pytest.raises(LegMismatchError):
        kron(Mat.identity(SPACE), other)


# -------------------- embed Tests --------------------
def test_embed_adjacent_legs():
    rng = random.Random(2)
    M = _random_mat(rng, legs=2)
    assert embed(M, (1, 2), 2) == M
    assert embed(M, (1, 2), 3) == kron(M, Mat.identity(SPACE))
    assert embed(M, (2, 3), 3) == kron(Mat.identity(SPACE), M)


def test_embed_identity():
    assert embed(Mat.identity(SPACE, 2), (1, 3), 3) == Mat.identity(SPACE, 3)


def test_embed_flip_swaps_outer_legs():
    F = embed(_perm_matrix(), (1, 3), 3)
    for i, j, k in F.multi_indices():
        assert F[(i, j, k), (k, j, i)] == 1
    assert F.nonzero_count() == 8


def test_embed_disjoint_legs_commute():
    rng = random.Random(9)
    M, S = _random_mat(rng, legs=2), _random_mat(rng, legs=2)
    left = embed(M, (1, 2), 4) @ embed(S, (3, 4), 4)
    right = embed(S, (3, 4), 4) @ embed(M, (1, 2), 4)
    assert left == right


def test_embed_position_errors():
    M = Mat.identity(SPACE, 2)
    with pytest.raises(ValueError):
        embed(M, (2, 1), 3)
    with pytest.raises(ValueError):
        embed(M, (1, 4), 3)
    with pytest.raises(LegMismatchError):
        embed(Mat.identity(SPACE), (1, 2), 2)


# -------------------- mat_poly Tests --------------------
def test_mat_poly_identity():
    assert mat_poly(Mat.identity(SPACE), [1]).is_zero()


def test_mat_poly_diagonal():
    M = Mat([[R(1), R(0)], [R(0), R(-A)]], 2)
    assert mat_poly(M, [1, -A]).is_zero()
    assert not mat_poly(M, [1]).is_zero()


def test_residual_size_measures():
    M = Mat([[R(0), R(1 + A + Q12)], [R(A), R(0)]], SPACE.n, 1)
    assert M.nonzero_count() == 2
    assert M.max_residual_terms() == 3
    assert Mat.identity(SPACE).max_residual_terms() == 1
