from fractions import Fraction

import pytest

from circpers.field import (
    GF2,
    QQ,
    FieldError,
    JordanBlock,
    Matrix,
    PrimeField,
    char_poly,
    companion_matrix,
    complete_to_basis,
    inverse,
    jordan_decomposition,
    kernel_basis,
    parse_field,
    poly_eval_matrix,
    poly_mul,
    rank,
    solve,
)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("zp:5") == PrimeField(5)
    with pytest.raises(FieldError):
        parse_field("zp:6")
    with pytest.raises(FieldError):
        parse_field("r")


def test_prime_field_arithmetic():
    F = PrimeField(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.from_int(-1) == 6


def test_rank_pinned():
    M = Matrix.from_int_rows(QQ, [[1, 2], [2, 4]])
    assert rank(M) == 1


def test_kernel_pinned_gf2():
    M = Matrix.from_int_rows(GF2, [[1, 1, 0]])
    K = kernel_basis(M)
    assert K.cols == 2
    z = GF2.zero
    for j in range(K.cols):
        assert M.apply(K.column(j)) == (z,)
    assert rank(K) == 2


def test_solve_pinned():
    M = Matrix.from_int_rows(QQ, [[2], [4]])
    x = solve(M, (Fraction(1), Fraction(2)))
    assert x == (Fraction(1, 2),)
    assert solve(M, (Fraction(1), Fraction(3))) is None


def test_inverse_roundtrip():
    M = Matrix.from_int_rows(QQ, [[1, 2], [3, 5]])
    Minv = inverse(M)
    assert M.mul(Minv) == Matrix.identity(QQ, 2)


def test_complete_to_basis():
    B = complete_to_basis([(Fraction(1), Fraction(1), Fraction(0))], QQ, 3)
    assert rank(B) == 3
    assert B.column(0) == (Fraction(1), Fraction(1), Fraction(0))


def test_char_poly_companion():
    # char poly of the companion matrix of p is p itself
    p = tuple(Fraction(c) for c in (2, -3, 0, 1))  # x^3 - 3x + 2
    C = companion_matrix(QQ, p)
    assert char_poly(C) == p
    # Cayley-Hamilton
    assert poly_eval_matrix(QQ, p, C).is_zero()


def test_char_poly_diag():
    M = Matrix.from_int_rows(QQ, [[2, 0], [0, 3]])
    # (x-2)(x-3) = x^2 - 5x + 6
    assert char_poly(M) == (Fraction(6), Fraction(-5), Fraction(1))


def test_jordan_pinned_mixed():
    M = Matrix.from_int_rows(QQ, [[3, 0, 0], [0, 1, 0], [0, 3, 1]])
    blocks = jordan_decomposition(M)
    x_minus_3 = (Fraction(-3), Fraction(1))
    x_minus_1 = (Fraction(-1), Fraction(1))
    assert blocks == {JordanBlock(x_minus_3, 1): 1, JordanBlock(x_minus_1, 2): 1}


def test_jordan_nonsplit_rotation():
    M = Matrix.from_int_rows(QQ, [[0, 1], [-1, 0]])
    blocks = jordan_decomposition(M)
    x2_plus_1 = (Fraction(1), Fraction(0), Fraction(1))
    assert blocks == {JordanBlock(x2_plus_1, 1): 1}
    (b,) = blocks
    assert not b.split


def test_jordan_same_matrix_over_z5():
    F = PrimeField(5)
    M = Matrix.from_int_rows(F, [[3, 0, 0], [0, 1, 0], [0, 3, 1]])
    blocks = jordan_decomposition(M)
    assert blocks == {JordanBlock((2, 1), 1): 1, JordanBlock((4, 1), 2): 1}


def test_jordan_rejects_singular():
    M = Matrix.from_int_rows(QQ, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        jordan_decomposition(M)


def test_jordan_big_nilpotent_plus_identity():
    # I + N with one 4-chain: single block (x-1, 4)
    rows = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    M = Matrix.from_int_rows(QQ, rows)
    blocks = jordan_decomposition(M)
    assert blocks == {JordanBlock((Fraction(-1), Fraction(1)), 4): 1}


def test_poly_mul():
    F = QQ
    a = (Fraction(1), Fraction(1))  # 1 + x
    b = (Fraction(-1), Fraction(1))  # -1 + x
    assert poly_mul(F, a, b) == (Fraction(-1), Fraction(0), Fraction(1))


def test_kernel_pivot_last_same_space():
    M = Matrix.from_int_rows(QQ, [[1, 2, 3], [2, 4, 6]])
    K1 = kernel_basis(M, pivot="first")
    K2 = kernel_basis(M, pivot="last")
    assert K1.cols == K2.cols == 2
    # same span: stacking does not raise the rank
    assert rank(K1.hstack(K2)) == 2


def test_zero_by_n_matrices():
    M = Matrix.zeros(QQ, 0, 3)
    assert rank(M) == 0
    assert kernel_basis(M).cols == 3
    N = Matrix.zeros(QQ, 3, 0)
    assert rank(N) == 0
    assert kernel_basis(N).cols == 0
    assert M.mul(N).rows == 0
