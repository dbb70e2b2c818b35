from fractions import Fraction

import pytest

from psfwb.fixtures import fixture_by_slug
from psfwb.matrix import (
    Permutation,
    RatMatrix,
    dot,
    kernel_basis,
    matrix_times_col,
    rank,
    row_space_basis,
    row_times_matrix,
    rref,
    solve_linear,
)


def test_matrix_multiply_identity():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert a * RatMatrix.identity(2) == a
    assert RatMatrix.identity(2) * a == a


def test_word_length_matrix_power_reads_off_n():
    a = fixture_by_slug("word-length").build()
    m = a.matrix("a")
    assert m.pow(5)[0, 1] == 5
    assert m.pow(0) == RatMatrix.identity(2)


def test_pow_matches_repeated_multiplication(rng):
    rows = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
    m = RatMatrix.from_rows(rows)
    acc = RatMatrix.identity(3)
    for e in range(6):
        assert m.pow(e) == acc
        acc = acc * m


def test_kernel_of_identity_is_empty():
    assert kernel_basis(RatMatrix.identity(3)) == []


def test_kernel_vectors_annihilate(rng):
    rows = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(2)]
    m = RatMatrix.from_rows(rows)
    basis = kernel_basis(m)
    assert len(basis) + rank(m.entries) == 4
    for vec in basis:
        assert all(x == 0 for x in matrix_times_col(m, vec))


def test_rank_and_rref():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(rows) == 2
    reduced, pivots = rref(rows)
    assert pivots == [0, 1]
    assert len(reduced) == 2
    for r, c in enumerate(pivots):
        assert reduced[r][c] == 1


def test_row_space_basis_is_echelon_and_spans():
    m = RatMatrix.from_rows([[2, 4], [1, 2], [0, 1]])
    basis = row_space_basis(m)
    assert basis == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_solve_linear():
    rows = [[2, 1], [1, 3]]
    x = solve_linear(rows, (Fraction(5), Fraction(10)))
    assert matrix_times_col(RatMatrix.from_rows(rows), x) == (Fraction(5), Fraction(10))
    with pytest.raises(ValueError):
        solve_linear([[1, 1], [1, 1]], (Fraction(0), Fraction(1)))


def test_row_and_col_products():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert row_times_matrix((Fraction(1), Fraction(1)), m) == (4, 6)
    assert matrix_times_col(m, (Fraction(1), Fraction(1))) == (3, 7)
    assert dot((Fraction(2), Fraction(3)), (Fraction(4), Fraction(5))) == 23


def test_is_upper_triangular_and_diagonal():
    t = RatMatrix.from_rows([[1, 5], [0, 2]])
    assert t.is_upper_triangular()
    assert t.diagonal() == (1, 2)
    assert not RatMatrix.from_rows([[1, 0], [1, 1]]).is_upper_triangular()


def test_permutation():
    p = Permutation((2, 0, 1))
    assert p(0) == 2
    assert p.inverse()(2) == 0
    pm = p.matrix()
    assert pm * p.inverse().matrix() == RatMatrix.identity(3)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
