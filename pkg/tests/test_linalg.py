"""Exact linear algebra: own Smith form and ranks against flint, kernels, coordinates."""
from math import prod

import flint
import pytest
from hypothesis import given
from hypothesis import strategies as st

from picard import linalg


def int_matrices(max_rows=6, max_cols=6, bound=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@st.composite
def rank_deficient(draw):
    # product of two thin matrices: rank at most k
    r, c, k = draw(st.integers(1, 7)), draw(st.integers(1, 7)), draw(st.integers(0, 4))
    a = draw(st.lists(st.lists(st.integers(-4, 4), min_size=k, max_size=k), min_size=r, max_size=r))
    b = draw(st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=k, max_size=k))
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(c)] for i in range(r)]


def flint_rank(rows):
    return flint.fmpz_mat(rows).rank()


@given(st.one_of(int_matrices(), rank_deficient()))
def test_rank_oracles_agree(rows):
    want = flint_rank(rows)
    assert linalg.bareiss_rank(rows) == want
    assert linalg.rank_mod_p(rows) == want
    assert linalg.exact_rank(linalg.to_fmpq(rows)) == want
    assert linalg.rank_mod_prime(linalg.to_fmpq(rows)) == want


@given(st.one_of(int_matrices(), rank_deficient()))
def test_smith_form_against_flint(rows):
    own = linalg.smith_normal_form(rows)
    snf = flint.fmpz_mat(rows).snf()
    theirs = [abs(int(snf[i, i])) for i in range(min(snf.nrows(), snf.ncols())) if snf[i, i] != 0]
    assert own == theirs
    assert all(b % a == 0 for a, b in zip(own, own[1:]))


@given(st.one_of(int_matrices(), rank_deficient()))
def test_smith_transforms(rows):
    u, d, v = linalg.smith_with_transforms(rows)
    U, A, V, D = (flint.fmpz_mat(x) for x in (u, rows, v, d))
    assert U * A * V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1


def test_smith_square_determinant():
    rows = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert prod(linalg.smith_normal_form(rows)) == abs(flint.fmpz_mat(rows).det())
    assert linalg.smith_normal_form(rows) == [2, 6, 12]
    assert linalg.invariant_factors([[2, 0], [0, 1]]) == [2]


@given(st.one_of(int_matrices(), rank_deficient()))
def test_integer_kernel_is_saturated_basis(rows):
    n = len(rows[0])
    k = linalg.integer_kernel(rows, n)
    kdim = n - flint_rank(rows)
    assert all(len(r) == kdim for r in k)
    if kdim == 0:
        return
    K = flint.fmpz_mat(k)
    assert flint.fmpz_mat(rows) * K == flint.fmpz_mat(len(rows), kdim)
    # saturated: all Smith factors of the basis are 1
    assert linalg.smith_normal_form(k) == [1] * kdim


def test_saturate():
    cols = [[2, 0], [0, 3], [4, 6]]
    sat = linalg.saturate(cols)
    assert linalg.smith_normal_form(sat) == [1, 1]
    # the original columns have integral coordinates in the saturated basis
    basis = linalg.to_fmpq(sat)
    x = linalg.exact_coordinates(basis, linalg.pivot_rows(basis), linalg.to_fmpq(cols), integral=True)
    assert abs(flint.fmpz_mat([[int(v.p) for v in r] for r in x.tolist()]).det()) == 6
    with pytest.raises(ValueError):
        linalg.saturate([[1, 2], [2, 4]])


@given(st.one_of(int_matrices(), rank_deficient()))
def test_echelon_nullspace(rows):
    m = linalg.to_fmpq(rows)
    b, free = linalg.echelon_nullspace(m)
    assert b.ncols() == len(free) == m.ncols() - flint_rank(rows)
    if free:
        assert m * b == flint.fmpq_mat(m.nrows(), b.ncols())
        assert linalg.select_rows(b, free) == linalg.identity(len(free))


def test_exact_coordinates():
    basis = linalg.to_fmpq([[1, 0], [0, 1], [1, 1]])
    target = linalg.to_fmpq([[2], [3], [5]])
    x = linalg.exact_coordinates(basis, [0, 1], target, integral=True)
    assert x == linalg.to_fmpq([[2], [3]])
    with pytest.raises(ArithmeticError, match="saturation violated"):
        linalg.exact_coordinates(basis, [0, 1], linalg.to_fmpq([[2], [3], [6]]))
    half = linalg.to_fmpq([[2, 0], [0, 2], [2, 2]])
    with pytest.raises(ArithmeticError, match="non-integral"):
        linalg.exact_coordinates(half, [0, 1], target, integral=True)


def test_pivot_rows():
    basis = linalg.to_fmpq([[0, 0], [1, 0], [2, 0], [0, 1]])
    assert linalg.pivot_rows(basis) == [1, 3]
    with pytest.raises(ValueError):
        linalg.pivot_rows(linalg.to_fmpq([[1, 2], [2, 4]]))
