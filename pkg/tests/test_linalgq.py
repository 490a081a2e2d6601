"""Exact rational linear algebra, dense and sparse paths."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strathodge import linalgq

F = Fraction


def test_rref_canonical_under_row_shuffle():
    A = [[2, 4, 6], [1, 2, 4], [0, 0, 2]]
    p1, r1 = linalgq.rref([list(r) for r in A])
    p2, r2 = linalgq.rref([A[2], A[0], A[1]])
    assert p1 == p2 == [0, 2]
    assert r1 == r2


def test_nullspace_orthogonal_to_rows():
    A = [[1, 2, 3, 4], [0, 1, 1, 0]]
    N = linalgq.nullspace(A)
    assert len(N) == 2
    for v in N:
        for row in A:
            assert sum(F(a) * x for a, x in zip(row, v)) == 0


def test_solve_and_inverse_round_trip():
    A = [[F(2), F(1)], [F(1), F(1)]]
    x = linalgq.solve(A, [F(3), F(2)])
    assert x == [F(1), F(1)]
    Ainv = linalgq.inverse(A)
    assert linalgq.mat_mul(A, Ainv) == linalgq.eye(2)
    assert linalgq.solve([[F(1), F(1)], [F(1), F(1)]], [F(0), F(1)]) is None


def test_quotient_basis_dims():
    ker = linalgq.subspace_rref([[1, 0, 0], [0, 1, 0]])
    im = linalgq.subspace_rref([[1, 1, 0]])
    q = linalgq.quotient_basis(ker, im)
    assert len(q) == 1


def test_congruent_diagonalize_symmetric():
    Q = [[F(0), F(1)], [F(1), F(0)]]
    P, d = linalgq.congruent_diagonalize(Q)
    # P^T Q P must be diag(d)
    PtQP = linalgq.mat_mul(linalgq.transpose(P), linalgq.mat_mul(Q, P))
    for i in range(2):
        for j in range(2):
            assert PtQP[i][j] == (d[i] if i == j else 0)
    assert sorted(x > 0 for x in d) == [False, True]
    assert linalgq.exact_signature(Q) == 0


def test_exact_signature_definite():
    assert linalgq.exact_signature([[2, 0], [0, 3]]) == 2
    assert linalgq.exact_signature([[-1, 0], [0, -5]]) == -2
    assert linalgq.exact_signature([[1, 0], [0, -2]]) == 0


small_matrices = st.integers(1, 5).flatmap(
    lambda nc: st.lists(
        st.lists(st.integers(-6, 6), min_size=nc, max_size=nc), min_size=1, max_size=6
    )
)


@given(dense=small_matrices)
@settings(max_examples=80, deadline=None)
def test_sparse_rref_agrees_with_dense(dense):
    ncols = len(dense[0])
    rows = linalgq.dense_to_int_rows(dense)
    R = linalgq.sparse_rref(rows, ncols)
    pd, rd = linalgq.rref([[F(x) for x in row] for row in dense])
    assert sorted(R.pivcols) == pd
    assert R.dense() == rd


@given(dense=small_matrices)
@settings(max_examples=80, deadline=None)
def test_sparse_nullspace_is_kernel(dense):
    ncols = len(dense[0])
    rows = linalgq.dense_to_int_rows(dense)
    N = linalgq.sparse_nullspace(rows, ncols)
    assert N.rank == ncols - linalgq.sparse_rref(rows, ncols).rank
    for kcols, kvals in N.rows:
        v = [F(0)] * ncols
        for c, x in zip(kcols, kvals):
            v[c] = F(x)
        for row in dense:
            assert sum(F(a) * x for a, x in zip(row, v)) == 0


def test_sparse_reduce_and_contains():
    rows = linalgq.dense_to_int_rows([[1, 0, 1], [0, 1, 1]])
    R = linalgq.sparse_rref(rows, 3)
    assert R.contains(([0, 1, 2], [2, 3, 5]))
    assert not R.contains(([2], [1]))
    res_cols, res_vals = R.reduce(([0, 2], [1, 2]))
    # (1,0,2) - (1,0,1) = (0,0,1)
    assert res_cols == [2] and res_vals == [1]


def test_reduce_dense_by_sparse_is_linear():
    rows = linalgq.dense_to_int_rows([[1, 2, 0], [0, 0, 3]])
    R = linalgq.sparse_rref(rows, 3)
    u = [F(1), F(1), F(1)]
    v = [F(0), F(2), F(-1)]
    ru = linalgq.reduce_dense_by_sparse(R, u)
    rv = linalgq.reduce_dense_by_sparse(R, v)
    mix = [3 * a - 2 * b for a, b in zip(u, v)]
    rmix = linalgq.reduce_dense_by_sparse(R, mix)
    assert rmix == [3 * a - 2 * b for a, b in zip(ru, rv)]


def test_sparse_quotient_complement():
    ker = linalgq.sparse_rref(linalgq.dense_to_int_rows([[1, 0, 0], [0, 1, 0]]), 3)
    im = linalgq.sparse_rref(linalgq.dense_to_int_rows([[1, 1, 0]]), 3)
    q = linalgq.sparse_quotient(ker, im)
    assert q.rank == 1
    # the representative must be independent from the image
    joined = linalgq.sparse_rref(list(im.rows) + list(q.rows), 3)
    assert joined.rank == 2
