"""Backend equivalence and correctness of the integer elimination kernels."""

import importlib
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strathodge import _kernels
from strathodge._kernels import ratref_py

BACKENDS = [ratref_py]
_compiled = None
try:
    _compiled = importlib.import_module("strathodge._kernels._ratref")
    BACKENDS.append(_compiled)
except ImportError:
    pass


def dense_rref_oracle(dense, ncols):
    """Plain fraction-matrix RREF, no shared code with the kernels."""
    A = [[Fraction(x) for x in row] for row in dense]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][c]
        A[r] = [x / lead for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return pivots, [row for row in A[:r]]


def to_rows(dense):
    rows = []
    for drow in dense:
        cols = [j for j, x in enumerate(drow) if x]
        rows.append((cols, [drow[j] for j in cols]))
    return rows


def to_dense(pivrows, ncols, normalize=True):
    out = []
    for cols, vals in pivrows:
        row = [Fraction(0)] * ncols
        lead = Fraction(vals[0]) if normalize else Fraction(1)
        for c, v in zip(cols, vals):
            row[c] = Fraction(v) / lead
        out.append(row)
    return out


matrices = st.integers(1, 6).flatmap(
    lambda nc: st.lists(
        st.lists(st.integers(-9, 9), min_size=nc, max_size=nc), min_size=1, max_size=8
    )
)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
@given(dense=matrices)
@settings(max_examples=120, deadline=None)
def test_echelon_matches_dense_rref(backend, dense):
    ncols = len(dense[0])
    pivcols, pivrows = backend.echelon(to_rows(dense), ncols)
    reduced = backend.back_substitute(pivcols, pivrows)
    expect_pivots, expect_rows = dense_rref_oracle(dense, ncols)
    assert sorted(pivcols) == expect_pivots
    got = to_dense(
        [r for _, r in sorted(zip(pivcols, reduced))], ncols
    )
    assert got == expect_rows


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_reduce_row_gcd_and_sign(backend):
    cols, vals = backend.reduce_row([0, 2, 5], [-6, -9, -3])
    assert cols == [0, 2, 5]
    assert vals == [2, 3, 1]
    assert backend.reduce_row([], []) == ([], [])


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_row_combine_eliminates_lead(backend):
    # p*row - a*pivot with row = 3x0 + x3, pivot = 2x0 + 5x1
    cols, vals = backend.row_combine([0, 3], [3, 1], [0, 1], [2, 5], 3, 2)
    assert 0 not in cols
    # 2*(3,0,0,1) - 3*(2,5,0,0) = (0,-15,0,2), then lead made positive
    assert cols == [1, 3] and vals == [15, -2]


@pytest.mark.skipif(_compiled is None, reason="compiled backend not built")
@given(dense=matrices)
@settings(max_examples=120, deadline=None)
def test_backends_agree(dense):
    ncols = len(dense[0])
    out = []
    for backend in (ratref_py, _compiled):
        pivcols, pivrows = backend.echelon(to_rows(dense), ncols)
        reduced = backend.back_substitute(pivcols, pivrows)
        out.append((pivcols, reduced))
    assert out[0] == out[1]


def test_selected_backend_exports():
    assert _kernels.BACKEND in {"python", "c"}
    for name in ("echelon", "back_substitute", "reduce_row", "row_combine"):
        assert callable(getattr(_kernels, name))
