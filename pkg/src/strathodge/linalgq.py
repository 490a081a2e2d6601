"""Exact rational linear algebra on top of the elimination kernel.

Matrices are lists of rows of :class:`fractions.Fraction`; vectors are
lists of Fractions.  Everything here is deterministic: ranks, reduced
echelon forms and kernel bases depend only on the input values, never on
float behaviour or iteration order, which is what makes canonical
cohomology bases reproducible across runs and platforms.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _kernels

Vector = list[Fraction]
Matrix = list[list[Fraction]]
IntRow = tuple[list[int], list[int]]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(n: int) -> Vector:
    return [Fraction(0)] * n


def eye(n: int) -> Matrix:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_vec(A: Matrix, v: Sequence) -> Vector:
    return [sum((frac(a) * frac(x) for a, x in zip(row, v)), Fraction(0)) for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B)) if B else []
    return [[sum((frac(a) * frac(b) for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def dense_to_int_rows(A: Iterable[Sequence]) -> list[IntRow]:
    """Scale each row to integers (row scaling preserves the row space)."""
    rows = []
    for row in A:
        fr = [frac(x) for x in row]
        mult = lcm(*(f.denominator for f in fr)) if fr else 1
        cols = []
        vals = []
        for j, f in enumerate(fr):
            if f:
                cols.append(j)
                vals.append(int(f * mult))
        rows.append((cols, vals))
    return rows


def int_rows_to_dense(rows: Sequence[IntRow], ncols: int, divide_lead: bool = False) -> Matrix:
    out = []
    for cols, vals in rows:
        den = vals[0] if divide_lead and vals else 1
        v = zeros(ncols)
        for c, x in zip(cols, vals):
            v[c] = Fraction(x, den)
        out.append(v)
    return out


def rank_int_rows(rows: Sequence[IntRow]) -> int:
    pivcols, _ = _kernels.echelon(rows, 0)
    return len(pivcols)


class SparseRref:
    """A canonical reduced-echelon basis held as gcd-reduced integer rows.

    Row ``i`` has its leading (positive) entry at ``pivcols[i]`` and zeros
    at every other pivot column; dividing by the lead recovers the unique
    rational RREF of the row space.
    """

    def __init__(self, pivcols: list[int], rows: list[IntRow], ncols: int):
        self.pivcols = pivcols
        self.rows = rows
        self.ncols = ncols
        self.pivmap = {c: i for i, c in enumerate(pivcols)}

    @property
    def rank(self) -> int:
        return len(self.pivcols)

    def reduce(self, row: IntRow) -> IntRow:
        """Eliminate every pivot-column entry of ``row`` (a residue mod the span).

        The residue is canonical only up to positive scaling; use
        :func:`reduce_dense_by_sparse` when exact rational values matter.
        """
        cols, vals = list(row[0]), list(row[1])
        i = 0
        while i < len(cols):
            if cols[i] in self.pivmap:
                prow = self.rows[self.pivmap[cols[i]]]
                # the merge leaves positions before i untouched and drops cols[i]
                cols, vals = _kernels.row_combine(cols, vals, prow[0], prow[1], vals[i], prow[1][0])
            else:
                i += 1
        return cols, vals

    def contains(self, row: IntRow) -> bool:
        return not self.reduce(row)[0]

    def dense(self) -> Matrix:
        return int_rows_to_dense(self.rows, self.ncols, divide_lead=True)


def sparse_rref(rows: Sequence[IntRow], ncols: int) -> SparseRref:
    pivcols, pivrows = _kernels.echelon(rows, ncols)
    reduced = _kernels.back_substitute(pivcols, pivrows)
    return SparseRref(pivcols, reduced, ncols)


def sparse_nullspace(rows: Sequence[IntRow], ncols: int) -> SparseRref:
    """Canonical basis of the right kernel, computed without densifying."""
    R = sparse_rref(rows, ncols)
    by_col: dict[int, list[tuple[int, int, int]]] = {}
    for i, (cs, vs) in enumerate(R.rows):
        lead = vs[0]
        for c, v in zip(cs[1:], vs[1:]):
            by_col.setdefault(c, []).append((R.pivcols[i], v, lead))
    kernel_rows: list[IntRow] = []
    pivset = set(R.pivcols)
    for f in range(ncols):
        if f in pivset:
            continue
        touching = by_col.get(f, [])
        scale = lcm(*(lead for _, _, lead in touching)) if touching else 1
        entries = [(f, scale)] + [(p, -(scale // lead) * v) for p, v, lead in touching]
        entries.sort()
        kernel_rows.append(_kernels.reduce_row([c for c, _ in entries], [v for _, v in entries]))
    return sparse_rref(kernel_rows, ncols)


def sparse_span(rows: Sequence[IntRow], ncols: int) -> SparseRref:
    return sparse_rref(rows, ncols)


def transpose_int_rows(rows: Sequence[IntRow], ncols: int) -> list[IntRow]:
    cols: dict[int, list[tuple[int, int]]] = {}
    for r, (cs, vs) in enumerate(rows):
        for c, v in zip(cs, vs):
            cols.setdefault(c, []).append((r, v))
    return [
        ([r for r, _ in cols[c]], [v for _, v in cols[c]]) if c in cols else ([], [])
        for c in range(ncols)
    ]


def sparse_quotient(ker: SparseRref, im: SparseRref) -> SparseRref:
    """Canonical representatives of ker modulo im (im contained in ker)."""
    residues = [im.reduce(r) for r in ker.rows]
    residues = [r for r in residues if r[0]]
    return sparse_rref(residues, ker.ncols)


def vector_to_int_row(v: Sequence) -> IntRow:
    fr = [frac(x) for x in v]
    mult = lcm(*(f.denominator for f in fr)) if fr else 1
    cols = []
    vals = []
    for j, f in enumerate(fr):
        if f:
            cols.append(j)
            vals.append(int(f * mult))
    return cols, vals


def matrix_to_int_rows(A: Matrix) -> list[IntRow]:
    """Clear denominators with one scalar for the whole matrix.

    Unlike per-row scaling this preserves A as a linear map up to a global
    constant, so the column space of the result matches the column space
    of A.
    """
    dens = [frac(x).denominator for row in A for x in row]
    mult = lcm(*dens) if dens else 1
    out = []
    for row in A:
        cols = []
        vals = []
        for j, x in enumerate(row):
            f = frac(x)
            if f:
                cols.append(j)
                vals.append(int(f * mult))
        out.append((cols, vals))
    return out


def coordinates_in_rref(R: SparseRref, v: Sequence) -> list[Fraction] | None:
    """Coordinates of v in the row basis of R, or None if v lies outside.

    Coordinates are taken with respect to the stored integer rows.  RREF
    rows vanish at each other's pivot columns, so the coefficient of row i
    is v[pivot_i] divided by the lead entry, read off before any
    subtraction.
    """
    rest = [frac(x) for x in v]
    coords = []
    for cols, vals in R.rows:
        p = cols[0]
        c = rest[p] / vals[0]
        coords.append(c)
        if c:
            for j, a in zip(cols, vals):
                rest[j] -= c * a
    if any(rest):
        return None
    return coords


def reduce_dense_by_sparse(R: SparseRref, v: Sequence) -> Vector:
    """Exact rational residue of ``v`` modulo the span of an RREF basis.

    One pass suffices: an RREF row is zero at every other pivot column, so
    eliminating one pivot never reintroduces another.
    """
    r = [frac(x) for x in v]
    for (cs, vs), p in zip(R.rows, R.pivcols):
        c = r[p]
        if c:
            f = c / vs[0]
            for cc, vv in zip(cs, vs):
                r[cc] -= f * vv
    return r


def rank(A: Matrix) -> int:
    return rank_int_rows(dense_to_int_rows(A))


def rref_int_rows(rows: Sequence[IntRow], ncols: int) -> tuple[list[int], Matrix]:
    """Canonical reduced echelon form over the rationals.

    Returns the pivot columns and dense rows with leading entry 1.
    """
    pivcols, pivrows = _kernels.echelon(rows, ncols)
    reduced = _kernels.back_substitute(pivcols, pivrows)
    return pivcols, int_rows_to_dense(reduced, ncols, divide_lead=True)


def rref(A: Matrix, ncols: int | None = None) -> tuple[list[int], Matrix]:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return rref_int_rows(dense_to_int_rows(A), ncols)


def nullspace_int_rows(rows: Sequence[IntRow], ncols: int) -> Matrix:
    """Canonical basis (RREF rows) of the right kernel."""
    pivcols, rrows = rref_int_rows(rows, ncols)
    pivset = set(pivcols)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for i, p in enumerate(pivcols):
            v[p] = -rrows[i][f]
        basis.append(v)
    if not basis:
        return []
    _, canon = rref(basis, ncols)
    return canon


def nullspace(A: Matrix, ncols: int | None = None) -> Matrix:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return nullspace_int_rows(dense_to_int_rows(A), ncols)


def subspace_rref(vectors: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Canonical basis of the span of ``vectors`` (zero space gives [])."""
    vecs = [[frac(x) for x in v] for v in vectors]
    if not vecs:
        return []
    if ncols is None:
        ncols = len(vecs[0])
    _, rows = rref(vecs, ncols)
    return rows


def subspace_reduce(rref_rows: Matrix, v: Sequence) -> Vector:
    """Residue of ``v`` after eliminating the pivots of an RREF basis."""
    r = [frac(x) for x in v]
    for row in rref_rows:
        p = next(j for j, x in enumerate(row) if x)
        c = r[p]
        if c:
            r = [a - c * b for a, b in zip(r, row)]
    return r


def subspace_contains(rref_rows: Matrix, v: Sequence) -> bool:
    return not any(subspace_reduce(rref_rows, v))


def quotient_basis(ker_rref: Matrix, im_rref: Matrix) -> Matrix:
    """Canonical representatives of kernel modulo image.

    The image must be contained in the kernel.  Reducing each kernel basis
    vector modulo the image zeroes it at every image pivot column, so the
    span of the residues meets the image only in 0; its RREF is the
    canonical complement basis.
    """
    residues = [subspace_reduce(im_rref, v) for v in ker_rref]
    residues = [r for r in residues if any(r)]
    if not residues:
        return []
    _, rows = rref(residues, len(ker_rref[0]) if ker_rref else 0)
    return rows


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of ``A x = b`` or None if inconsistent."""
    if not A:
        return None if any(frac(x) for x in b) else []
    n = len(A[0])
    aug = [list(row) + [frac(bb)] for row, bb in zip(A, b)]
    pivcols, rows = rref(aug, n + 1)
    if n in pivcols:
        return None
    x = zeros(n)
    for p, row in zip(pivcols, rows):
        x[p] = row[n]
    return x


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + ident_row for row, ident_row in zip(A, eye(n))]
    pivcols, rows = rref(aug, 2 * n)
    if pivcols[:n] != list(range(n)) or len(pivcols) != n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def congruent_diagonalize(Q: Matrix) -> tuple[Matrix, Vector]:
    """Exact congruence ``P^T Q P = diag(d)`` for symmetric rational Q."""
    n = len(Q)
    A = [[frac(x) for x in row] for row in Q]
    P = eye(n)

    def col_op(dst, src, f):
        # column_dst += f * column_src, applied to A on both sides and to P
        for r in range(n):
            A[r][dst] += f * A[r][src]
        for r in range(n):
            A[dst][r] += f * A[src][r]
        for r in range(n):
            P[r][dst] += f * P[r][src]

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(n):
            A[i][r], A[j][r] = A[j][r], A[i][r]
        for r in range(n):
            P[r][i], P[r][j] = P[r][j], P[r][i]

    for i in range(n):
        if A[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if swap is not None:
                col_swap(i, swap)
            else:
                mix = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if mix is not None:
                    col_op(i, mix, Fraction(1))
        if A[i][i] == 0:
            continue
        for j in range(i + 1, n):
            if A[i][j] != 0:
                col_op(j, i, -A[i][j] / A[i][i])
    return P, [A[i][i] for i in range(n)]


def exact_signature(Q: Matrix) -> int:
    """Signature of a symmetric rational form via congruence diagonalization."""
    _, diag = congruent_diagonalize(Q)
    return sum(1 for d in diag if d > 0) - sum(1 for d in diag if d < 0)
