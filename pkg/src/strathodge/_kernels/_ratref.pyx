# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Sparse integer row elimination, compiled twin of ``ratref_py``.

Values stay arbitrary-precision Python ints; the speedup comes from typed
loop indices and list handling in the merge inner loop, which dominates
the rank / reduced-echelon computations on boundary matrices.
"""

from bisect import bisect_left
from math import gcd

BACKEND = "c"


cpdef tuple reduce_row(list cols, list vals):
    cdef Py_ssize_t i, n = len(vals)
    if n == 0:
        return cols, vals
    g = 0
    for i in range(n):
        g = gcd(g, vals[i])
        if g == 1:
            break
    if vals[0] < 0:
        g = -g
    if g != 1:
        for i in range(n):
            vals[i] = vals[i] // g
    return cols, vals


cpdef tuple row_combine(list cols, list vals, list pcols, list pvals, a, p):
    cdef list out_c = []
    cdef list out_v = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t n = len(cols), m = len(pcols)
    cdef Py_ssize_t ci, cj
    while i < n and j < m:
        ci = cols[i]
        cj = pcols[j]
        if ci == cj:
            v = p * vals[i] - a * pvals[j]
            if v != 0:
                out_c.append(ci)
                out_v.append(v)
            i += 1
            j += 1
        elif ci < cj:
            out_c.append(ci)
            out_v.append(p * vals[i])
            i += 1
        else:
            out_c.append(cj)
            out_v.append(-a * pvals[j])
            j += 1
    while i < n:
        out_c.append(cols[i])
        out_v.append(p * vals[i])
        i += 1
    while j < m:
        out_c.append(pcols[j])
        out_v.append(-a * pvals[j])
        j += 1
    return reduce_row(out_c, out_v)


def echelon(rows, ncols):
    cdef dict pivots = {}
    cdef list cols, vals
    cdef Py_ssize_t lead
    for row in rows:
        cols = list(row[0])
        vals = list(row[1])
        while cols:
            lead = cols[0]
            piv = pivots.get(lead)
            if piv is None:
                cols, vals = reduce_row(cols, vals)
                pivots[lead] = (cols, vals)
                break
            cols, vals = row_combine(cols, vals, piv[0], piv[1], vals[0], piv[1][0])
    pivcols = sorted(pivots)
    return pivcols, [pivots[c] for c in pivcols]


def back_substitute(pivcols, pivrows):
    cdef Py_ssize_t k = len(pivcols)
    cdef Py_ssize_t i, j, pos
    cdef list rows = [(list(r[0]), list(r[1])) for r in pivrows]
    cdef list cols, vals
    for i in range(k - 2, -1, -1):
        cols, vals = rows[i]
        for j in range(i + 1, k):
            c = pivcols[j]
            pos = bisect_left(cols, c)
            if pos < len(cols) and cols[pos] == c:
                pr = rows[j]
                cols, vals = row_combine(cols, vals, pr[0], pr[1], vals[pos], pr[1][0])
        rows[i] = (cols, vals)
    return rows
