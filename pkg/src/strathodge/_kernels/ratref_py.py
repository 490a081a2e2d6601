"""Sparse integer row elimination, pure Python reference implementation.

Rows are pairs ``(cols, vals)`` of parallel lists: ``cols`` strictly
increasing column indices, ``vals`` the nonzero integer entries.  All
arithmetic is exact; every produced row is gcd-reduced with a positive
leading entry, so the rational reduced row echelon form of the input row
space is recovered by dividing each output row by its leading value.

The compiled twin in ``_ratref.pyx`` must stay behaviourally identical;
``tests/test_kernels.py`` cross-checks the two on random matrices.
"""

from math import gcd

BACKEND = "python"


def reduce_row(cols, vals):
    """Divide a row by the gcd of its entries and make the lead positive."""
    if not vals:
        return cols, vals
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            break
    if vals[0] < 0:
        g = -g
    if g != 1:
        vals = [v // g for v in vals]
    return cols, vals


def row_combine(cols, vals, pcols, pvals, a, p):
    """Return ``p*row - a*pivot`` as a reduced row.

    ``p`` is the pivot's entry at its leading column and ``a`` the row's
    entry at that same column, so the leading column cancels exactly.
    """
    out_c = []
    out_v = []
    i = 0
    j = 0
    n = len(cols)
    m = len(pcols)
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
    """Row echelon form of the span of ``rows``.

    Returns ``(pivcols, pivrows)`` sorted by pivot column.  Dependent rows
    vanish during reduction and are dropped.  The result depends only on
    the row space, not on the input order, because the subsequent
    back-substitution step produces the unique reduced echelon form.
    """
    pivots = {}
    for cols, vals in rows:
        cols = list(cols)
        vals = list(vals)
        while cols:
            lead = cols[0]
            piv = pivots.get(lead)
            if piv is None:
                cols, vals = reduce_row(cols, vals)
                pivots[lead] = (cols, vals)
                break
            pcols, pvals = piv
            cols, vals = row_combine(cols, vals, pcols, pvals, vals[0], pvals[0])
    pivcols = sorted(pivots)
    return pivcols, [pivots[c] for c in pivcols]


def back_substitute(pivcols, pivrows):
    """Clear every pivot column above its pivot row (integer RREF)."""
    from bisect import bisect_left

    k = len(pivcols)
    rows = [(list(c), list(v)) for c, v in pivrows]
    for i in range(k - 2, -1, -1):
        cols, vals = rows[i]
        for j in range(i + 1, k):
            c = pivcols[j]
            pos = bisect_left(cols, c)
            if pos < len(cols) and cols[pos] == c:
                pcols, pvals = rows[j]
                cols, vals = row_combine(cols, vals, pcols, pvals, vals[pos], pvals[0])
        rows[i] = (cols, vals)
    return rows
