"""Finite simplicial complexes with exact rational cohomology.

Vertices are named strings ordered lexicographically; simplices are
tuples of vertex indices in increasing order, listed lexicographically
per degree.  That ordering convention, together with the deterministic
reduced-echelon routines in :mod:`strathodge.linalgq`, pins down one
canonical cocycle representative basis per degree, which the rest of the
package treats as *the* coordinate frame on cohomology.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalgq
from .errors import InputError, OrientabilityError, StructureError
from .linalgq import IntRow, Matrix, Vector


class SimplicialComplex:
    def __init__(self, vertices: Iterable[str], maximal_simplices: Iterable[Sequence[str]]):
        names = list(vertices)
        if len(set(names)) != len(names):
            raise InputError("duplicate vertex names")
        self.vertex_names: tuple[str, ...] = tuple(sorted(names))
        index = {v: i for i, v in enumerate(self.vertex_names)}
        faces: dict[int, set[tuple[int, ...]]] = {}
        for simpl in maximal_simplices:
            try:
                idx = tuple(sorted(index[v] for v in simpl))
            except KeyError as exc:
                raise InputError(f"simplex vertex {exc.args[0]!r} not in vertex list") from None
            if len(set(idx)) != len(idx):
                raise InputError(f"repeated vertex in simplex {list(simpl)!r}")
            for r in range(1, len(idx) + 1):
                faces.setdefault(r - 1, set()).update(combinations(idx, r))
        if not faces:
            raise StructureError("empty complex")
        self._simplices: dict[int, list[tuple[int, ...]]] = {
            k: sorted(s) for k, s in faces.items()
        }
        self._index: dict[int, dict[tuple[int, ...], int]] = {
            k: {s: i for i, s in enumerate(lst)} for k, lst in self._simplices.items()
        }
        self.dimension: int = max(self._simplices)

    def simplices(self, k: int) -> list[tuple[int, ...]]:
        return self._simplices.get(k, [])

    def simplex_index(self, k: int, simplex: tuple[int, ...]) -> int:
        return self._index[k][simplex]

    def n_simplices(self, k: int) -> int:
        return len(self._simplices.get(k, []))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.n_simplices(k) for k in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def simplex_names(self, k: int) -> list[tuple[str, ...]]:
        return [tuple(self.vertex_names[i] for i in s) for s in self.simplices(k)]


def coboundary_rows(K: SimplicialComplex, k: int) -> list[IntRow]:
    """Rows of the coboundary d_k, one per (k+1)-simplex over k-simplex columns.

    (d a)(s) = sum_i (-1)^i a(s with vertex i removed).
    """
    if k < 0 or k >= K.dimension:
        return []
    idx = K._index[k]
    rows: list[IntRow] = []
    for s in K.simplices(k + 1):
        entries = []
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            entries.append((idx[face], -1 if i % 2 else 1))
        entries.sort()
        rows.append(([c for c, _ in entries], [v for _, v in entries]))
    return rows


def coboundary_matrix(K: SimplicialComplex, k: int) -> Matrix:
    """Dense rational coboundary matrix, shape n_{k+1} x n_k."""
    return linalgq.int_rows_to_dense(coboundary_rows(K, k), K.n_simplices(k))


def _check_degree(K: SimplicialComplex, k: int) -> None:
    if not 0 <= k <= K.dimension:
        raise InputError(f"degree {k} out of range 0..{K.dimension}")


@lru_cache(maxsize=None)
def _cohomology_data(
    K: SimplicialComplex, k: int
) -> tuple[linalgq.SparseRref, linalgq.SparseRref, linalgq.SparseRref]:
    """(cocycle space, coboundary image, canonical representatives), all sparse."""
    n_k = K.n_simplices(k)
    ker = linalgq.sparse_nullspace(coboundary_rows(K, k), n_k)
    prev = coboundary_rows(K, k - 1)
    if prev:
        cols = linalgq.transpose_int_rows(prev, K.n_simplices(k - 1))
        im = linalgq.sparse_rref([c for c in cols if c[0]], n_k)
    else:
        im = linalgq.sparse_rref([], n_k)
    reps = linalgq.sparse_quotient(ker, im)
    return ker, im, reps


def betti(K: SimplicialComplex, k: int | None = None):
    """Rational Betti number(s); the full tuple when no degree is given."""
    if k is None:
        return tuple(betti(K, j) for j in range(K.dimension + 1))
    if not 0 <= k <= K.dimension:
        return 0
    return _cohomology_data(K, k)[2].rank


def cohomology_basis(K: SimplicialComplex, k: int) -> Matrix:
    """Canonical cocycle representatives of H^k, as rational RREF rows."""
    _check_degree(K, k)
    return _cohomology_data(K, k)[2].dense()


def coboundary_image(K: SimplicialComplex, k: int) -> linalgq.SparseRref:
    _check_degree(K, k)
    return _cohomology_data(K, k)[1]


def class_coordinates(K: SimplicialComplex, k: int, cochain: Sequence) -> Vector:
    """Coordinates of a cocycle's class in the canonical H^k basis.

    Raises StructureError when the cochain is not a cocycle (or otherwise
    fails to reduce into the canonical frame).
    """
    _check_degree(K, k)
    _, im, reps = _cohomology_data(K, k)
    r = linalgq.reduce_dense_by_sparse(im, cochain)
    coords = []
    for (cs, vs), p in zip(reps.rows, reps.pivcols):
        alpha = r[p]
        coords.append(alpha)
        if alpha:
            scale = alpha / vs[0]
            for cc, vv in zip(cs, vs):
                r[cc] -= scale * vv
    if any(r):
        raise StructureError("cochain does not represent a class in the canonical frame")
    return coords


def cup_product(K: SimplicialComplex, p: int, q: int, a: Sequence, b: Sequence) -> Vector:
    """Front-face / back-face cochain cup product of a p- and a q-cochain.

    Order matters at the cochain level; graded commutativity only holds
    after pairing with the fundamental class.
    """
    _check_degree(K, p)
    _check_degree(K, q)
    if p + q > K.dimension:
        raise InputError(f"cup degree {p + q} exceeds dimension {K.dimension}")
    idx_p = K._index[p]
    idx_q = K._index[q]
    out = []
    for s in K.simplices(p + q):
        front = s[: p + 1]
        back = s[p:]
        out.append(linalgq.frac(a[idx_p[front]]) * linalgq.frac(b[idx_q[back]]))
    return out


@lru_cache(maxsize=None)
def fundamental_class(K: SimplicialComplex) -> tuple[int, ...]:
    """Orientation signs over the top simplices of a closed pseudomanifold.

    Each (n-1)-simplex must lie in exactly two top simplices, and the
    propagated orientations must be compatible; the first top simplex of
    each adjacency component (canonical order) carries +1.
    """
    n = K.dimension
    tops = K.simplices(n)
    if n == 0:
        return tuple(1 for _ in tops)
    cofaces: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for t_i, s in enumerate(tops):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            cofaces.setdefault(face, []).append((t_i, -1 if i % 2 else 1))
    bad = sorted(f for f, cs in cofaces.items() if len(cs) != 2)
    if bad:
        names = [tuple(K.vertex_names[i] for i in bad[0])]
        raise StructureError(
            f"not a closed pseudomanifold: {len(bad)} codimension-1 faces are not "
            f"in exactly two top simplices (first: {names[0]})"
        )
    signs: dict[int, int] = {}
    for start in range(len(tops)):
        if start in signs:
            continue
        signs[start] = 1
        queue = [start]
        while queue:
            t = queue.pop()
            s = tops[t]
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                (a, sa), (b, sb) = cofaces[face]
                other, s_other, s_here = (b, sb, sa) if a == t else (a, sa, sb)
                want = -signs[t] * s_here * s_other
                if other in signs:
                    if signs[other] != want:
                        raise OrientabilityError(
                            "orientation propagation conflict between top simplices "
                            f"{tuple(K.vertex_names[i] for i in tops[t])} and "
                            f"{tuple(K.vertex_names[i] for i in tops[other])}"
                        )
                else:
                    signs[other] = want
                    queue.append(other)
    return tuple(signs[i] for i in range(len(tops)))


def is_closed_pseudomanifold(K: SimplicialComplex) -> bool:
    n = K.dimension
    if n == 0:
        return True
    cofaces: dict[tuple[int, ...], int] = {}
    for s in K.simplices(n):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            cofaces[face] = cofaces.get(face, 0) + 1
    return all(c == 2 for c in cofaces.values())


def pair_with_fundamental_class(K: SimplicialComplex, cochain: Sequence, orientation: int = 1) -> Fraction:
    """<c, [K]> for a top-degree cochain, with an optional global sign flip."""
    if orientation not in (1, -1):
        raise InputError("orientation must be +1 or -1")
    signs = fundamental_class(K)
    return orientation * sum(
        (s * linalgq.frac(c) for s, c in zip(signs, cochain)), Fraction(0)
    )
