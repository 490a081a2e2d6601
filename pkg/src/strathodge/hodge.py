"""Combinatorial Hodge theory: inner products, Laplacians, spectra, Kodaira
splitting, and a harmonic-space Hodge star for closed oriented triangulations.

Everything in this module is floating point; exact ranks come from
:mod:`strathodge.simplicial` and anchor every numerical kernel dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import simplicial
from .errors import DegeneracyError, InputError, MetricError, NumericError
from .simplicial import SimplicialComplex

ZERO_RELTOL = 1e-8


@dataclass(frozen=True)
class InnerProductFamily:
    """Per-degree SPD inner products on cochains.

    kind is one of "identity", "diagonal-weights", "custom".  Degrees without
    an explicit entry fall back to the identity inner product.
    """

    kind: str
    weights: Mapping[int, tuple] | None = None
    matrices: Mapping[int, np.ndarray] | None = None


def identity_ip() -> InnerProductFamily:
    return InnerProductFamily("identity")


def diagonal_ip(weights: Mapping[int, Sequence]) -> InnerProductFamily:
    clean = {}
    for k, ws in weights.items():
        vals = tuple(float(w) for w in ws)
        if any(w <= 0 for w in vals):
            raise MetricError(f"nonpositive diagonal weight at degree {k}")
        clean[int(k)] = vals
    return InnerProductFamily("diagonal-weights", weights=clean)


def custom_ip(matrices: Mapping[int, np.ndarray]) -> InnerProductFamily:
    clean = {}
    for k, m in matrices.items():
        a = np.asarray(m, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MetricError(f"inner product at degree {k} is not square")
        if not np.allclose(a, a.T, atol=1e-12 * max(1.0, float(np.abs(a).max()))):
            raise MetricError(f"inner product at degree {k} is not symmetric")
        try:
            np.linalg.cholesky(a)
        except np.linalg.LinAlgError:
            raise MetricError(f"inner product at degree {k} is not positive definite")
        clean[int(k)] = a
    return InnerProductFamily("custom", matrices=clean)


def gram(ip: InnerProductFamily, K: SimplicialComplex, k: int) -> np.ndarray:
    """Dense Gram matrix of ip on k-cochains."""
    n = K.n_simplices(k)
    if ip.kind == "identity":
        return np.eye(n)
    if ip.kind == "diagonal-weights":
        ws = (ip.weights or {}).get(k)
        if ws is None:
            return np.eye(n)
        if len(ws) != n:
            raise MetricError(
                f"degree {k} weight vector has length {len(ws)}, expected {n}"
            )
        return np.diag(np.asarray(ws, dtype=float))
    if ip.kind == "custom":
        m = (ip.matrices or {}).get(k)
        if m is None:
            return np.eye(n)
        if m.shape[0] != n:
            raise MetricError(f"degree {k} matrix is {m.shape[0]}x{m.shape[0]}, expected {n}x{n}")
        return np.array(m, dtype=float)
    raise MetricError(f"unknown inner product kind {ip.kind!r}")


def uniform_rescale(ip: InnerProductFamily, K: SimplicialComplex, c: float) -> InnerProductFamily:
    """Scale the Gram matrix at every degree of K by the same constant c > 0."""
    if c <= 0:
        raise MetricError("scale factor must be positive")
    mats = {k: c * gram(ip, K, k) for k in range(K.dimension + 1)}
    return custom_ip(mats)


def _gram_sqrt(G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(G^(1/2), G^(-1/2)) via symmetric eigendecomposition."""
    if G.shape[0] == 0:
        return G.copy(), G.copy()
    w, V = np.linalg.eigh(G)
    if w.min() <= 1e-12 * max(w.max(), 1.0):
        raise MetricError("inner product is numerically singular")
    s = np.sqrt(w)
    return (V * s) @ V.T, (V / s) @ V.T


def _coboundary_dense(K: SimplicialComplex, k: int) -> np.ndarray:
    """Float matrix of d_k with shape (n_{k+1}, n_k); zero-row shape off range."""
    rows = simplicial.coboundary_rows(K, k)
    n_from = K.n_simplices(k) if 0 <= k <= K.dimension else 0
    n_to = K.n_simplices(k + 1) if 0 <= k + 1 <= K.dimension else 0
    D = np.zeros((n_to, n_from))
    for i, (cols, vals) in enumerate(rows):
        for c, v in zip(cols, vals):
            D[i, c] = v
    return D


def _symmetrized_parts(K, ip, k):
    """(A, C, R, Rinv): S = A A^T + C^T C is the ip-symmetrized Laplacian.

    A = R_k d_{k-1} R_{k-1}^{-1} and C = R_{k+1} d_k R_k^{-1} with R_j the SPD
    square root of the degree-j Gram matrix; eigenvectors y of S pull back to
    ip-orthonormal cochain eigenvectors R_k^{-1} y.
    """
    R, Rinv = _gram_sqrt(gram(ip, K, k))
    Ddn = _coboundary_dense(K, k - 1)
    Dup = _coboundary_dense(K, k)
    if k - 1 >= 0 and Ddn.shape[1]:
        _, Rdn_inv = _gram_sqrt(gram(ip, K, k - 1))
        A = R @ Ddn @ Rdn_inv
    else:
        A = np.zeros((K.n_simplices(k), 0))
    if k + 1 <= K.dimension and Dup.shape[0]:
        Rup, _ = _gram_sqrt(gram(ip, K, k + 1))
        C = Rup @ Dup @ Rinv
    else:
        C = np.zeros((0, K.n_simplices(k)))
    return A, C, R, Rinv


def laplacian(K: SimplicialComplex, ip: InnerProductFamily, k: int) -> np.ndarray:
    """Hodge Laplacian on k-cochains, self-adjoint for ip (not symmetric)."""
    _check_degree(K, k)
    G = gram(ip, K, k)
    Ddn = _coboundary_dense(K, k - 1)
    Dup = _coboundary_dense(K, k)
    n = K.n_simplices(k)
    L = np.zeros((n, n))
    if Ddn.shape[1]:
        Gdn = gram(ip, K, k - 1)
        L += Ddn @ np.linalg.solve(Gdn, Ddn.T @ G)
    if Dup.shape[0]:
        Gup = gram(ip, K, k + 1)
        L += np.linalg.solve(G, Dup.T @ Gup @ Dup)
    return L


@dataclass(frozen=True)
class SpectrumRow:
    degree: int
    eigenvalues: tuple
    zero_threshold: float
    zero_multiplicity: int
    betti: int


SpectrumTable = tuple


def spectrum(K, ip, k, zero_threshold: float = ZERO_RELTOL) -> SpectrumRow:
    """Sorted Laplacian spectrum at degree k, zero multiplicity pinned to betti.

    The numerical zero count must equal the exact betti number; disagreement
    is a hard NumericError, never silently repaired.
    """
    _check_degree(K, k)
    A, C, _, _ = _symmetrized_parts(K, ip, k)
    S = A @ A.T + C.T @ C
    eigs = np.linalg.eigvalsh(S) if S.shape[0] else np.zeros(0)
    lam_max = float(eigs.max()) if eigs.size else 0.0
    thr = zero_threshold * lam_max
    if eigs.size and float(eigs.min()) < -thr:
        raise NumericError(
            f"negative eigenvalue {eigs.min():.3e} at degree {k} exceeds tolerance"
        )
    zeros = int(np.count_nonzero(np.abs(eigs) <= thr))
    b = simplicial.betti(K, k)
    if zeros != b:
        raise NumericError(
            f"degree {k}: numerical kernel dimension {zeros} != betti {b}"
        )
    return SpectrumRow(k, tuple(float(e) for e in eigs), thr, zeros, b)


def spectrum_table(K, ip, zero_threshold: float = ZERO_RELTOL) -> SpectrumTable:
    return tuple(spectrum(K, ip, k, zero_threshold) for k in range(K.dimension + 1))


def harmonic_basis(K, ip, k, zero_threshold: float = ZERO_RELTOL) -> np.ndarray:
    """ip-orthonormal harmonic cochains as rows, betti_k of them."""
    _check_degree(K, k)
    A, C, _, Rinv = _symmetrized_parts(K, ip, k)
    S = A @ A.T + C.T @ C
    n = S.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    eigs, Y = np.linalg.eigh(S)
    lam_max = float(eigs.max()) if eigs.size else 0.0
    thr = zero_threshold * lam_max
    zeros = int(np.count_nonzero(np.abs(eigs) <= thr))
    b = simplicial.betti(K, k)
    if zeros != b:
        raise NumericError(
            f"degree {k}: numerical kernel dimension {zeros} != betti {b}"
        )
    return (Rinv @ Y[:, :b]).T


@dataclass(frozen=True)
class KodairaSplit:
    harmonic: np.ndarray
    exact: np.ndarray
    coexact: np.ndarray
    residual: float


def kodaira_decompose(K, ip, k, u: Sequence) -> KodairaSplit:
    """Split a k-cochain into harmonic + exact + coexact parts.

    Exact and coexact parts are ip-orthogonal projections onto the images of
    d_{k-1} and of the ip-adjoint of d_k; the harmonic part is the remainder.
    The residual is the worst of the reconstruction error and the pairwise
    orthogonality defects, relative to the input norm.
    """
    _check_degree(K, k)
    v = np.asarray([float(x) for x in u], dtype=float)
    if v.shape[0] != K.n_simplices(k):
        raise InputError(f"cochain has length {v.shape[0]}, expected {K.n_simplices(k)}")
    A, C, R, Rinv = _symmetrized_parts(K, ip, k)
    vt = R @ v
    ex_t = _project_onto_columns(A, vt)
    co_t = _project_onto_columns(C.T, vt)
    h_t = vt - ex_t - co_t
    norm = float(np.linalg.norm(vt))
    scale = norm if norm > 0 else 1.0
    recon = float(np.linalg.norm(vt - (h_t + ex_t + co_t))) / scale
    orth = max(
        abs(float(h_t @ ex_t)), abs(float(h_t @ co_t)), abs(float(ex_t @ co_t))
    ) / scale**2
    return KodairaSplit(Rinv @ h_t, Rinv @ ex_t, Rinv @ co_t, max(recon, orth))


def _project_onto_columns(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    if M.shape[1] == 0:
        return np.zeros_like(v)
    x, *_ = np.linalg.lstsq(M, v, rcond=None)
    return M @ x


def ip_pairing(ip, K, k, a, b) -> float:
    G = gram(ip, K, k)
    return float(np.asarray(a, dtype=float) @ G @ np.asarray(b, dtype=float))


def cup_pairing_matrix(K, k, basis_k, basis_m, orientation: int = 1) -> np.ndarray:
    """P[i, j] = <basis_k[i] cup basis_m[j], [K]> over floats."""
    n = K.dimension
    P = np.zeros((len(basis_k), len(basis_m)))
    for i, a in enumerate(basis_k):
        for j, b in enumerate(basis_m):
            cup = simplicial.cup_product(K, k, n - k, list(a), list(b))
            P[i, j] = float(
                simplicial.pair_with_fundamental_class(K, cup, orientation=orientation)
            )
    return P


def hodge_star_matrix(
    K: SimplicialComplex,
    ip: InnerProductFamily,
    k: int,
    normalized: bool = True,
    orientation: int = 1,
) -> np.ndarray:
    """Matrix of the Hodge star from k-cochains to (n-k)-cochains.

    The star is defined on harmonic spaces by <a cup *b, [K]> = ip(a, b) and
    extended to all cochains through the harmonic projector, so it kills exact
    and coexact parts.  The raw solution of the defining relation is generally
    not an involution; normalized=True replaces it by its orthogonal polar
    factor, which squares to (-1)^(k(n-k)) Id on harmonics exactly and keeps
    <a cup *a, [K]> > 0, at the price of satisfying the defining relation only
    up to an SPD factor.  normalized=False returns the raw star, which is what
    exact duality identities like *(W-perp) = Q-annihilator(W) require.
    """
    _check_degree(K, k)
    n = K.dimension
    m = n - k
    simplicial.fundamental_class(K)
    Hk = harmonic_basis(K, ip, k)
    Hm = harmonic_basis(K, ip, m)
    if Hk.shape[0] != Hm.shape[0]:
        raise DegeneracyError(
            f"betti {Hk.shape[0]} at degree {k} vs {Hm.shape[0]} at degree {m}: "
            "cup pairing cannot be perfect"
        )
    P = cup_pairing_matrix(K, k, Hk, Hm, orientation=orientation)
    if Hk.shape[0]:
        if np.linalg.matrix_rank(P) < P.shape[0]:
            raise DegeneracyError(f"cup pairing degenerate between degrees {k} and {m}")
        S = np.linalg.inv(P)
        if normalized:
            U, _, Vt = np.linalg.svd(S)
            S = U @ Vt
    else:
        S = np.zeros((0, 0))
    Gk = gram(ip, K, k)
    return Hm.T @ S @ Hk @ Gk


def _check_degree(K: SimplicialComplex, k: int) -> None:
    if not 0 <= k <= K.dimension:
        raise InputError(f"degree {k} out of range for a {K.dimension}-complex")
