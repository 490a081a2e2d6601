"""Intersection forms, dual subspace choices, and signatures.

The cup-product pairing against the fundamental class gives an exact
rational form on cohomology.  Dualizing a middle-degree choice means taking
its annihilator under that form; a space whose strata all admit self-dual
choices supports a signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalgq, simplicial, strata
from .errors import (
    DegeneracyError,
    InputError,
    ParityError,
    RankError,
    SelfDualityError,
    StructureError,
    UnsupportedError,
)

Matrix = list[list[Fraction]]


# ---------------------------------------------------------------------------
# intersection forms


@dataclass(frozen=True)
class IntersectionForm:
    """Pairing H^k x H^{n-k} -> Q in the canonical bases."""

    degree: int
    codegree: int
    matrix: tuple[tuple[Fraction, ...], ...]
    parity: str

    @property
    def sign(self) -> int:
        return 1 if self.parity == "symmetric" else -1

    def reverse(self) -> "IntersectionForm":
        """The pairing with the factors swapped, H^{n-k} x H^k -> Q."""
        eps = self.sign
        rows = tuple(
            tuple(eps * self.matrix[i][j] for i in range(len(self.matrix)))
            for j in range(len(self.matrix[0]) if self.matrix else 0)
        )
        return IntersectionForm(self.codegree, self.degree, rows, self.parity)


def intersection_form(
    K: simplicial.SimplicialComplex, k: int, orientation: int = 1
) -> IntersectionForm:
    """Cup-product pairing of H^k with H^{n-k} against the fundamental class.

    Well-definedness on cohomology is spot-checked by shifting the first
    representative by an exact cocycle; nondegeneracy is verified by rank.
    """
    n = K.dimension
    if not 0 <= k <= n:
        raise InputError(f"degree {k} out of range for dimension {n}")
    simplicial.fundamental_class(K)
    a_basis = simplicial.cohomology_basis(K, k)
    b_basis = simplicial.cohomology_basis(K, n - k)

    def pair(a, b):
        cup = simplicial.cup_product(K, k, n - k, a, b)
        return simplicial.pair_with_fundamental_class(K, cup, orientation)

    rows = tuple(tuple(pair(a, b) for b in b_basis) for a in a_basis)

    if a_basis and K.n_simplices(k) and k >= 1:
        shift = linalgq.mat_vec(
            simplicial.coboundary_matrix(K, k - 1),
            [1] + [0] * (K.n_simplices(k - 1) - 1),
        )
        shifted = [x + y for x, y in zip(a_basis[0], shift)]
        if tuple(pair(shifted, b) for b in b_basis) != rows[0]:
            raise StructureError("pairing is not constant on cohomology classes")

    eps = 1 if (k * (n - k)) % 2 == 0 else -1
    parity = "symmetric" if eps == 1 else "antisymmetric"
    if 2 * k == n:
        for i in range(len(rows)):
            for j in range(len(rows)):
                if rows[i][j] != eps * rows[j][i]:
                    raise StructureError("middle pairing violates graded symmetry")
    if a_basis and linalgq.rank([list(r) for r in rows]) != len(a_basis):
        raise DegeneracyError(f"degree-{k} pairing is degenerate")
    return IntersectionForm(k, n - k, rows, parity)


def _form_matrix(q) -> Matrix:
    if isinstance(q, IntersectionForm):
        return [list(row) for row in q.matrix]
    return [[linalgq.frac(x) for x in row] for row in q]


def dual_subspace(q, w_rows) -> tuple[tuple[Fraction, ...], ...]:
    """Annihilator of the span of w_rows under the pairing, canonical basis.

    Vectors v with q(w, v) = 0 for every w in the span; its dimension is
    the ambient dimension minus the number of rows.
    """
    Q = _form_matrix(q)
    ambient = len(Q[0]) if Q else 0
    if Q and linalgq.rank(Q) != min(len(Q), ambient):
        raise DegeneracyError("pairing matrix is degenerate")
    w = [[linalgq.frac(x) for x in row] for row in w_rows]
    if w and linalgq.rank(w) != len(w):
        raise RankError("subspace rows are not linearly independent")
    if not w:
        return tuple(tuple(row) for row in linalgq.eye(ambient))
    functionals = [linalgq.mat_vec(linalgq.transpose(Q), wi) for wi in w]
    basis = linalgq.nullspace(functionals)
    return tuple(tuple(row) for row in basis)


def dual_mezzoperversity(space: strata.StratifiedSpace, m):
    """Replace every chosen subspace by its pairing annihilator.

    The result is validated before being returned, so flatness of each dual
    choice is re-verified exactly; applying the map twice gives back the
    original assignments.
    """
    from . import mezzo

    mz = mezzo.as_mezzoperversity(m)
    mezzo.require_valid(space, mz)
    out = {}
    for key, w in mz.assignments.items():
        q = _middle_form_of_link(space, key)
        out[key] = dual_subspace(q, w)
    dual = mezzo.Mezzoperversity(out)
    mezzo.require_valid(space, dual)
    return dual


def _middle_form_of_link(space: strata.StratifiedSpace, stratum_id: str):
    s = strata.find_stratum(space, stratum_id)
    if not isinstance(s.link, strata.Closed):
        raise UnsupportedError(
            f"stratum {stratum_id!r} has a stratified link; its middle pairing "
            f"is not constructed"
        )
    return intersection_form(s.link.complex, s.f // 2, s.link.orientation)


# ---------------------------------------------------------------------------
# per-stratum duality report


@dataclass(frozen=True)
class StratumDuality:
    stratum_id: str
    ambient: int
    w: tuple
    dw: tuple
    self_dual: bool


@dataclass(frozen=True)
class DualityReport:
    entries: tuple[StratumDuality, ...]

    @property
    def self_dual(self) -> bool:
        return all(e.self_dual for e in self.entries)


def duality_report(space: strata.StratifiedSpace, m) -> DualityReport:
    from . import mezzo

    mz = mezzo.as_mezzoperversity(m)
    mezzo.require_valid(space, mz)
    entries = []
    for key in sorted(mz.assignments):
        w = mz.assignments[key]
        q = _middle_form_of_link(space, key)
        dw = dual_subspace(q, w)
        ambient = len(q.matrix)
        same = linalgq.subspace_rref([list(r) for r in w]) == linalgq.subspace_rref(
            [list(r) for r in dw]
        )
        entries.append(StratumDuality(key, ambient, tuple(w), dw, same))
    return DualityReport(tuple(entries))


def is_self_dual(space: strata.StratifiedSpace, m) -> bool:
    return duality_report(space, m).self_dual


# ---------------------------------------------------------------------------
# self-dual search


@dataclass(frozen=True)
class SelfDualSearch:
    """Outcome of looking for a Lagrangian subspace of one pairing."""

    w: tuple | None
    obstruction: str | None = None
    signature: int | None = None

    @property
    def found(self) -> bool:
        return self.w is not None


def _qform(Q: Matrix):
    def q(u, v):
        return sum(
            Q[i][j] * u[i] * v[j] for i in range(len(Q)) for j in range(len(Q))
        )

    return q


def _darboux_lagrangian(Q: Matrix) -> list[list[Fraction]]:
    """Half of a symplectic basis, by greedy pair reduction."""
    n = len(Q)
    q = _qform(Q)
    remaining = [list(row) for row in linalgq.eye(n)]
    isotropic = []
    while remaining:
        u = remaining.pop(0)
        j = next(i for i, v in enumerate(remaining) if q(u, v) != 0)
        v = remaining.pop(j)
        c = q(u, v)
        v = [x / c for x in v]
        remaining = [
            [w[i] - q(u, w) * v[i] + q(v, w) * u[i] for i in range(n)]
            for w in remaining
        ]
        isotropic.append(u)
    return isotropic


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def _hyperbolic_lagrangian(Q: Matrix) -> list[list[Fraction]] | None:
    """Pair up opposite-sign squares whose ratio is a rational square."""
    P, diag = linalgq.congruent_diagonalize(Q)
    basis = linalgq.transpose(P)
    pos = [i for i, d in enumerate(diag) if d > 0]
    neg = [i for i, d in enumerate(diag) if d < 0]
    if len(pos) != len(neg):
        return None
    rows = []
    used = set()
    for i in pos:
        t = None
        for j in neg:
            if j in used:
                continue
            t = _rational_sqrt(-diag[i] / diag[j])
            if t is not None:
                used.add(j)
                rows.append(
                    [basis[i][c] + t * basis[j][c] for c in range(len(Q))]
                )
                break
        if t is None:
            return None
    return rows


def _is_invariant(w_rows, generators) -> bool:
    dense = [list(r) for r in w_rows]
    for T in generators:
        moved = dense + [linalgq.mat_vec(T, r) for r in dense]
        if linalgq.rank(moved) != len(dense):
            return False
    return True


def _char_poly(T: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - T), highest degree first."""
    n = len(T)
    coeffs = [Fraction(1)]
    M = linalgq.eye(n)
    c = Fraction(0)
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] += c
        M = linalgq.mat_mul(T, M)
        c = -sum(M[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def _int_divisors(a: int) -> list[int]:
    a = abs(a)
    out = []
    for d in range(1, math.isqrt(a) + 1):
        if a % d == 0:
            out.append(d)
            if d != a // d:
                out.append(a // d)
    return sorted(out)


def _rational_eigenvalues(T: Matrix) -> list[Fraction]:
    coeffs = _char_poly(T)
    mult = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * mult) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = set()
    if len(ints) < len(coeffs):
        roots.add(Fraction(0))
    if len(ints) >= 2:
        lead, const = ints[0], ints[-1]
        for p in _int_divisors(const):
            for q in _int_divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(
                        c * cand ** (len(ints) - 1 - i) for i, c in enumerate(ints)
                    ) == 0:
                        roots.add(cand)
    return sorted(roots)


def _generalized_eigenspace(T: Matrix, lam: Fraction) -> list[list[Fraction]]:
    n = len(T)
    A = [[T[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    power = linalgq.eye(n)
    for _ in range(n):
        power = linalgq.mat_mul(A, power)
    return linalgq.nullspace(power)


def _eigenspace_lagrangian(Q: Matrix, T: Matrix) -> list[list[Fraction]] | None:
    """Greedy isotropic collection out of generalized eigenspaces.

    Candidate vectors are taken eigenspace by eigenspace in eigenvalue
    order; the result is re-checked for invariance by the caller, since a
    mix of vectors from different eigenspaces need not span an invariant
    subspace.
    """
    n = len(Q)
    q = _qform(Q)
    candidates = []
    for lam in _rational_eigenvalues(T):
        candidates.extend(_generalized_eigenspace(T, lam))
    chosen: list[list[Fraction]] = []
    for v in candidates:
        if len(chosen) == n // 2:
            break
        if q(v, v) != 0:
            continue
        if any(q(v, c) != 0 or q(c, v) != 0 for c in chosen):
            continue
        if linalgq.rank(chosen + [v]) != len(chosen) + 1:
            continue
        chosen.append(v)
    if len(chosen) == n // 2:
        return chosen
    return None


def find_self_dual(q, monodromy=()) -> SelfDualSearch:
    """Look for a monodromy-invariant Lagrangian of one nondegenerate form.

    Antisymmetric forms always split; symmetric forms are obstructed by a
    nonzero signature, and at signature zero the hyperbolic pairing needs
    rational square ratios.  When the first candidate is not invariant and
    the form is antisymmetric, the search retries inside the rational
    generalized eigenspaces of the monodromy.  The search is deterministic
    and incomplete: a returned obstruction 'no_invariant_lagrangian' means
    this procedure found none, not that none exists.
    """
    Q = _form_matrix(q)
    n = len(Q)
    generators = [_form_matrix(T) for T in monodromy]
    antisym = all(
        Q[i][j] == -Q[j][i] for i in range(n) for j in range(n)
    )
    if antisym and n % 2 == 1:
        raise ParityError("a Lagrangian needs an even-dimensional ambient space")
    if n and linalgq.rank(Q) != n:
        raise DegeneracyError("pairing matrix is degenerate")

    if antisym:
        rows = _darboux_lagrangian(Q)
        if _is_invariant(rows, generators):
            return SelfDualSearch(tuple(tuple(r) for r in rows))
        if len(generators) == 1:
            rows = _eigenspace_lagrangian(Q, generators[0])
            if rows is not None and _is_invariant(rows, generators):
                return SelfDualSearch(tuple(tuple(r) for r in rows))
        return SelfDualSearch(None, "no_invariant_lagrangian")

    sigma = linalgq.exact_signature(Q)
    if sigma != 0:
        return SelfDualSearch(None, "nonzero_signature", sigma)
    rows = _hyperbolic_lagrangian(Q)
    if rows is not None and _is_invariant(rows, generators):
        return SelfDualSearch(tuple(tuple(r) for r in rows), None, 0)
    return SelfDualSearch(None, "no_invariant_lagrangian", 0)


# ---------------------------------------------------------------------------
# Cheeger-space detection


@dataclass(frozen=True)
class CheegerEntry:
    stratum_id: str
    status: str  # "witt" | "lagrangian" | obstruction name
    w: tuple | None = None
    signature: int | None = None


@dataclass(frozen=True)
class CheegerReport:
    entries: tuple[CheegerEntry, ...]
    is_cheeger: bool
    mezzoperversity: object | None


def cheeger_report(space: strata.StratifiedSpace) -> CheegerReport:
    """Search every stratum for an invariant Lagrangian, shallow first.

    Witt strata need no choice.  At the first obstruction the space cannot
    carry a self-dual family of choices and deeper strata whose Witt test
    depends on the missing one are left unvisited.
    """
    from . import mezzo

    acc: dict[str, tuple] = {}
    entries = []
    for s in strata.singular_strata(space):
        ws = strata.witt_status(s, acc)
        if ws.is_witt:
            entries.append(CheegerEntry(s.id, "witt"))
            continue
        q = _middle_form_of_link(space, s.id)
        generators = [s.monodromy] if s.monodromy is not None else []
        res = find_self_dual(q, generators)
        if res.found:
            acc[s.id] = res.w
            entries.append(CheegerEntry(s.id, "lagrangian", res.w, res.signature))
        else:
            entries.append(CheegerEntry(s.id, res.obstruction, None, res.signature))
            return CheegerReport(tuple(entries), False, None)
    return CheegerReport(tuple(entries), True, mezzo.Mezzoperversity(acc))


# ---------------------------------------------------------------------------
# duality checks and signatures


@dataclass(frozen=True)
class PoincareReport:
    dims: tuple[int, ...]
    dual_dims: tuple[int, ...]
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)


def poincare_check(space: strata.StratifiedSpace, m) -> PoincareReport:
    """Dimension symmetry between a choice and its dual, plus cup pairings.

    dim H^k under m must equal dim H^{n-k} under the dual assignments; on
    every closed piece in sight the cup pairing must be nondegenerate in
    all degrees.
    """
    from . import refined

    dual = dual_mezzoperversity(space, m)
    dims = refined.refined_cohomology(space, m).dims
    dual_dims = refined.refined_cohomology(space, dual).dims
    n = strata.dimension(space)
    symmetric = all(
        dims[k] == dual_dims[n - k] for k in range(n + 1)
    )
    checks = [("dimension-symmetry", symmetric)]

    pieces = []
    if isinstance(space, strata.Closed):
        pieces.append(("space", space))
    for s in strata.singular_strata(space):
        if isinstance(s.link, strata.Closed):
            pieces.append((s.id, s.link))
    for label, piece in pieces:
        K = piece.complex
        ok = True
        try:
            for k in range(K.dimension + 1):
                intersection_form(K, k, piece.orientation)
        except DegeneracyError:
            ok = False
        checks.append((f"cup-nondegenerate:{label}", ok))
    return PoincareReport(dims, dual_dims, tuple(checks))


def signature(space: strata.StratifiedSpace, m=None) -> int:
    """Signature of the middle-degree pairing under a self-dual choice.

    Zero in odd dimensions and for antisymmetric middle pairings; exact
    congruence diagonalization otherwise.  Orientation reversal negates
    the result.
    """
    report = duality_report(space, m)
    if not report.self_dual:
        bad = [e.stratum_id for e in report.entries if not e.self_dual]
        raise SelfDualityError(
            f"assignments at {', '.join(bad)} are not self-dual"
        )
    n = strata.dimension(space)
    if n % 2 == 1:
        return 0
    if isinstance(space, strata.Closed):
        q = intersection_form(space.complex, n // 2, space.orientation)
        if q.parity == "antisymmetric":
            return 0
        return linalgq.exact_signature([list(r) for r in q.matrix])
    raise UnsupportedError(
        "signature of an even-dimensional stratified space needs middle-degree "
        "products on the refined complex, which are not constructed"
    )
