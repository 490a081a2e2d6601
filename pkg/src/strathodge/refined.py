"""Cohomology of stratified spaces refined by boundary-condition choices.

Every dimension reported here is computed twice: once by a closed-form
bookkeeping formula and once from an explicit cochain complex built out of
truncations, mapping cones, and mapping-torus totals.  The two paths share
their input data but no elimination code, and any disagreement raises
ConsistencyError rather than picking a winner.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalgq, simplicial, strata
from .errors import (
    ConsistencyError,
    FlatnessError,
    InputError,
    MissingAssignmentError,
    ParityError,
    RankError,
    StructureError,
    SuperfluousAssignmentError,
)

Matrix = list[list[Fraction]]


# ---------------------------------------------------------------------------
# chain models


@dataclass(frozen=True)
class ChainModel:
    """A finite cochain complex of rational vector spaces.

    diffs[k] is the matrix of the degree-k differential, with shape
    (dims[k+1], dims[k]); the final entry has zero rows so len(diffs)
    equals len(dims).
    """

    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.diffs) != len(self.dims):
            raise InputError("one differential per degree is required")
        for k, d in enumerate(self.diffs):
            nxt = self.dims[k + 1] if k + 1 < len(self.dims) else 0
            if len(d) != nxt or any(len(row) != self.dims[k] for row in d):
                raise InputError(f"differential {k} has the wrong shape")

    def degree_rows(self, k: int) -> list:
        """Integer sparse rows of diffs[k], uniformly scaled."""
        if k < 0 or k >= len(self.dims):
            return []
        return linalgq.matrix_to_int_rows(self.diffs[k])


def verify_model(model: ChainModel) -> None:
    """Check d o d = 0 exactly; raises StructureError otherwise."""
    for k in range(len(model.dims) - 1):
        comp = linalgq.mat_mul(model.diffs[k + 1], model.diffs[k])
        if any(any(x for x in row) for row in comp):
            raise StructureError(f"differentials {k} and {k + 1} do not compose to zero")


def simplicial_model(K: simplicial.SimplicialComplex) -> ChainModel:
    dims = tuple(len(K.simplices(k)) for k in range(K.dimension + 1))
    diffs = []
    for k in range(len(dims)):
        nxt = dims[k + 1] if k + 1 < len(dims) else 0
        mat = [[Fraction(0)] * dims[k] for _ in range(nxt)]
        if nxt:
            for (cols, vals), i in zip(simplicial.coboundary_rows(K, k), range(nxt)):
                for j, a in zip(cols, vals):
                    mat[i][j] = Fraction(a)
        diffs.append(mat)
    return ChainModel(dims=dims, diffs=tuple(diffs))


def _model_cohomology_data(model: ChainModel, k: int):
    """(kernel, image, representatives) at degree k, as canonical RREFs.

    Mirrors the simplicial pipeline: the kernel comes from the rows of the
    degree-k differential read as functionals, the image from the exact
    columns of the degree-(k-1) differential.
    """
    n = model.dims[k] if 0 <= k < len(model.dims) else 0
    ker = linalgq.sparse_nullspace(model.degree_rows(k), n)
    prev = model.degree_rows(k - 1) if k >= 1 else []
    prev_dim = model.dims[k - 1] if k >= 1 else 0
    im = linalgq.sparse_rref(linalgq.transpose_int_rows(prev, prev_dim), n)
    reps = linalgq.sparse_quotient(ker, im)
    return ker, im, reps


def model_betti(model: ChainModel) -> tuple[int, ...]:
    out = []
    for k in range(len(model.dims)):
        _, _, reps = _model_cohomology_data(model, k)
        out.append(reps.rank)
    return tuple(out)


def model_cohomology_basis(model: ChainModel, k: int) -> list[list[Fraction]]:
    """Canonical representatives with lead entry 1, as dense rows."""
    _, _, reps = _model_cohomology_data(model, k)
    return reps.dense()


def truncate_model(
    model: ChainModel, f: int, w_rows: tuple | None
) -> tuple[ChainModel, tuple[Matrix, ...]]:
    """Cut the complex above its middle, keeping only chosen classes there.

    Degrees below t = ceil(f/2) survive unchanged.  Degree t is replaced by
    the span of the exact cochains together with cocycle lifts of the rows
    of w_rows (coordinates in the canonical degree-t cohomology basis);
    everything above t is dropped.  For odd f the W slot is empty and the
    degree-t space is exactly the image of the differential, which carries
    no cohomology of its own.

    Returns the truncated model together with the per-degree inclusion
    matrices into the original complex.
    """
    t = (f + 1) // 2
    n_t = model.dims[t] if t < len(model.dims) else 0
    span_rows = []
    if t >= 1:
        span_rows.extend(
            linalgq.transpose_int_rows(model.degree_rows(t - 1), model.dims[t - 1])
        )
    if w_rows:
        reps = model_cohomology_basis(model, t)
        for w in w_rows:
            lift = [Fraction(0)] * n_t
            for c, rep in zip(w, reps):
                cf = linalgq.frac(c)
                if cf:
                    for j in range(n_t):
                        lift[j] += cf * rep[j]
            span_rows.append(linalgq.vector_to_int_row(lift))
    top = linalgq.sparse_rref(span_rows, n_t)

    dims = tuple(model.dims[k] for k in range(t)) + (top.rank,)
    diffs: list[Matrix] = [
        [list(row) for row in model.diffs[k]] for k in range(t - 1)
    ]
    if t >= 1:
        # express each exact cochain in the degree-t spanning basis
        last = [[Fraction(0)] * dims[t - 1] for _ in range(top.rank)]
        for j in range(dims[t - 1]):
            v = [model.diffs[t - 1][i][j] for i in range(n_t)] if n_t else []
            coords = linalgq.coordinates_in_rref(top, v)
            if coords is None:
                raise StructureError("exact cochain escaped the truncation span")
            for i, c in enumerate(coords):
                last[i][j] = c
        diffs.append(last)
    diffs.append([])

    incs: list[Matrix] = []
    for k in range(t):
        incs.append(linalgq.eye(model.dims[k]))
    top_cols = linalgq.int_rows_to_dense(top.rows, top.ncols, divide_lead=False)
    incs.append([[top_cols[i][j] for i in range(top.rank)] for j in range(n_t)])
    return ChainModel(dims=dims, diffs=tuple(diffs)), tuple(incs)


def mv_model(
    left: ChainModel,
    left_inc: tuple[Matrix, ...],
    right: ChainModel,
    right_inc: tuple[Matrix, ...],
    link: ChainModel,
) -> ChainModel:
    """Mapping-cone total complex of the restriction to the common link.

    Tot^k = L^k (+) R^k (+) Z^{k-1} with differential
    D(a, b, c) = (da, db, i(a) - i(b) - dc); its cohomology glues the two
    truncated halves along the link.
    """
    n = max(len(left.dims), len(right.dims), len(link.dims) + 1)

    def ldim(k):
        return left.dims[k] if 0 <= k < len(left.dims) else 0

    def rdim(k):
        return right.dims[k] if 0 <= k < len(right.dims) else 0

    def zdim(k):
        return link.dims[k] if 0 <= k < len(link.dims) else 0

    dims = tuple(ldim(k) + rdim(k) + zdim(k - 1) for k in range(n))
    diffs = []
    for k in range(n):
        rows = dims[k + 1] if k + 1 < n else 0
        cols = dims[k]
        mat = [[Fraction(0)] * cols for _ in range(rows)]
        if rows:
            la, ra, za = ldim(k + 1), rdim(k + 1), zdim(k)
            lb, rb = ldim(k), rdim(k)
            if k < len(left.diffs):
                for i, row in enumerate(left.diffs[k]):
                    for j, x in enumerate(row):
                        mat[i][j] = x
            if k < len(right.diffs):
                for i, row in enumerate(right.diffs[k]):
                    for j, x in enumerate(row):
                        mat[la + i][lb + j] = x
            if za:
                if k < len(left_inc):
                    for i in range(za):
                        for j in range(lb):
                            mat[la + ra + i][j] = left_inc[k][i][j]
                if k < len(right_inc):
                    for i in range(za):
                        for j in range(rb):
                            mat[la + ra + i][lb + j] = -right_inc[k][i][j]
                if k - 1 >= 0 and k - 1 < len(link.diffs):
                    for i, row in enumerate(link.diffs[k - 1]):
                        for j, x in enumerate(row):
                            mat[la + ra + i][lb + rb + j] = -x
        diffs.append(mat)
    return ChainModel(dims=dims, diffs=tuple(diffs))


# ---------------------------------------------------------------------------
# assignment plumbing


def _w_dim(w_rows) -> int:
    return len(w_rows) if w_rows is not None else 0


def _check_w(w_rows, ambient: int, where: str) -> None:
    for row in w_rows:
        if len(row) != ambient:
            raise StructureError(
                f"assignment at {where!r} has rows of length {len(row)}, "
                f"expected {ambient}"
            )
    if w_rows and linalgq.rank([list(map(linalgq.frac, r)) for r in w_rows]) != len(
        w_rows
    ):
        raise RankError(f"assignment at {where!r} is not linearly independent")


def _require_slot(f: int, mid_dim: int | None, w_rows, where: str) -> None:
    """Enforce when a middle-degree choice is required versus forbidden."""
    if f % 2 == 1:
        if w_rows is not None:
            raise SuperfluousAssignmentError(
                f"{where!r} has an odd-dimensional link and takes no assignment"
            )
        return
    if mid_dim == 0:
        if w_rows is not None:
            raise SuperfluousAssignmentError(
                f"{where!r} has vanishing middle cohomology and takes no assignment"
            )
        return
    if w_rows is None:
        raise MissingAssignmentError(f"{where!r} requires a middle-degree assignment")
    _check_w(w_rows, mid_dim, where)


# ---------------------------------------------------------------------------
# formula cores (no elimination beyond ranks of the assignments themselves)


def _cone_formula(link_dims: tuple[int, ...], f: int, w_rows) -> tuple[int, ...]:
    out = []
    for k in range(f + 1):
        if 2 * k < f:
            out.append(link_dims[k] if k < len(link_dims) else 0)
        elif 2 * k == f:
            out.append(_w_dim(w_rows))
        else:
            out.append(0)
    return tuple(out)


def _suspension_formula(
    link_dims: tuple[int, ...], f: int, w_plus, w_minus
) -> tuple[int, ...]:
    t = (f + 1) // 2
    sum_dim = cap_dim = 0
    if f % 2 == 0 and (w_plus or w_minus):
        stacked = [list(map(linalgq.frac, r)) for r in (w_plus or ())]
        stacked += [list(map(linalgq.frac, r)) for r in (w_minus or ())]
        sum_dim = linalgq.rank(stacked)
        cap_dim = _w_dim(w_plus) + _w_dim(w_minus) - sum_dim

    def alpha(k):
        """(kernel, rank) of the difference map on the two halves at degree k."""
        if k < 0:
            return 0, 0
        if f % 2 == 0 and k == t:
            return cap_dim, sum_dim
        b = link_dims[k] if 0 <= k < t else 0
        return b, b

    out = []
    for k in range(f + 2):
        ker_k, _ = alpha(k)
        _, rank_prev = alpha(k - 1)
        b_prev = link_dims[k - 1] if 0 <= k - 1 < len(link_dims) else 0
        out.append(ker_k + (b_prev - rank_prev))
    return tuple(out)


def _restricted_monodromy(T: Matrix, w_rows) -> Matrix:
    """The matrix of T on the span of w_rows, in the w_rows basis.

    Solving against the Gram matrix of the rows gives candidate
    coordinates; membership is then verified exactly, and failure means the
    span is not invariant.
    """
    w = [list(map(linalgq.frac, r)) for r in w_rows]
    if not w:
        return []
    gram = [[sum(a * b for a, b in zip(wi, wj)) for wj in w] for wi in w]
    cols = []
    for j, wj in enumerate(w):
        tv = linalgq.mat_vec(T, wj)
        rhs = [sum(a * b for a, b in zip(wi, tv)) for wi in w]
        x = linalgq.solve(gram, rhs)
        if x is None:
            raise RankError("assignment rows are not linearly independent")
        recon = [sum(x[i] * w[i][j2] for i in range(len(w))) for j2 in range(len(wj))]
        if recon != tv:
            raise FlatnessError(
                f"generator 0 moves basis vector {j} out of the subspace"
            )
        cols.append(x)
    return [[cols[j][i] for j in range(len(w))] for i in range(len(w))]


def _bundle_slots(
    cone_dims: tuple[int, ...], f: int, T: Matrix, w_rows
) -> list[Matrix]:
    """Monodromy action slot by slot on the cone-fiber cohomology.

    Away from the middle degree the action is taken to be trivial; the
    monodromy datum only specifies the middle-degree map, and its action on
    the chosen subspace is the restriction computed exactly.
    """
    t = (f + 1) // 2
    slots = []
    for q, n_q in enumerate(cone_dims):
        if f % 2 == 0 and q == t and w_rows:
            ambient = len(w_rows[0])
            if len(T) != ambient or any(len(row) != ambient for row in T):
                raise InputError(
                    f"monodromy must be {ambient}x{ambient} to act on the "
                    f"middle cohomology of the fiber link"
                )
            slots.append(_restricted_monodromy(T, w_rows))
        else:
            slots.append(linalgq.eye(n_q))
    return slots


def _bundle_formula(cone_dims: tuple[int, ...], slots: list[Matrix]) -> tuple[int, ...]:
    f_plus_2 = len(cone_dims) + 1
    out = [0] * (f_plus_2 + 1)
    for q, T_q in enumerate(slots):
        n_q = len(T_q)
        shifted = [[T_q[i][j] - (1 if i == j else 0) for j in range(n_q)] for i in range(n_q)]
        k0 = n_q - linalgq.rank(shifted)
        out[q] += k0
        out[q + 1] += k0
    return tuple(out)


def _wang_model(cone_dims: tuple[int, ...], slots: list[Matrix]) -> ChainModel:
    """Total complex of the mapping torus over the circle.

    Tot^k = H^k (+) H^{k-1} with D(a, b) = (0, (T_k - 1)a); its cohomology
    in degree k is ker(T_k - 1) plus coker(T_{k-1} - 1).
    """

    def cdim(k):
        return cone_dims[k] if 0 <= k < len(cone_dims) else 0

    n = len(cone_dims) + 1
    dims = tuple(cdim(k) + cdim(k - 1) for k in range(n))
    diffs = []
    for k in range(n):
        rows = dims[k + 1] if k + 1 < n else 0
        cols = dims[k]
        mat = [[Fraction(0)] * cols for _ in range(rows)]
        if rows and cdim(k):
            T_k = slots[k]
            for i in range(cdim(k)):
                for j in range(cdim(k)):
                    mat[cdim(k + 1) + i][j] = T_k[i][j] - (1 if i == j else 0)
        diffs.append(mat)
    return ChainModel(dims=dims, diffs=tuple(diffs))


# ---------------------------------------------------------------------------
# building models of admissible links


def _model_of(space: strata.StratifiedSpace, assignments) -> ChainModel:
    """Explicit cochain model of a space that can serve as a link."""
    if isinstance(space, strata.Closed):
        return simplicial_model(space.complex)
    if isinstance(space, strata.Suspension):
        link = space.link
        f = strata.dimension(link)
        local = strata.restrict_prior(assignments, "suspension.")
        w = assignments.get("suspension.poles") if assignments else None
        link_model = _model_of(link, local)
        mid = _dims(link, local)[f // 2] if f % 2 == 0 else None
        _require_slot(f, mid, w, "suspension.poles")
        half, inc = truncate_model(link_model, f, w)
        return mv_model(half, inc, half, inc, link_model)
    raise StructureError("only closed spaces and suspensions admit cochain models here")


# ---------------------------------------------------------------------------
# the three operations, each formula + model with a consistency gate


def cone_cohomology(
    link: strata.StratifiedSpace, prior, w_rows
) -> tuple[int, ...]:
    """Refined cohomology of the cone, degrees 0 through f.

    Below the middle the answer is the link's refined cohomology, at the
    middle (even f only) it is the chosen subspace, and above it is zero.
    The same dimensions are recomputed from the truncated cochain complex.
    """
    f = strata.dimension(link)
    assignments = strata._prior_assignments(prior)
    link_dims = _dims(link, assignments)
    mid = link_dims[f // 2] if f % 2 == 0 else None
    _require_slot(f, mid, w_rows, "cone.apex")
    formula = _cone_formula(link_dims, f, w_rows)

    model, _ = truncate_model(_model_of(link, assignments), f, w_rows)
    from_model = _pad(model_betti(model), f + 1)
    if from_model != formula:
        raise ConsistencyError(
            f"cone formula {formula} disagrees with truncated complex {from_model}"
        )
    return formula


def suspension_cohomology(
    link: strata.StratifiedSpace, prior, w_plus, w_minus
) -> tuple[int, ...]:
    """Refined cohomology of the suspension, degrees 0 through f+1.

    The two cone halves may carry different middle-degree choices; the
    dimensions come from the rank bookkeeping of the restriction maps to
    the equator, cross-checked against the glued cochain complex.
    """
    f = strata.dimension(link)
    assignments = strata._prior_assignments(prior)
    link_dims = _dims(link, assignments)
    mid = link_dims[f // 2] if f % 2 == 0 else None
    _require_slot(f, mid, w_plus, "suspension.poles")
    _require_slot(f, mid, w_minus, "suspension.poles")
    formula = _suspension_formula(link_dims, f, w_plus, w_minus)

    link_model = _model_of(link, assignments)
    left, left_inc = truncate_model(link_model, f, w_plus)
    right, right_inc = truncate_model(link_model, f, w_minus)
    total = mv_model(left, left_inc, right, right_inc, link_model)
    from_model = _pad(model_betti(total), f + 2)
    if from_model != formula:
        raise ConsistencyError(
            f"suspension formula {formula} disagrees with glued complex {from_model}"
        )
    return formula


def bundle_cohomology(
    space: strata.FlatConeBundle, prior, w_rows
) -> tuple[int, ...]:
    """Refined cohomology of the flat cone bundle, degrees 0 through f+2.

    Twisted circle cohomology is convolved slot by slot with the cone-fiber
    dimensions.  The monodromy datum acts on the middle degree only; other
    slots are treated as untwisted, and reports carry that caveat.  A
    mapping-torus total complex recomputes the same dimensions.
    """
    fiber = space.link
    f = strata.dimension(fiber)
    assignments = strata._prior_assignments(prior)
    cone_dims = cone_cohomology(fiber, assignments, w_rows)
    T = [list(map(linalgq.frac, row)) for row in space.monodromy]
    slots = _bundle_slots(cone_dims, f, T, w_rows)
    formula = _bundle_formula(cone_dims, slots)

    from_model = _pad(model_betti(_wang_model(cone_dims, slots)), f + 3)
    if from_model != formula:
        raise ConsistencyError(
            f"bundle formula {formula} disagrees with mapping-torus complex {from_model}"
        )
    return formula


# ---------------------------------------------------------------------------
# formula-only dispatcher (used by validation and the Witt test)


def _dims(space: strata.StratifiedSpace, assignments) -> tuple[int, ...]:
    if isinstance(space, strata.Closed):
        return tuple(
            simplicial.betti(space.complex, k)
            for k in range(space.complex.dimension + 1)
        )
    if isinstance(space, strata.Cone):
        local = strata.restrict_prior(assignments, "cone.")
        w = assignments.get("cone.apex") if assignments else None
        link = space.link
        f = strata.dimension(link)
        link_dims = _dims(link, local)
        mid = link_dims[f // 2] if f % 2 == 0 else None
        _require_slot(f, mid, w, "cone.apex")
        return _cone_formula(link_dims, f, w) + (0,)
    if isinstance(space, strata.Suspension):
        local = strata.restrict_prior(assignments, "suspension.")
        w = assignments.get("suspension.poles") if assignments else None
        link = space.link
        f = strata.dimension(link)
        link_dims = _dims(link, local)
        mid = link_dims[f // 2] if f % 2 == 0 else None
        _require_slot(f, mid, w, "suspension.poles")
        return _suspension_formula(link_dims, f, w, w)
    if isinstance(space, strata.FlatConeBundle):
        local = strata.restrict_prior(assignments, "bundle.")
        w = assignments.get("bundle.base") if assignments else None
        fiber = space.link
        f = strata.dimension(fiber)
        fiber_dims = _dims(fiber, local)
        mid = fiber_dims[f // 2] if f % 2 == 0 else None
        _require_slot(f, mid, w, "bundle.base")
        cone_dims = _cone_formula(fiber_dims, f, w)
        T = [list(map(linalgq.frac, row)) for row in space.monodromy]
        slots = _bundle_slots(cone_dims, f, T, w)
        return _bundle_formula(cone_dims, slots)
    raise InputError(f"unsupported space {type(space).__name__}")


def middle_dimension(space: strata.StratifiedSpace, prior) -> int:
    """Dimension of the refined middle-degree cohomology.

    Only defined for even-dimensional spaces; the assignments in prior must
    cover every stratum of the space whose choice affects the answer.
    """
    n = strata.dimension(space)
    if n % 2 == 1:
        raise ParityError(f"a {n}-dimensional space has no middle degree")
    dims = _dims(space, strata._prior_assignments(prior))
    return dims[n // 2]


# ---------------------------------------------------------------------------
# reporting


@dataclass(frozen=True)
class ProvenanceNode:
    """How one space's dimensions were obtained, with its links below it."""

    rule: str
    space: str
    dims: tuple[int, ...]
    note: str = ""
    children: tuple["ProvenanceNode", ...] = ()

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        line = f"{pad}{self.space}: dims={list(self.dims)} via {self.rule}"
        if self.note:
            line += f" ({self.note})"
        lines = [line]
        for child in self.children:
            lines.append(child.render(indent + 1))
        return "\n".join(lines)


@dataclass(frozen=True)
class RefinedCohomology:
    space: str
    assignments: str
    dims: tuple[int, ...]
    provenance: ProvenanceNode

    def betti(self, k: int) -> int:
        return self.dims[k] if 0 <= k < len(self.dims) else 0


def describe(space: strata.StratifiedSpace) -> str:
    if isinstance(space, strata.Closed):
        sign = "" if space.orientation == 1 else ",reversed"
        cells = sum(space.complex.f_vector())
        return f"closed(dim={space.complex.dimension},cells={cells}{sign})"
    if isinstance(space, strata.Cone):
        return f"cone({describe(space.link)})"
    if isinstance(space, strata.Suspension):
        return f"suspension({describe(space.link)})"
    if isinstance(space, strata.FlatConeBundle):
        return f"flat_cone_bundle({describe(space.link)})"
    return type(space).__name__


def _describe_assignments(assignments) -> str:
    if not assignments:
        return "none"
    parts = [f"{key}:{len(rows)}" for key, rows in sorted(assignments.items())]
    return ",".join(parts)


WANG_NOTE = (
    "circle-base extension: monodromy twists the middle degree only; "
    "other degrees are treated as untwisted"
)


def _node(space: strata.StratifiedSpace, assignments) -> ProvenanceNode:
    if isinstance(space, strata.Closed):
        dims = _dims(space, {})
        return ProvenanceNode(rule="closed-betti", space=describe(space), dims=dims)
    if isinstance(space, strata.Cone):
        local = strata.restrict_prior(assignments, "cone.")
        w = assignments.get("cone.apex") if assignments else None
        dims = cone_cohomology(space.link, local, w) + (0,)
        child = _node(space.link, local)
        return ProvenanceNode(
            rule="cone-formula",
            space=describe(space),
            dims=dims,
            note="formula and truncated complex agree",
            children=(child,),
        )
    if isinstance(space, strata.Suspension):
        local = strata.restrict_prior(assignments, "suspension.")
        w = assignments.get("suspension.poles") if assignments else None
        dims = suspension_cohomology(space.link, local, w, w)
        child = _node(space.link, local)
        return ProvenanceNode(
            rule="suspension-mayer-vietoris",
            space=describe(space),
            dims=dims,
            note="formula and glued complex agree",
            children=(child,),
        )
    if isinstance(space, strata.FlatConeBundle):
        local = strata.restrict_prior(assignments, "bundle.")
        w = assignments.get("bundle.base") if assignments else None
        dims = bundle_cohomology(space, local, w)
        child = _node(space.link, local)
        return ProvenanceNode(
            rule="bundle-wang",
            space=describe(space),
            dims=dims,
            note=WANG_NOTE,
            children=(child,),
        )
    raise InputError(f"unsupported space {type(space).__name__}")


def refined_cohomology(
    space: strata.StratifiedSpace, m=None, crosscheck_ip=None
) -> RefinedCohomology:
    """Refined cohomology of a stratified space under an assignment choice.

    The assignments are validated first, so the typed errors from the
    validation layer surface here as well.  When crosscheck_ip is given and
    the space is closed, a combinatorial spectrum computation under that
    inner product must report matching kernel multiplicities.
    """
    from . import mezzo

    mz = mezzo.as_mezzoperversity(m)
    mezzo.require_valid(space, mz)
    node = _node(space, mz.assignments)
    if crosscheck_ip is not None and isinstance(space, strata.Closed):
        from . import hodge

        for k, expected in enumerate(node.dims):
            row = hodge.spectrum(space.complex, crosscheck_ip, k)
            if row.zero_multiplicity != expected:
                raise ConsistencyError(
                    f"degree {k}: spectrum kernel multiplicity "
                    f"{row.zero_multiplicity} != dimension {expected}"
                )
    return RefinedCohomology(
        space=describe(space),
        assignments=_describe_assignments(mz.assignments),
        dims=node.dims,
        provenance=node,
    )


def _pad(t: tuple[int, ...], n: int) -> tuple[int, ...]:
    if len(t) > n:
        if any(t[n:]):
            raise ConsistencyError(f"unexpected dimensions above degree {n - 1}: {t}")
        return t[:n]
    return t + (0,) * (n - len(t))
