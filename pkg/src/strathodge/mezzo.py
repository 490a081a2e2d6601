"""Mezzoperversity values: boundary-condition subspaces at non-Witt strata,
their validation, the zero/full extremes, and circle local systems.

A subspace is stored as a tuple of basis row vectors with rational entries,
written in the canonical basis of the middle refined cohomology of the link
computed with the shallower assignments.  Flatness is exact rational rank
arithmetic, never a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalgq, strata
from .errors import (
    DependencyError,
    FlatnessError,
    InputError,
    MissingAssignmentError,
    RankError,
    StructureError,
    SuperfluousAssignmentError,
    UnknownStratumError,
    UnsupportedError,
    ValidationError,
)

Rows = tuple


def _freeze_rows(value: Sequence[Sequence]) -> Rows:
    rows = tuple(tuple(linalgq.frac(x) for x in row) for row in value)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InputError("subspace rows have inconsistent lengths")
    return rows


@dataclass(frozen=True)
class Mezzoperversity:
    """Map from stratum id to a subspace given by basis rows; the empty tuple
    is the explicit zero subspace, absence of a key means nothing chosen."""

    assignments: Mapping[str, Rows] = field(default_factory=dict)

    def __post_init__(self):
        clean = {str(k): _freeze_rows(v) for k, v in self.assignments.items()}
        object.__setattr__(self, "assignments", clean)

    def subspace(self, stratum_id: str) -> Rows | None:
        return self.assignments.get(stratum_id)


def as_mezzoperversity(value) -> Mezzoperversity:
    if isinstance(value, Mezzoperversity):
        return value
    if value is None:
        return Mezzoperversity({})
    return Mezzoperversity(dict(value))


@dataclass(frozen=True)
class LocalSystem:
    fiber_dimension: int
    monodromy: tuple

    def __post_init__(self):
        mats = tuple(strata._freeze_matrix(m) for m in self.monodromy)
        for m in mats:
            if len(m) != self.fiber_dimension:
                raise InputError(
                    f"monodromy is {len(m)}x{len(m)}, fiber dimension is "
                    f"{self.fiber_dimension}"
                )
        object.__setattr__(self, "monodromy", mats)


def circle_twisted_cohomology(ls: LocalSystem) -> tuple[int, int]:
    """(dim H^0, dim H^1) of the rank-n local system on S^1: kernel and
    cokernel of T - I for the single monodromy generator T."""
    if len(ls.monodromy) != 1:
        raise UnsupportedError(
            f"base must be a circle with one monodromy generator, got "
            f"{len(ls.monodromy)}"
        )
    T = ls.monodromy[0]
    n = ls.fiber_dimension
    TmI = [[T[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    r = linalgq.rank(TmI)
    return (n - r, n - r)


@dataclass(frozen=True)
class StratumCheck:
    stratum_id: str
    depth: int
    f: int
    status: str  # "witt" | "non_witt" | "unknown"
    ambient_dim: int | None
    assigned_dim: int | None
    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    unknown_ids: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.unknown_ids and all(c.ok for c in self.checks)

    def problems(self):
        for sid in self.unknown_ids:
            yield sid, "unknown-stratum", f"no stratum named {sid!r}"
        for c in self.checks:
            for kind, message in c.problems:
                yield c.stratum_id, kind, message


_PROBLEM_ERRORS = {
    "unknown-stratum": UnknownStratumError,
    "superfluous": SuperfluousAssignmentError,
    "missing": MissingAssignmentError,
    "dependency": DependencyError,
    "rank": RankError,
    "compatibility": StructureError,
    "flatness": FlatnessError,
    "monodromy-size": InputError,
}


def validate(space, m) -> ValidationReport:
    """Check every stratum's assignment; collects problems instead of raising."""
    m = as_mezzoperversity(m)
    singular = strata.singular_strata(space)
    known = {s.id for s in singular}
    unknown = tuple(sorted(k for k in m.assignments if k not in known))
    checks = []
    for s in singular:
        checks.append(_check_stratum(s, m))
    return ValidationReport(tuple(checks), unknown)


def _check_stratum(s: strata.Stratum, m: Mezzoperversity) -> StratumCheck:
    rows = m.subspace(s.id)
    assigned_dim = None if rows is None else len(rows)
    problems = []
    try:
        status = strata.witt_status(s, m)
    except DependencyError as err:
        return StratumCheck(
            s.id, s.depth, s.f, "unknown", None, assigned_dim,
            (("dependency", str(err)),),
        )
    ambient = status.middle_dim if not status.is_witt else (
        None if s.f % 2 == 1 else 0
    )
    if status.is_witt:
        if rows is not None:
            problems.append(
                ("superfluous", f"stratum {s.id!r} is Witt; no subspace may be chosen")
            )
        return StratumCheck(
            s.id, s.depth, s.f, "witt", ambient, assigned_dim, tuple(problems)
        )
    if rows is None:
        problems.append(
            ("missing", f"non-Witt stratum {s.id!r} needs a subspace assignment")
        )
        return StratumCheck(
            s.id, s.depth, s.f, "non_witt", ambient, None, tuple(problems)
        )
    if any(len(r) != ambient for r in rows):
        problems.append(
            (
                "compatibility",
                f"stratum {s.id!r}: vectors have length "
                f"{sorted({len(r) for r in rows})}, ambient middle dimension is "
                f"{ambient}",
            )
        )
        return StratumCheck(
            s.id, s.depth, s.f, "non_witt", ambient, assigned_dim, tuple(problems)
        )
    dense = [list(r) for r in rows]
    if rows and linalgq.rank(dense) != len(rows):
        problems.append(
            ("rank", f"stratum {s.id!r}: basis rows are linearly dependent")
        )
    elif s.monodromy is not None:
        problems.extend(_flatness_problems(s, rows, ambient))
    return StratumCheck(
        s.id, s.depth, s.f, "non_witt", ambient, assigned_dim, tuple(problems)
    )


def _flatness_problems(s: strata.Stratum, rows: Rows, ambient: int):
    generators = (s.monodromy,) if s.monodromy is not None else ()
    for gi, T in enumerate(generators):
        if len(T) != ambient:
            yield (
                "monodromy-size",
                f"stratum {s.id!r}: monodromy is {len(T)}x{len(T)}, ambient "
                f"middle dimension is {ambient}",
            )
            continue
        if not rows:
            continue
        dense = [list(r) for r in rows]
        moved = [linalgq.mat_vec([list(tr) for tr in T], list(r)) for r in rows]
        if linalgq.rank(dense + moved) != len(rows):
            bad = _violating_vector_index(T, rows)
            yield (
                "flatness",
                f"stratum {s.id!r}: generator {gi} moves basis vector {bad} out "
                f"of the subspace",
            )


def _violating_vector_index(T, rows) -> int:
    span = linalgq.subspace_rref([list(r) for r in rows])
    for i, r in enumerate(rows):
        image = linalgq.mat_vec([list(tr) for tr in T], list(r))
        if not linalgq.subspace_contains(span, image):
            return i
    return 0


def require_valid(space, m) -> ValidationReport:
    """validate(), but raise the first problem as its typed error."""
    report = validate(space, m)
    if report.ok:
        return report
    sid, kind, message = next(report.problems())
    raise _PROBLEM_ERRORS.get(kind, ValidationError)(message)


def extreme_mezzoperversity(space, which: str) -> Mezzoperversity:
    """The zero or full choice at every non-Witt stratum; both always flat."""
    if which not in ("zero", "full"):
        raise InputError(f"which must be 'zero' or 'full', got {which!r}")
    assignments: dict[str, Rows] = {}
    for s in sorted(strata.singular_strata(space), key=lambda s: (s.depth, s.id)):
        status = strata.witt_status(s, assignments)
        if status.is_witt:
            continue
        n = status.middle_dim
        if which == "zero":
            assignments[s.id] = ()
        else:
            assignments[s.id] = tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
            )
    return Mezzoperversity(assignments)
