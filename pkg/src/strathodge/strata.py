"""Stratified-space grammar: closed manifolds, cones, suspensions, and flat
cone bundles over a circle, with stratum enumeration and Witt checking.

Spaces are immutable recursive values.  Singular strata are addressed by path
ids like "cone.apex" or "cone.suspension.poles"; the regular part appears in
enumerations as a depth-0 marker with no link.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import linalgq
from .errors import DependencyError, InputError, StructureError
from .simplicial import SimplicialComplex

Matrix = tuple


def _freeze_matrix(m: Sequence[Sequence]) -> Matrix:
    rows = tuple(tuple(linalgq.frac(x) for x in row) for row in m)
    if not rows:
        raise InputError("monodromy matrix is empty")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("monodromy matrix is not square")
    if linalgq.rank([list(r) for r in rows]) != n:
        raise InputError("monodromy matrix is singular")
    return rows


@dataclass(frozen=True)
class Closed:
    """A closed space presented by a triangulation; orientation is +1 or -1."""

    complex: SimplicialComplex
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise InputError("orientation must be +1 or -1")


@dataclass(frozen=True)
class Cone:
    link: "StratifiedSpace"

    def __post_init__(self):
        _require_closed_link(self.link, "cone")


@dataclass(frozen=True)
class Suspension:
    link: "StratifiedSpace"

    def __post_init__(self):
        _require_closed_link(self.link, "suspension")


@dataclass(frozen=True)
class FlatConeBundle:
    """Mapping torus over S^1 of the cone on `link`, with cone fibers glued by
    a monodromy acting on the middle-degree refined cohomology of the link."""

    link: "StratifiedSpace"
    monodromy: Matrix

    def __post_init__(self):
        _require_closed_link(self.link, "flat cone bundle")
        object.__setattr__(self, "monodromy", _freeze_matrix(self.monodromy))


StratifiedSpace = Union[Closed, Cone, Suspension, FlatConeBundle]


def _require_closed_link(link, who: str) -> None:
    """Links are closed spaces: Closed or iterated Suspension of one."""
    if isinstance(link, (Closed, Suspension)):
        return
    if isinstance(link, (Cone, FlatConeBundle)):
        raise StructureError(
            f"the link of a {who} must be closed; cones and cone bundles are not"
        )
    raise InputError(f"unsupported link value {link!r}")


def dimension(space: StratifiedSpace) -> int:
    if isinstance(space, Closed):
        return space.complex.dimension
    if isinstance(space, (Cone, Suspension)):
        return dimension(space.link) + 1
    if isinstance(space, FlatConeBundle):
        return dimension(space.link) + 2
    raise InputError(f"unsupported space value {space!r}")


def depth(space: StratifiedSpace) -> int:
    if isinstance(space, Closed):
        return 0
    return depth(space.link) + 1


@dataclass(frozen=True)
class Stratum:
    """One stratum; `link` is None exactly for the depth-0 regular marker.

    child_prefix is the ambient id prefix under which the link's own strata
    appear, used to restrict mezzoperversity assignments to the link.
    """

    id: str
    depth: int
    link: StratifiedSpace | None
    f: int | None
    child_prefix: str = ""
    monodromy: Matrix | None = None


REGULAR_ID = "regular"


def enumerate_strata(space: StratifiedSpace) -> list[Stratum]:
    """All strata, regular marker first, then singular by increasing depth."""
    out = [Stratum(REGULAR_ID, 0, None, None)] + _singular(space, "")
    out[1:] = sorted(out[1:], key=lambda s: (s.depth, s.id))
    return out


def singular_strata(space: StratifiedSpace) -> list[Stratum]:
    return enumerate_strata(space)[1:]


def _singular(space: StratifiedSpace, prefix: str) -> list[Stratum]:
    if isinstance(space, Closed):
        return []
    if isinstance(space, Cone):
        own = Stratum(
            prefix + "cone.apex",
            depth(space),
            space.link,
            dimension(space.link),
            prefix + "cone.",
        )
        return [own] + _singular(space.link, prefix + "cone.")
    if isinstance(space, Suspension):
        # both suspension points carry the same link and the same choice of
        # boundary data, so they are a single stratum with two components
        own = Stratum(
            prefix + "suspension.poles",
            depth(space),
            space.link,
            dimension(space.link),
            prefix + "suspension.",
        )
        return [own] + _singular(space.link, prefix + "suspension.")
    if isinstance(space, FlatConeBundle):
        own = Stratum(
            prefix + "bundle.base",
            depth(space),
            space.link,
            dimension(space.link),
            prefix + "bundle.",
            monodromy=space.monodromy,
        )
        return [own] + _singular(space.link, prefix + "bundle.")
    raise InputError(f"unsupported space value {space!r}")


def find_stratum(space: StratifiedSpace, stratum_id: str) -> Stratum:
    for s in enumerate_strata(space):
        if s.id == stratum_id:
            return s
    from .errors import UnknownStratumError

    raise UnknownStratumError(f"no stratum named {stratum_id!r}")


@dataclass(frozen=True)
class WittStatus:
    status: str  # "witt" | "non_witt"
    middle_dim: int | None = None

    @property
    def is_witt(self) -> bool:
        return self.status == "witt"


def _prior_assignments(prior) -> Mapping[str, object]:
    if prior is None:
        return {}
    assignments = getattr(prior, "assignments", None)
    if assignments is not None:
        return assignments
    return prior


def restrict_prior(prior, child_prefix: str) -> dict:
    """Re-key ambient assignments to a link's own stratum ids."""
    out = {}
    for key, val in _prior_assignments(prior).items():
        if key.startswith(child_prefix):
            out[key[len(child_prefix):]] = val
    return out


def witt_status(stratum: Stratum, prior=None) -> WittStatus:
    """Witt iff the link dimension is odd or its middle refined cohomology,
    computed with the shallower boundary conditions in `prior`, vanishes."""
    if stratum.link is None:
        raise InputError("the regular stratum has no Witt status")
    f = stratum.f
    if f % 2 == 1:
        return WittStatus("witt")
    local = restrict_prior(prior, stratum.child_prefix)
    _check_prior_coverage(stratum, local)
    from . import refined

    mid = refined.middle_dimension(stratum.link, local)
    if mid == 0:
        return WittStatus("witt", 0)
    return WittStatus("non_witt", mid)


def _check_prior_coverage(stratum: Stratum, local: Mapping) -> None:
    for sub in singular_strata(stratum.link):
        status = witt_status(sub, local)
        if not status.is_witt and sub.id not in local:
            raise DependencyError(
                f"middle cohomology of the link of {stratum.id!r} needs an "
                f"assignment at its stratum {sub.id!r} first"
            )
