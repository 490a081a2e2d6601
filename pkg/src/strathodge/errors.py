"""Exception taxonomy.

Errors fall in two CLI buckets: :class:`InputError` subtypes mean the
request could not be interpreted (exit code 2), everything else derived
from :class:`ValidationError` means the data was understood but fails a
mathematical requirement (exit code 1).
"""


class StrathodgeError(Exception):
    pass


class InputError(StrathodgeError):
    """Malformed files, unknown keys, unparsable rationals, bad references."""


class UnknownStratumError(InputError):
    """A mezzoperversity or report references a stratum id that does not exist."""


class ValidationError(StrathodgeError):
    pass


class StructureError(ValidationError):
    """Complex is not a closed pseudomanifold (or otherwise malformed)."""


class OrientabilityError(ValidationError):
    """Orientation propagation met an inconsistency; names a violating pair."""


class MetricError(ValidationError):
    """Inner product data is not symmetric positive-definite or sized wrong."""


class NumericError(ValidationError):
    """Float result contradicts an exact rational anchor (hard error)."""


class DependencyError(ValidationError):
    """A required shallower stratum assignment is missing."""


class SuperfluousAssignmentError(ValidationError):
    """An assignment was given at a Witt stratum."""


class MissingAssignmentError(ValidationError):
    """A non-Witt stratum has no assignment."""


class FlatnessError(ValidationError):
    """A subspace is not invariant under a monodromy generator."""


class RankError(ValidationError):
    """A subspace matrix does not have full rank."""


class DegeneracyError(ValidationError):
    """An intersection form expected to be nondegenerate is singular."""


class ParityError(ValidationError):
    """A middle-degree operation was requested in the wrong dimension parity."""


class ResonanceError(ValidationError):
    """An indicial root lies exactly on the chosen weight line."""


class SelfDualityError(ValidationError):
    """An operation requiring a self-dual mezzoperversity got a non-self-dual one."""


class UnsupportedError(ValidationError):
    """Requested computation falls outside the supported grammar."""


class ConsistencyError(StrathodgeError):
    """Two independent computation paths disagreed; indicates a bug."""
