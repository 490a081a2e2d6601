"""Indicial roots from link spectra, scaling checks, and weight gaps.

The cone variable contributes a one-parameter family of model problems; its
candidate indicial roots are read off the link data.  Degrees with kernel
contribute the rational roots -k and k-f, every nonzero eigenvalue mu at
degree k contributes -f/2 + a/2 + b*sqrt((k - f/2 + a/2)^2 + mu) for the
four independent sign choices a, b.  The set is a containment certificate:
every actual indicial root lies in it, but membership of each candidate is
not decided here.

Roots are kept exact as rational + rational * sqrt(rational), so resonance
detection and window membership never depend on floating-point rounding.
Floating inputs are converted to their exact binary values first.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .linalgq import frac
from .errors import ConsistencyError, InputError, ResonanceError


# ---------------------------------------------------------------------------
# exact quadratic values


@dataclass(frozen=True)
class QuadVal:
    """Exact number rational + coeff * sqrt(radicand).

    Normalized: radicand is zero exactly when the value is rational, and is
    never a perfect square otherwise.  Build through quadval().
    """

    rational: Fraction
    coeff: Fraction = Fraction(0)
    radicand: Fraction = Fraction(0)

    @property
    def is_rational(self) -> bool:
        return self.radicand == 0

    def shifted(self, r) -> "QuadVal":
        return QuadVal(self.rational + frac(r), self.coeff, self.radicand)

    def __neg__(self) -> "QuadVal":
        return QuadVal(-self.rational, -self.coeff, self.radicand)

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) * math.sqrt(
            float(self.radicand)
        )


def _exact_sqrt(r: Fraction) -> Fraction | None:
    pn = math.isqrt(r.numerator)
    pd = math.isqrt(r.denominator)
    if pn * pn == r.numerator and pd * pd == r.denominator:
        return Fraction(pn, pd)
    return None


def quadval(rational, coeff=0, radicand=0) -> QuadVal:
    a, c, r = frac(rational), frac(coeff), frac(radicand)
    if r < 0:
        raise InputError(f"negative radicand {r}")
    if c == 0 or r == 0:
        return QuadVal(a, Fraction(0), Fraction(0))
    s = _exact_sqrt(r)
    if s is not None:
        return QuadVal(a + c * s, Fraction(0), Fraction(0))
    return QuadVal(a, c, r)


def _sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_one_radical(A: Fraction, B: Fraction, r: Fraction) -> int:
    """Sign of A + B*sqrt(r) for r >= 0."""
    if B == 0 or r == 0:
        return _sgn(A)
    if A == 0:
        return _sgn(B)
    if (A > 0) == (B > 0):
        return _sgn(A)
    d = A * A - B * B * r
    if d == 0:
        return 0
    return _sgn(A) if d > 0 else _sgn(B)


def _in_field(x: QuadVal, y: QuadVal) -> tuple[Fraction, Fraction] | None:
    """Write y as a + c*sqrt(x.radicand) when the two fields coincide."""
    if y.radicand == 0:
        return (y.rational, Fraction(0))
    if x.radicand == 0:
        return None
    if y.radicand == x.radicand:
        return (y.rational, y.coeff)
    s = _exact_sqrt(x.radicand * y.radicand)
    if s is None:
        return None
    return (y.rational, y.coeff * s / x.radicand)


def same_value(x: QuadVal, y: QuadVal) -> bool:
    t = _in_field(x, y)
    return t is not None and t == (x.rational, x.coeff)


def compare(x: QuadVal, y: QuadVal) -> int:
    """Exact three-way comparison, -1/0/1."""
    t = _in_field(x, y)
    if t is not None:
        a, c = t
        return _sign_one_radical(x.rational - a, x.coeff - c, x.radicand)
    if x.radicand == 0:
        return _sign_one_radical(x.rational - y.rational, -y.coeff, y.radicand)
    # independent radicals: sign of A + B*sqrt(r1) + C*sqrt(r2)
    A = x.rational - y.rational
    B, r1 = x.coeff, x.radicand
    C, r2 = -y.coeff, y.radicand
    if (B > 0) == (C > 0):
        s_sign = _sgn(B)
    else:
        # B^2 r1 = C^2 r2 would make sqrt(r1 r2) rational, excluded above
        s_sign = _sgn(B) if B * B * r1 > C * C * r2 else _sgn(C)
    if A == 0:
        return s_sign
    if _sgn(A) == s_sign:
        return _sgn(A)
    # |A| against |B*sqrt(r1) + C*sqrt(r2)| via the squared difference
    d = _sign_one_radical(B * B * r1 + C * C * r2 - A * A, 2 * B * C, r1 * r2)
    if d == 0:
        return 0
    return s_sign if d > 0 else _sgn(A)


_VALUE_KEY = cmp_to_key(compare)


def render_value(v: QuadVal) -> str:
    if v.is_rational:
        return str(v.rational)
    return f"{float(v):.12g}"


# ---------------------------------------------------------------------------
# spectrum input


def _split_row(k: int, row) -> tuple[int, list[Fraction]]:
    eig = getattr(row, "eigenvalues", None)
    if eig is not None:
        thr = frac(getattr(row, "zero_threshold", 0))
        claimed = int(row.zero_multiplicity)
        vals = [frac(x) for x in eig]
        if any(v < -thr for v in vals):
            raise InputError(f"negative eigenvalue at degree {k}")
        zeros = sum(1 for v in vals if abs(v) <= thr)
        if zeros != claimed:
            raise ConsistencyError(
                f"degree {k}: {zeros} eigenvalues below threshold but zero "
                f"multiplicity claims {claimed}"
            )
        betti = getattr(row, "betti", claimed)
        if betti != claimed:
            raise ConsistencyError(
                f"degree {k}: zero multiplicity {claimed} != kernel dimension "
                f"{betti}"
            )
        return claimed, [v for v in vals if v > thr]
    vals = [frac(x) for x in row]
    if any(v < 0 for v in vals):
        raise InputError(f"negative eigenvalue at degree {k}")
    return sum(1 for v in vals if v == 0), [v for v in vals if v > 0]


def _degree_data(spectra, f: int) -> list[tuple[int, list[Fraction]]]:
    """(zero multiplicity, nonzero eigenvalues) for each degree 0..f."""
    if isinstance(spectra, Mapping):
        items = {int(k): row for k, row in spectra.items()}
    else:
        items = {k: row for k, row in enumerate(spectra)}
    for k in items:
        if not 0 <= k <= f:
            raise InputError(f"spectrum degree {k} outside 0..{f}")
    return [
        _split_row(k, items[k]) if k in items else (0, [])
        for k in range(f + 1)
    ]


# ---------------------------------------------------------------------------
# root sets


@dataclass(frozen=True)
class RootSource:
    """One clause instance contributing a root."""

    kind: str  # "harmonic" | "nonharmonic"
    degree: int
    eigenvalue: Fraction | None = None
    signs: tuple[int, int] | None = None


@dataclass(frozen=True)
class IndicialRoot:
    value: QuadVal
    multiplicity: int
    sources: tuple[RootSource, ...]


@dataclass(frozen=True)
class IndicialRootSet:
    """Candidate roots over an f-dimensional link, ascending within each part.

    The harmonic part is a set, one entry per distinct rational value; the
    nonharmonic part is a multiset whose multiplicities count repeated
    eigenvalues and coinciding sign choices.
    """

    f: int
    harmonic: tuple[IndicialRoot, ...]
    nonharmonic: tuple[IndicialRoot, ...]

    @property
    def harmonic_roots(self) -> tuple[Fraction, ...]:
        return tuple(e.value.rational for e in self.harmonic)

    def values(self) -> tuple[QuadVal, ...]:
        """All distinct-entry values, both parts together, ascending."""
        vals = [e.value for e in self.harmonic + self.nonharmonic]
        return tuple(sorted(vals, key=_VALUE_KEY))

    def floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values())


def indicial_roots(spectra, f: int) -> IndicialRootSet:
    """Candidate indicial roots from per-degree link spectra.

    spectra is a mapping or sequence over degrees 0..f; each entry is either
    a sorted list of nonnegative numbers (exact zeros mark the kernel) or a
    spectrum row carrying eigenvalues, zero threshold and zero multiplicity.
    Claimed zero multiplicities are cross-checked against the eigenvalues.
    """
    if f < 0:
        raise InputError(f"link dimension must be nonnegative, got {f}")
    data = _degree_data(spectra, f)

    harm: dict[Fraction, list[RootSource]] = {}
    for k, (zeros, _) in enumerate(data):
        if zeros > 0:
            for val in (Fraction(-k), Fraction(k - f)):
                harm.setdefault(val, []).append(RootSource("harmonic", k))
    harmonic = tuple(
        IndicialRoot(quadval(v), len(harm[v]), tuple(harm[v]))
        for v in sorted(harm)
    )

    entries: list[tuple[QuadVal, list[RootSource]]] = []
    half = Fraction(1, 2)
    for k, (_, mus) in enumerate(data):
        for mu in mus:
            for a in (1, -1):
                inner = k - Fraction(f, 2) + a * half
                rad = inner * inner + mu
                for b in (1, -1):
                    val = quadval(-Fraction(f, 2) + a * half, b, rad)
                    src = RootSource("nonharmonic", k, mu, (a, b))
                    for existing, sources in entries:
                        if same_value(existing, val):
                            sources.append(src)
                            break
                    else:
                        entries.append((val, [src]))
    entries.sort(key=cmp_to_key(lambda s, t: compare(s[0], t[0])))
    nonharmonic = tuple(
        IndicialRoot(v, len(sources), tuple(sources)) for v, sources in entries
    )
    return IndicialRootSet(f, harmonic, nonharmonic)


# ---------------------------------------------------------------------------
# the scaling criterion


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of the middle-degree eigenvalue bound.

    For even f every nonzero eigenvalue at degrees within one of f/2 must
    strictly exceed 3/4 (the window is closed); for odd f the eigenvalues at
    the two degrees next to f/2 must reach 1 (the window is open, so equality
    passes).  scale_factor is the smallest eigenvalue scaling that makes the
    bound hold, 1 when it already does; for a strict bound it is an infimum,
    see sufficient_factor.  The window fields record the independent check
    that no root other than the permitted ones lies within 1/2 of -f/2.
    """

    suitably_scaled: bool
    violations: tuple[tuple[int, Fraction], ...]
    scale_factor: Fraction
    metric_rescale: float
    window_ok: bool
    window_roots: tuple[QuadVal, ...]
    threshold: Fraction
    strict: bool
    note: str | None = None

    @property
    def sufficient_factor(self) -> Fraction:
        """A factor that certainly restores the bound after scaling."""
        if self.strict and not self.suitably_scaled:
            return self.scale_factor * (1 + Fraction(1, 1024))
        return self.scale_factor


def suitably_scaled(spectra, f: int) -> ScalingReport:
    if f < 0:
        raise InputError(f"link dimension must be nonnegative, got {f}")
    data = _degree_data(spectra, f)
    if f % 2 == 0:
        relevant = [j for j in range(f + 1) if abs(j - f // 2) <= 1]
        threshold, strict = Fraction(3, 4), True
    else:
        relevant = [(f - 1) // 2, (f + 1) // 2]
        threshold, strict = Fraction(1), False
    pool = [(j, mu) for j in relevant for mu in data[j][1]]
    note = None
    if not pool:
        note = "no nonzero eigenvalues at the middle degrees; vacuous pass"
    violations = tuple(
        (j, mu)
        for j, mu in pool
        if (mu <= threshold if strict else mu < threshold)
    )
    ok = not violations
    if ok:
        scale = Fraction(1)
    else:
        scale = threshold / min(mu for _, mu in pool)
        if strict:
            note = (
                "the bound is strict, so the reported scale factor is an "
                "infimum; any larger factor passes"
            )

    roots = indicial_roots(spectra, f)
    center = -Fraction(f, 2)
    lo = quadval(center - Fraction(1, 2))
    hi = quadval(center + Fraction(1, 2))
    allowed = [quadval(center)] if f % 2 == 0 else [lo, hi]
    window = tuple(
        v
        for v in roots.values()
        if compare(lo, v) <= 0 and compare(v, hi) <= 0
    )
    window_ok = all(any(same_value(v, w) for w in allowed) for v in window)
    if window_ok != ok:
        raise ConsistencyError(
            "eigenvalue bound and root-window check disagree: "
            f"bound {'passes' if ok else 'fails'} but window contains "
            f"{[render_value(v) for v in window]}"
        )
    return ScalingReport(
        ok,
        violations,
        scale,
        1.0 / math.sqrt(float(scale)),
        window_ok,
        window,
        threshold,
        strict,
        note,
    )


# ---------------------------------------------------------------------------
# weight gaps


@dataclass(frozen=True)
class WeightGap:
    """Distances from the shifted weight line to the nearest roots.

    An empty side is reported as math.inf.
    """

    delta: Fraction
    eta_plus: float
    eta_minus: float


def weight_gaps(roots: IndicialRootSet, delta) -> WeightGap:
    """Gap sizes eta+/eta- for the line at delta - (f+1)/2.

    A root exactly on the line is a resonance and raises; the check is
    exact, so a rational delta can never collide with an irrational root.
    """
    d = frac(delta)
    line = d - Fraction(roots.f + 1, 2)
    line_val = quadval(line)
    above = None
    below = None
    for v in roots.values():
        c = compare(v, line_val)
        if c == 0:
            raise ResonanceError(
                f"weight {d} puts the line at {line}, which is the indicial "
                f"root {render_value(v)}"
            )
        if c > 0 and (above is None or compare(v, above) < 0):
            above = v
        if c < 0 and (below is None or compare(v, below) > 0):
            below = v
    eta_plus = float(above.shifted(-line)) if above is not None else math.inf
    eta_minus = float((-below).shifted(line)) if below is not None else math.inf
    return WeightGap(d, eta_plus, eta_minus)
