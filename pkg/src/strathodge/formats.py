"""Input files for the command line: spaces, subspace choices, metrics.

All files are JSON.  Exact data (subspace rows, monodromy entries, weights
of cohomology classes) writes rationals as strings like "2/3" or plain
integers; floats are rejected on those paths so file input cannot leak
rounding into rational arithmetic.  Metric weights are numeric and may be
floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import complexes, hodge, strata
from .errors import InputError
from .simplicial import SimplicialComplex


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(
            f"{where}: floats are not accepted here; write a rational "
            f'string like "2/3"'
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: cannot parse rational {value!r}") from None
    raise InputError(f"{where}: expected a rational, got {type(value).__name__}")


def rational_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_number(value, where: str) -> float:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        return float(parse_rational(value, where))
    raise InputError(f"{where}: expected a number, got {type(value).__name__}")


def load_json(path) -> object:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{p}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _one_key(obj, where: str) -> tuple[str, object]:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"{where}: expected an object with exactly one key")
    return next(iter(obj.items()))


_NAMED_COMPLEXES = {
    "circle3": lambda: complexes.circle(3),
    "sphere2": complexes.sphere2,
    "torus7": complexes.torus7,
    "projective_plane6": complexes.projective_plane6,
    "projective_plane9": complexes.projective_plane_complex9,
}


def build_complex(obj, where: str = "complex") -> SimplicialComplex:
    """Recursive complex spec: named builders, constructors, combinators.

    Forms: {"named": "torus7"}, {"circle": n}, {"simplex_boundary": n},
    {"product": [a, b]}, {"barycentric": a}, or an explicit triangulation
    {"vertices": [...], "simplices": [[...], ...]} (vertices optional).
    """
    if isinstance(obj, str):
        obj = {"named": obj}
    if isinstance(obj, dict) and "simplices" in obj:
        simplices = obj["simplices"]
        if not isinstance(simplices, list) or not all(
            isinstance(s, list) and all(isinstance(v, (str, int)) for v in s)
            for s in simplices
        ):
            raise InputError(f"{where}: simplices must be lists of vertex names")
        simplices = [[str(v) for v in s] for s in simplices]
        vertices = obj.get("vertices")
        if vertices is None:
            vertices = sorted({v for s in simplices for v in s})
        else:
            vertices = [str(v) for v in vertices]
        extra = set(obj) - {"vertices", "simplices"}
        if extra:
            raise InputError(f"{where}: unexpected keys {sorted(extra)}")
        return SimplicialComplex(vertices, simplices)
    kind, val = _one_key(obj, where)
    if kind == "named":
        builder = _NAMED_COMPLEXES.get(val)
        if builder is None:
            raise InputError(
                f"{where}: unknown complex name {val!r}; known: "
                f"{', '.join(sorted(_NAMED_COMPLEXES))}"
            )
        return builder()
    if kind == "circle":
        if not isinstance(val, int) or val < 3:
            raise InputError(f"{where}: circle needs an integer vertex count >= 3")
        return complexes.circle(val)
    if kind == "simplex_boundary":
        if not isinstance(val, int) or val < 1:
            raise InputError(f"{where}: simplex_boundary needs a positive integer")
        return complexes.simplex_boundary_sphere(val)
    if kind == "product":
        if not isinstance(val, list) or len(val) != 2:
            raise InputError(f"{where}: product needs a two-element list")
        return complexes.product(
            build_complex(val[0], where + ".product[0]"),
            build_complex(val[1], where + ".product[1]"),
        )
    if kind == "barycentric":
        return complexes.barycentric(build_complex(val, where + ".barycentric"))
    raise InputError(f"{where}: unknown complex form {kind!r}")


def _parse_rows(value, where: str) -> tuple:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise InputError(f"{where}: expected a list of rows")
    return tuple(
        tuple(parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(value)
    )


def build_space(obj, where: str = "space"):
    """Space spec: closed, cone, suspension, or flat_cone_bundle."""
    kind, val = _one_key(obj, where)
    if not isinstance(val, dict):
        raise InputError(f"{where}.{kind}: expected an object")
    if kind == "closed":
        extra = set(val) - {"complex", "orientation"}
        if extra:
            raise InputError(f"{where}.closed: unexpected keys {sorted(extra)}")
        if "complex" not in val:
            raise InputError(f"{where}.closed: missing 'complex'")
        orientation = val.get("orientation", 1)
        if orientation not in (1, -1):
            raise InputError(f"{where}.closed: orientation must be 1 or -1")
        return strata.Closed(
            build_complex(val["complex"], where + ".closed.complex"), orientation
        )
    if kind in ("cone", "suspension"):
        extra = set(val) - {"link"}
        if extra:
            raise InputError(f"{where}.{kind}: unexpected keys {sorted(extra)}")
        if "link" not in val:
            raise InputError(f"{where}.{kind}: missing 'link'")
        link = build_space(val["link"], f"{where}.{kind}.link")
        return strata.Cone(link) if kind == "cone" else strata.Suspension(link)
    if kind == "flat_cone_bundle":
        extra = set(val) - {"link", "monodromy"}
        if extra:
            raise InputError(f"{where}.{kind}: unexpected keys {sorted(extra)}")
        if "link" not in val or "monodromy" not in val:
            raise InputError(f"{where}.{kind}: needs 'link' and 'monodromy'")
        link = build_space(val["link"], f"{where}.{kind}.link")
        rows = _parse_rows(val["monodromy"], f"{where}.{kind}.monodromy")
        return strata.FlatConeBundle(link, rows)
    raise InputError(
        f"{where}: unknown space kind {kind!r}; expected closed, cone, "
        f"suspension, or flat_cone_bundle"
    )


def load_space(path):
    return build_space(load_json(path), str(path))


def load_mezzoperversity(path) -> dict:
    """Stratum id -> tuple of rational basis rows."""
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected an object mapping stratum ids to rows")
    return {
        str(key): _parse_rows(rows, f"{path}:{key}") for key, rows in obj.items()
    }


@dataclass(frozen=True)
class MetricSpec:
    kind: str  # "identity" | "diagonal"
    weights: dict | None = None

    def ip(self) -> hodge.InnerProductFamily:
        if self.kind == "identity":
            return hodge.identity_ip()
        return hodge.diagonal_ip(self.weights or {})


def load_metric(path) -> MetricSpec:
    obj = load_json(path)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f"{path}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "identity":
        extra = set(obj) - {"kind"}
        if extra:
            raise InputError(f"{path}: unexpected keys {sorted(extra)}")
        return MetricSpec("identity")
    if kind == "diagonal":
        extra = set(obj) - {"kind", "weights"}
        if extra:
            raise InputError(f"{path}: unexpected keys {sorted(extra)}")
        raw = obj.get("weights")
        if not isinstance(raw, dict):
            raise InputError(f"{path}: diagonal metric needs a 'weights' object")
        weights = {}
        for key, vals in raw.items():
            try:
                deg = int(key)
            except ValueError:
                raise InputError(f"{path}: weight degree {key!r} is not an integer") from None
            if not isinstance(vals, list):
                raise InputError(f"{path}: weights[{key}] must be a list")
            weights[deg] = [
                parse_number(v, f"{path}:weights[{key}][{i}]")
                for i, v in enumerate(vals)
            ]
        return MetricSpec("diagonal", weights)
    raise InputError(f"{path}: unknown metric kind {kind!r}")
