"""Fat point schemes with collinearity data, and the residuation engine.

A scheme is a finite list of points with non-negative multiplicities,
together with named lines (hyperplanes for ambient dimension > 2) given as
incidence sets.  Exact coordinates over the rationals or a prime field are
optional; every bound computation works from incidence data alone.

Residuating along a line drops the multiplicity of each incident point by
one (floored at zero) and records the degree of the scheme-theoretic
intersection.  The sequence of these degrees along a chosen line schedule
is the reduction vector driving everything else in this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Mapping, Sequence, Union

from .errors import PreconditionError, SchemeFormatError, StructureError

__all__ = [
    "FieldSpec",
    "NamedLine",
    "FatPointScheme",
    "ReductionStep",
    "ReductionTrace",
    "Violation",
    "residual",
    "reduce",
    "degree",
    "validate",
    "scheme_to_dict",
    "scheme_from_dict",
    "dump_scheme",
    "load_scheme",
]

FieldElement = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field for coordinates: exact rationals or a prime field."""

    kind: str  # "Q" or "Fp"
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p != 0:
                raise SchemeFormatError("rational field carries no characteristic")
        elif self.kind == "Fp":
            if not _is_prime(self.p):
                raise SchemeFormatError(f"field characteristic {self.p} is not prime")
        else:
            raise SchemeFormatError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q", 0)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @property
    def characteristic(self) -> int:
        return self.p

    def parse(self, text: str) -> FieldElement:
        """Parse a decimal integer or an "a/b" rational as a field element."""
        text = text.strip()
        try:
            if "/" in text:
                num_s, den_s = text.split("/", 1)
                num, den = int(num_s), int(den_s)
            else:
                num, den = int(text), 1
        except ValueError:
            raise SchemeFormatError(f"bad field element {text!r}") from None
        if den == 0:
            raise SchemeFormatError(f"zero denominator in {text!r}")
        if self.kind == "Q":
            return Fraction(num, den)
        den_red = den % self.p
        if den_red == 0:
            raise SchemeFormatError(f"denominator of {text!r} vanishes mod {self.p}")
        return num * pow(den_red, -1, self.p) % self.p

    def format(self, x: FieldElement) -> str:
        if isinstance(x, Fraction) and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def to_dict(self) -> dict:
        if self.kind == "Q":
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.p}


@dataclass(frozen=True)
class NamedLine:
    """A named incidence set, optionally backed by a coefficient vector."""

    name: str
    incidence: frozenset
    coeffs: tuple | None = None

    def __repr__(self):
        pts = ",".join(sorted(self.incidence))
        return f"NamedLine({self.name}: {{{pts}}})"


@dataclass(frozen=True)
class ReductionStep:
    line: str
    degree: int
    after: tuple  # multiplicity snapshot, ((point id, mult), ...) in scheme order


@dataclass(frozen=True)
class ReductionTrace:
    """Record of an iterated residuation along a line schedule."""

    steps: tuple
    vector: tuple
    full: bool
    warnings: tuple = ()


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    ids: tuple = ()


@dataclass(frozen=True)
class FatPointScheme:
    """Points with multiplicities, named lines, optional exact coordinates.

    Instances are immutable; every operation returns a new scheme.  The
    ``coords`` mapping may cover only part of the support (the oracle
    requires coordinates for all points of positive multiplicity, the
    combinatorial operations require none).
    """

    ambient_dim: int
    points: tuple  # ((point id, multiplicity), ...)
    lines: tuple = ()
    coords: dict | None = None
    field: FieldSpec = FieldSpec("Q", 0)

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise SchemeFormatError("ambient dimension must be at least 2")
        ids = [pid for pid, _ in self.points]
        if len(set(ids)) != len(ids):
            raise SchemeFormatError("duplicate point ids")
        for pid, mult in self.points:
            if mult < 0:
                raise SchemeFormatError(f"negative multiplicity at {pid}")
        names = [line.name for line in self.lines]
        if len(set(names)) != len(names):
            raise SchemeFormatError("duplicate line names")

    @cached_property
    def _mult(self) -> dict:
        return dict(self.points)

    @cached_property
    def _line_by_name(self) -> dict:
        return {line.name: line for line in self.lines}

    @property
    def point_ids(self) -> tuple:
        return tuple(pid for pid, _ in self.points)

    def multiplicity(self, pid: str) -> int:
        return self._mult[pid]

    def line(self, name: str) -> NamedLine:
        try:
            return self._line_by_name[name]
        except KeyError:
            raise StructureError(f"unknown line {name!r}") from None

    @property
    def is_empty(self) -> bool:
        return all(m == 0 for _, m in self.points)

    def degree(self) -> int:
        n = self.ambient_dim
        return sum(comb(m + n - 1, n) for _, m in self.points)

    def scaled(self, factor: int) -> "FatPointScheme":
        """Scheme with every multiplicity multiplied by ``factor``."""
        if factor < 0:
            raise PreconditionError("scale factor must be non-negative")
        pts = tuple((pid, m * factor) for pid, m in self.points)
        return FatPointScheme(self.ambient_dim, pts, self.lines, self.coords, self.field)

    def intersection_degree(self, line: NamedLine) -> int:
        """Degree of the scheme-theoretic intersection with ``line``.

        In the plane this is the plain sum of multiplicities on the line;
        in higher ambient dimension each point of multiplicity m meets the
        hyperplane in a fat point of its own, of degree C(m+N-2, N-1).
        """
        n = self.ambient_dim
        total = 0
        for pid in line.incidence:
            if pid not in self._mult:
                raise StructureError(f"line {line.name!r} names unknown point {pid!r}")
            m = self._mult[pid]
            total += comb(m + n - 2, n - 1)
        return total

    def residual(self, line: Union[str, NamedLine]) -> tuple:
        """Residuate along ``line``; returns (residual scheme, intersection degree)."""
        if isinstance(line, str):
            line = self.line(line)
        deg = self.intersection_degree(line)
        pts = tuple(
            (pid, max(m - 1, 0) if pid in line.incidence else m) for pid, m in self.points
        )
        return FatPointScheme(self.ambient_dim, pts, self.lines, self.coords, self.field), deg

    def reduce(self, line_names: Sequence) -> ReductionTrace:
        """Iterated residual along the named lines, recording the trace."""
        current = self
        steps = []
        warnings = []
        for index, name in enumerate(line_names):
            current, deg = current.residual(name)
            if deg == 0:
                warnings.append(f"step {index + 1} ({name}): zero-degree reduction")
            steps.append(ReductionStep(line=name, degree=deg, after=current.points))
        return ReductionTrace(
            steps=tuple(steps),
            vector=tuple(s.degree for s in steps),
            full=current.is_empty,
            warnings=tuple(warnings),
        )

    def validate(self) -> list:
        """Check every data invariant; violations are returned, not raised."""
        out = []
        known = set(self._mult)
        for line in self.lines:
            missing = sorted(set(line.incidence) - known)
            if missing:
                out.append(
                    Violation(
                        "unknown-point",
                        f"line {line.name} names unknown points {missing}",
                        tuple(missing),
                    )
                )
        if self.ambient_dim == 2:
            for i, a in enumerate(self.lines):
                for b in self.lines[i + 1 :]:
                    shared = sorted(a.incidence & b.incidence & known)
                    if len(shared) > 1:
                        out.append(
                            Violation(
                                "line-pair-overlap",
                                f"lines {a.name} and {b.name} share {len(shared)} points",
                                tuple(shared),
                            )
                        )
        coords = self.coords or {}
        for pid, vec in coords.items():
            if pid not in known:
                out.append(Violation("stray-coords", f"coordinates for unknown point {pid}", (pid,)))
            elif all(x == 0 for x in vec) or len(vec) != self.ambient_dim + 1:
                out.append(Violation("bad-coords", f"invalid coordinate tuple at {pid}", (pid,)))
        for line in self.lines:
            if line.coeffs is None:
                continue
            if all(x == 0 for x in line.coeffs) or len(line.coeffs) != self.ambient_dim + 1:
                out.append(Violation("bad-coeffs", f"invalid coefficients on {line.name}", ()))
                continue
            for pid, vec in coords.items():
                if pid not in known or len(vec) != self.ambient_dim + 1:
                    continue
                on_line = self._dot_is_zero(line.coeffs, vec)
                if on_line and pid not in line.incidence:
                    out.append(
                        Violation(
                            "incidence-not-maximal",
                            f"{pid} lies on {line.name} but is missing from its incidence set",
                            (pid,),
                        )
                    )
                if not on_line and pid in line.incidence:
                    out.append(
                        Violation(
                            "incidence-too-big",
                            f"{pid} is listed on {line.name} but its coordinates do not satisfy it",
                            (pid,),
                        )
                    )
        if self.ambient_dim == 2 and coords:
            for line in self.lines:
                pts = [p for p in sorted(line.incidence) if p in coords]
                for i in range(len(pts)):
                    for j in range(i + 1, len(pts)):
                        for k in range(j + 1, len(pts)):
                            trio = (pts[i], pts[j], pts[k])
                            if not self._collinear(*[coords[p] for p in trio]):
                                out.append(
                                    Violation(
                                        "not-collinear",
                                        f"points {trio} on {line.name} are not collinear",
                                        trio,
                                    )
                                )
        return out

    def _dot_is_zero(self, coeffs, vec) -> bool:
        s = sum(c * x for c, x in zip(coeffs, vec))
        if self.field.kind == "Fp":
            return s % self.field.p == 0
        return s == 0

    def _collinear(self, a, b, c) -> bool:
        det = (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
        if self.field.kind == "Fp":
            return det % self.field.p == 0
        return det == 0


def residual(scheme: FatPointScheme, line: Union[str, NamedLine]) -> tuple:
    return scheme.residual(line)


def reduce(scheme: FatPointScheme, line_names: Sequence) -> ReductionTrace:
    return scheme.reduce(line_names)


def degree(scheme: FatPointScheme) -> int:
    return scheme.degree()


def validate(scheme: FatPointScheme) -> list:
    return scheme.validate()


# ---------------------------------------------------------------------------
# JSON scheme format
#
# {"ambient_dim": 2,
#  "field": {"kind": "Q"} | {"kind": "Fp", "p": 7},
#  "points": [{"id": "p1", "mult": 2, "coords": ["0", "1/2", "1"]}, ...],
#  "lines":  [{"name": "L1", "points": ["p1", "p2"], "coeffs": ["1", "0", "0"]}, ...]}
#
# Unknown keys are rejected at every level.
# ---------------------------------------------------------------------------

_TOP_KEYS = {"ambient_dim", "field", "points", "lines"}
_FIELD_KEYS = {"kind", "p"}
_POINT_KEYS = {"id", "mult", "coords"}
_LINE_KEYS = {"name", "points", "coeffs"}


def _reject_unknown(obj: Mapping, allowed: set, where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemeFormatError(f"unknown field(s) {unknown} in {where}")


def _field_from_dict(obj) -> FieldSpec:
    if not isinstance(obj, Mapping):
        raise SchemeFormatError("field must be an object")
    _reject_unknown(obj, _FIELD_KEYS, "field")
    kind = obj.get("kind")
    if kind == "Q":
        if "p" in obj:
            raise SchemeFormatError("field Q takes no characteristic")
        return FieldSpec.rationals()
    if kind == "Fp":
        p = obj.get("p")
        if not isinstance(p, int):
            raise SchemeFormatError("field Fp requires an integer p")
        return FieldSpec.prime(p)
    raise SchemeFormatError(f"unknown field kind {kind!r}")


def _parse_vector(field: FieldSpec, raw, length: int, where: str) -> tuple:
    if not isinstance(raw, list) or len(raw) != length:
        raise SchemeFormatError(f"{where}: expected {length} entries")
    vec = []
    for entry in raw:
        if not isinstance(entry, str):
            raise SchemeFormatError(f"{where}: entries must be strings")
        vec.append(field.parse(entry))
    if all(x == 0 for x in vec):
        raise SchemeFormatError(f"{where}: all entries are zero")
    return tuple(vec)


def scheme_from_dict(obj) -> FatPointScheme:
    if not isinstance(obj, Mapping):
        raise SchemeFormatError("scheme document must be a JSON object")
    _reject_unknown(obj, _TOP_KEYS, "scheme")
    for key in ("ambient_dim", "field", "points", "lines"):
        if key not in obj:
            raise SchemeFormatError(f"missing required field {key!r}")
    n = obj["ambient_dim"]
    if not isinstance(n, int) or n < 2:
        raise SchemeFormatError("ambient_dim must be an integer >= 2")
    fieldspec = _field_from_dict(obj["field"])
    if not isinstance(obj["points"], list) or not isinstance(obj["lines"], list):
        raise SchemeFormatError("points and lines must be arrays")

    points = []
    coords = {}
    for entry in obj["points"]:
        if not isinstance(entry, Mapping):
            raise SchemeFormatError("each point must be an object")
        _reject_unknown(entry, _POINT_KEYS, "point")
        pid, mult = entry.get("id"), entry.get("mult")
        if not isinstance(pid, str) or not pid:
            raise SchemeFormatError("point id must be a non-empty string")
        if not isinstance(mult, int) or mult < 0:
            raise SchemeFormatError(f"point {pid}: mult must be a non-negative integer")
        points.append((pid, mult))
        if "coords" in entry:
            coords[pid] = _parse_vector(fieldspec, entry["coords"], n + 1, f"point {pid} coords")

    known = {pid for pid, _ in points}
    lines = []
    for entry in obj["lines"]:
        if not isinstance(entry, Mapping):
            raise SchemeFormatError("each line must be an object")
        _reject_unknown(entry, _LINE_KEYS, "line")
        name, incident = entry.get("name"), entry.get("points")
        if not isinstance(name, str) or not name:
            raise SchemeFormatError("line name must be a non-empty string")
        if not isinstance(incident, list) or not all(isinstance(x, str) for x in incident):
            raise SchemeFormatError(f"line {name}: points must be an array of ids")
        bad = sorted(set(incident) - known)
        if bad:
            raise SchemeFormatError(f"line {name}: unknown point ids {bad}")
        coeffs = None
        if "coeffs" in entry:
            coeffs = _parse_vector(fieldspec, entry["coeffs"], n + 1, f"line {name} coeffs")
        lines.append(NamedLine(name=name, incidence=frozenset(incident), coeffs=coeffs))

    return FatPointScheme(
        ambient_dim=n,
        points=tuple(points),
        lines=tuple(lines),
        coords=coords or None,
        field=fieldspec,
    )


def scheme_to_dict(scheme: FatPointScheme) -> dict:
    coords = scheme.coords or {}
    points = []
    for pid, mult in scheme.points:
        entry = {"id": pid, "mult": mult}
        if pid in coords:
            entry["coords"] = [scheme.field.format(x) for x in coords[pid]]
        points.append(entry)
    lines = []
    for line in scheme.lines:
        entry = {"name": line.name, "points": sorted(line.incidence)}
        if line.coeffs is not None:
            entry["coeffs"] = [scheme.field.format(x) for x in line.coeffs]
        lines.append(entry)
    return {
        "ambient_dim": scheme.ambient_dim,
        "field": scheme.field.to_dict(),
        "points": points,
        "lines": lines,
    }


def dump_scheme(scheme: FatPointScheme) -> str:
    return json.dumps(scheme_to_dict(scheme), indent=2, sort_keys=False) + "\n"


def load_scheme(text: str) -> FatPointScheme:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeFormatError(f"invalid JSON: {exc}") from None
    return scheme_from_dict(obj)
