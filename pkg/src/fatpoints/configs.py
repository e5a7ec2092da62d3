"""Generators for the standard configuration families.

Everything here emits schemes that pass validation; coordinate
realizations are attached whenever the family admits them over the
requested field (deterministic coordinates, no randomness).  The star
operator algebra predicts reduction vectors for line count configurations,
and the greedy scheduler realizes strictly decreasing vectors for
intersection-of-lines schemes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dataclass_field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import PreconditionError, SchemeFormatError, StructureError
from .scheme import FatPointScheme, FieldSpec, NamedLine, ReductionStep, ReductionTrace

__all__ = [
    "pi",
    "circ",
    "star",
    "GeneratorSpec",
    "gen",
    "line_count_scheme",
    "arrangement_scheme",
    "intersections_scheme",
    "grid_scheme",
    "zach_scheme",
    "star_scheme",
    "star_schedule",
    "star_multiplicity_vectors",
    "projective_plane_scheme",
    "dual_hesse_scheme",
    "greedy_reduce",
]


# ---------------------------------------------------------------------------
# star operator algebra
# ---------------------------------------------------------------------------


def pi(v: Sequence) -> tuple:
    """Entries permuted into non-increasing order."""
    return tuple(sorted(v, reverse=True))


def _check_star_args(a: Sequence, m: Sequence) -> None:
    if len(a) != len(m):
        raise PreconditionError("vectors must have equal length")
    if not a or any(x <= 0 for x in a) or any(x <= 0 for x in m):
        raise PreconditionError("vectors must be non-empty and positive")


def circ(a: Sequence, m: Sequence) -> tuple:
    """Concatenated arithmetic blocks (a_i*m_i, (a_i-1)*m_i, ..., m_i)."""
    _check_star_args(a, m)
    out = []
    for ai, mi in zip(a, m):
        out.extend(mi * k for k in range(ai, 0, -1))
    return tuple(out)


def star(a: Sequence, m: Sequence) -> tuple:
    return pi(circ(a, m))


# ---------------------------------------------------------------------------
# coordinate helpers
# ---------------------------------------------------------------------------


def _normalize_point(vec, field: FieldSpec):
    if field.kind == "Fp":
        p = field.p
        ints = [int(x) % p for x in vec]
        lead = next((x for x in ints if x), None)
        if lead is None:
            return None
        inv = pow(lead, -1, p)
        return tuple(x * inv % p for x in ints)
    from fractions import Fraction
    from math import gcd

    fracs = [Fraction(x) for x in vec]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return None
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot_zero(coeffs, point, field: FieldSpec) -> bool:
    s = sum(c * x for c, x in zip(coeffs, point))
    return s % field.p == 0 if field.kind == "Fp" else s == 0


# ---------------------------------------------------------------------------
# configuration families
# ---------------------------------------------------------------------------


def line_count_scheme(
    a: Sequence, m: Sequence, coords: bool = True
) -> tuple:
    """Line count configuration: m_i points on line i, all of multiplicity a_i.

    Lines are y = k*x + k^2 over the rationals with points at x = 1..m_i,
    which keeps every point off every other line.  Returns the scheme and
    the reducing line schedule whose reduction vector is star(a, m):
    occurrences sorted by their (precomputable) intersection degrees.
    """
    _check_star_args(a, m)
    s = len(a)
    points = []
    coord_map = {}
    lines = []
    for k in range(s):
        incid = []
        for x in range(1, m[k] + 1):
            pid = f"p{k}_{x}"
            points.append((pid, a[k]))
            coord_map[pid] = (x, k * x + k * k, 1)
            incid.append(pid)
        lines.append(NamedLine(name=f"L{k + 1}", incidence=frozenset(incid), coeffs=(k, -1, k * k)))
    occurrences = []
    for k in range(s):
        for j in range(a[k]):
            occurrences.append(((a[k] - j) * m[k], k, j))
    occurrences.sort(key=lambda rec: (-rec[0], rec[1], rec[2]))
    schedule = tuple(f"L{k + 1}" for _, k, _ in occurrences)
    scheme = FatPointScheme(
        ambient_dim=2,
        points=tuple(points),
        lines=tuple(lines),
        coords=coord_map if coords else None,
        field=FieldSpec.rationals(),
    )
    return scheme, schedule


def arrangement_scheme(
    line_coeffs: Sequence,
    e: Sequence,
    field: FieldSpec = FieldSpec.rationals(),
    prime: bool = False,
    multiplier: int = 1,
    names: Optional[Sequence] = None,
) -> FatPointScheme:
    """Intersection points of an explicit line arrangement, with coordinates.

    Point multiplicities are multiplier * (sum of e_i over incident lines),
    or one less per point when ``prime`` is set (which requires every e_i
    to be 1).  Concurrent triples are detected exactly.
    """
    s = len(line_coeffs)
    if s < 2 or len(e) != s:
        raise PreconditionError("need at least two lines and one weight per line")
    if any(x < 1 for x in e):
        raise PreconditionError("line weights must be positive")
    if prime and any(x != 1 for x in e):
        raise PreconditionError("the reduced variant requires all weights equal to 1")
    if multiplier < 1:
        raise PreconditionError("multiplier must be positive")
    norm_lines = []
    for coeffs in line_coeffs:
        nl = _normalize_point(coeffs, field)
        if nl is None:
            raise SchemeFormatError("zero line coefficient vector")
        norm_lines.append(nl)
    if len(set(norm_lines)) != s:
        raise SchemeFormatError("arrangement lines must be pairwise distinct")
    seen = {}
    for i in range(s):
        for j in range(i + 1, s):
            pt = _normalize_point(_cross(norm_lines[i], norm_lines[j]), field)
            seen.setdefault(pt, None)
    pts_sorted = sorted(seen)
    line_names = list(names) if names else [f"L{i + 1}" for i in range(s)]
    incidence = {name: set() for name in line_names}
    points = []
    coord_map = {}
    for idx, pt in enumerate(pts_sorted):
        pid = f"p{idx}"
        weight = 0
        for i in range(s):
            if _dot_zero(norm_lines[i], pt, field):
                incidence[line_names[i]].add(pid)
                weight += e[i]
        mult = (weight - 1) if prime else weight
        points.append((pid, mult * multiplier))
        coord_map[pid] = pt
    lines = tuple(
        NamedLine(name=line_names[i], incidence=frozenset(incidence[line_names[i]]), coeffs=norm_lines[i])
        for i in range(s)
    )
    return FatPointScheme(
        ambient_dim=2, points=tuple(points), lines=lines, coords=coord_map, field=field
    )


def intersections_scheme(
    e: Sequence, concurrences: Iterable = (), prime: bool = False
) -> FatPointScheme:
    """Abstract intersection-of-lines scheme from a concurrency pattern.

    ``concurrences`` lists groups of line indices (0-based, size >= 3)
    meeting at a common point; every pair of lines not covered by a group
    meets at its own simple crossing.  No coordinates are attached.
    """
    s = len(e)
    if s < 2:
        raise PreconditionError("need at least two lines")
    if any(x < 1 for x in e):
        raise PreconditionError("line weights must be positive")
    if prime and any(x != 1 for x in e):
        raise PreconditionError("the reduced variant requires all weights equal to 1")
    groups = [tuple(sorted(set(g))) for g in concurrences]
    pair_owner = {}
    for g in groups:
        if len(g) < 3:
            raise PreconditionError("a concurrence names at least three lines")
        if g[0] < 0 or g[-1] >= s:
            raise StructureError(f"concurrence {g} references an unknown line")
        for x in range(len(g)):
            for y in range(x + 1, len(g)):
                pair = (g[x], g[y])
                if pair in pair_owner:
                    raise SchemeFormatError(f"lines {pair} meet in two different points")
                pair_owner[pair] = g
    point_groups = list(dict.fromkeys(groups))
    for i in range(s):
        for j in range(i + 1, s):
            if (i, j) not in pair_owner:
                point_groups.append((i, j))
    points = []
    incidence = {i: set() for i in range(s)}
    for idx, g in enumerate(point_groups):
        pid = f"p{idx}"
        weight = sum(e[i] for i in g)
        points.append((pid, (weight - 1) if prime else weight))
        for i in g:
            incidence[i].add(pid)
    lines = tuple(
        NamedLine(name=f"L{i + 1}", incidence=frozenset(incidence[i])) for i in range(s)
    )
    return FatPointScheme(ambient_dim=2, points=tuple(points), lines=lines)


def grid_scheme(rows: int, cols: int, doubles: Iterable = ()) -> FatPointScheme:
    """Full rows x cols grid of simple points with selected doubles.

    Lines are the horizontal rows H1 (top) .. Hrows (bottom) and vertical
    columns V1 .. Vcols; ``doubles`` lists crossing labels like "V1H2".
    """
    if rows < 1 or cols < 1:
        raise PreconditionError("grid needs positive dimensions")
    wanted = set()
    for label in doubles:
        label = label.strip()
        if not label.startswith("V") or "H" not in label:
            raise SchemeFormatError(f"bad grid double {label!r} (expected like V1H2)")
        v_part, h_part = label[1:].split("H", 1)
        try:
            vi, hj = int(v_part), int(h_part)
        except ValueError:
            raise SchemeFormatError(f"bad grid double {label!r}") from None
        if not (1 <= vi <= cols and 1 <= hj <= rows):
            raise StructureError(f"grid double {label!r} outside the grid")
        wanted.add((vi - 1, rows - hj))
    points = []
    coord_map = {}
    for y in range(rows - 1, -1, -1):
        for x in range(cols):
            pid = f"c{x}r{y}"
            points.append((pid, 2 if (x, y) in wanted else 1))
            coord_map[pid] = (x, y, 1)
    lines = []
    for j in range(1, rows + 1):
        y = rows - j
        lines.append(
            NamedLine(
                name=f"H{j}",
                incidence=frozenset(f"c{x}r{y}" for x in range(cols)),
                coeffs=(0, 1, -y),
            )
        )
    for i in range(1, cols + 1):
        x = i - 1
        lines.append(
            NamedLine(
                name=f"V{i}",
                incidence=frozenset(f"c{x}r{y}" for y in range(rows)),
                coeffs=(1, 0, -x),
            )
        )
    return FatPointScheme(
        ambient_dim=2,
        points=tuple(points),
        lines=tuple(lines),
        coords=coord_map,
        field=FieldSpec.rationals(),
    )


def zach_scheme() -> FatPointScheme:
    """Six points with two doubles and four named 2-point lines (incidence only)."""
    points = (("p1", 2), ("p2", 1), ("p3", 1), ("p4", 2), ("p5", 1), ("p6", 1))
    lines = (
        NamedLine("l1", frozenset({"p1", "p2"})),
        NamedLine("l2", frozenset({"p1", "p3"})),
        NamedLine("l3", frozenset({"p4", "p5"})),
        NamedLine("l4", frozenset({"p4", "p6"})),
    )
    return FatPointScheme(ambient_dim=2, points=points, lines=lines)


def _star_coeffs(s: int) -> list:
    # lines y = k*x + k^2; no three concurrent, pairwise crossings at x = -(k+l)
    return [(k, -1, k * k) for k in range(s)]


def star_scheme(s: int, m: int = 1) -> FatPointScheme:
    """All pairwise crossings of s mutually general lines, multiplicity m."""
    if s < 3:
        raise PreconditionError("a star configuration needs at least three lines")
    if m < 1:
        raise PreconditionError("multiplicity must be positive")
    return arrangement_scheme(_star_coeffs(s), [1] * s, prime=True, multiplier=m)


def star_schedule(s: int, m: int) -> tuple:
    """Reducing line schedule for the multiplicity-m star configuration.

    Full passes over all s lines peel two off every multiplicity; an odd
    remainder finishes with the first s-1 lines.
    """
    names = [f"L{i + 1}" for i in range(s)]
    schedule = []
    for _ in range(m // 2):
        schedule.extend(names)
    if m % 2:
        schedule.extend(names[: s - 1])
    return tuple(schedule)


def star_multiplicity_vectors(s: int, m: int) -> tuple:
    """Predicted (strictly decreasing) full reduction vector of the m-fold star."""
    if s < 3 or m < 1:
        raise PreconditionError("need s >= 3 and m >= 1")
    half, odd = divmod(m, 2)
    even_part = []
    for a in range(2 * half, 0, -2):
        even_part.extend(a * (s - 1) - k for k in range(s))
    if not odd:
        return tuple(even_part)
    lifted = [d + s - 1 for d in even_part]
    return tuple(lifted) + tuple(range(s - 1, 0, -1))


# ---------------------------------------------------------------------------
# finite geometries
# ---------------------------------------------------------------------------


def _factor_prime_power(q: int) -> tuple:
    if q < 2:
        raise PreconditionError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise PreconditionError(f"{q} is not a prime power")
    return p, k


class _GF:
    """Arithmetic in GF(p^k); elements are integers 0..p^k-1 (base-p digits)."""

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p**k
        self.modulus = self._find_irreducible() if k > 1 else None

    def _digits(self, n: int) -> list:
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return out

    def _undigits(self, ds: Sequence) -> int:
        n = 0
        for d in reversed(ds):
            n = n * self.p + d
        return n

    def _polydivmod(self, num: list, den: list) -> list:
        num = list(num)
        dn = len(den) - 1
        inv = pow(den[-1], -1, self.p)
        while len(num) - 1 >= dn and any(num):
            while num and num[-1] == 0:
                num.pop()
            if len(num) - 1 < dn:
                break
            coef = num[-1] * inv % self.p
            shift = len(num) - 1 - dn
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - coef * d) % self.p
        while num and num[-1] == 0:
            num.pop()
        return num

    def _is_irreducible(self, poly: list) -> bool:
        deg = len(poly) - 1
        for d in range(1, deg // 2 + 1):
            for rep in range(self.p**d, 2 * self.p**d):
                digits = []
                n = rep
                for _ in range(d + 1):
                    digits.append(n % self.p)
                    n //= self.p
                digits[d] = 1
                if not self._polydivmod(poly, digits):
                    return False
        return True

    def _find_irreducible(self) -> list:
        for rep in range(self.p**self.k):
            poly = self._digits(rep) + [1]
            if self._is_irreducible(poly):
                return poly
        raise AssertionError("no irreducible polynomial found")

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = self._polydivmod(prod, self.modulus)
        rem += [0] * (self.k - len(rem))
        return self._undigits(rem)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])


def projective_plane_scheme(q: int, mult: int = 1) -> FatPointScheme:
    """All points and all lines of the projective plane of order q.

    q^2+q+1 points and lines, q+1 of each through/on each other.  For
    prime q the points carry coordinates over the prime field; for proper
    prime powers only the incidence structure is emitted.
    """
    if mult < 1:
        raise PreconditionError("multiplicity must be positive")
    p, k = _factor_prime_power(q)
    gf = _GF(p, k)
    reps = (
        [(1, a, b) for a in range(q) for b in range(q)]
        + [(0, 1, a) for a in range(q)]
        + [(0, 0, 1)]
    )
    reps.sort()
    ids = {rep: f"p{i}" for i, rep in enumerate(reps)}
    points = tuple((ids[rep], mult) for rep in reps)

    def dot_is_zero(u, v):
        acc = 0
        for x, y in zip(u, v):
            acc = gf.add(acc, gf.mul(x, y))
        return acc == 0

    lines = []
    for i, lrep in enumerate(reps):
        incid = frozenset(ids[prep] for prep in reps if dot_is_zero(lrep, prep))
        coeffs = lrep if k == 1 else None
        lines.append(NamedLine(name=f"L{i}", incidence=incid, coeffs=coeffs))
    coord_map = {ids[rep]: rep for rep in reps} if k == 1 else None
    return FatPointScheme(
        ambient_dim=2,
        points=points,
        lines=tuple(lines),
        coords=coord_map,
        field=FieldSpec.prime(p) if k == 1 else FieldSpec.rationals(),
    )


def dual_hesse_scheme(p: Optional[int] = None, mult: int = 1) -> FatPointScheme:
    """Twelve points on nine lines, three lines per point, four points per line.

    A coordinate realization needs a primitive cube root of unity, so a
    prime p = 1 mod 3 must be supplied for coordinates; otherwise only the
    incidence structure is emitted (with a warning when p was requested
    but unusable).
    """
    if mult < 1:
        raise PreconditionError("multiplicity must be positive")
    omega = None
    if p is not None:
        field = FieldSpec.prime(p)
        if p % 3 == 1:
            omega = next(x for x in range(2, p) if pow(x, 3, p) == 1 and x != 1)
        else:
            warnings.warn(
                f"F_{p} has no primitive cube root of unity; emitting incidence only",
                stacklevel=2,
            )
    point_names = ["X0", "X1", "X2"] + [f"P{i}{j}" for i in range(3) for j in range(3)]
    points = tuple((name, mult) for name in point_names)
    incidences = {}
    for a in range(3):
        incidences[f"A{a}"] = {"X0"} | {f"P{i}{a}" for i in range(3)}
    for b in range(3):
        incidences[f"B{b}"] = {"X2"} | {f"P{i}{j}" for i in range(3) for j in range(3) if (i - j) % 3 == b}
    for c in range(3):
        incidences[f"C{c}"] = {"X1"} | {f"P{i}{j}" for i in range(3) for j in range(3) if (i + c) % 3 == 0}
    coord_map = None
    coeff_map = {name: None for name in incidences}
    if omega is not None:
        w = [1, omega, omega * omega % p]
        coord_map = {"X0": (1, 0, 0), "X1": (0, 1, 0), "X2": (0, 0, 1)}
        for i in range(3):
            for j in range(3):
                coord_map[f"P{i}{j}"] = (w[i], w[j], 1)
        for a in range(3):
            coeff_map[f"A{a}"] = (0, 1, (-w[a]) % p)
        for b in range(3):
            coeff_map[f"B{b}"] = (1, (-w[b]) % p, 0)
        for c in range(3):
            coeff_map[f"C{c}"] = ((-w[c]) % p, 0, 1)
    lines = tuple(
        NamedLine(name=name, incidence=frozenset(incidences[name]), coeffs=coeff_map[name])
        for name in sorted(incidences)
    )
    return FatPointScheme(
        ambient_dim=2,
        points=points,
        lines=lines,
        coords=coord_map,
        field=FieldSpec.prime(p) if p is not None else FieldSpec.rationals(),
    )


# ---------------------------------------------------------------------------
# greedy reduction
# ---------------------------------------------------------------------------


def greedy_reduce(scheme: FatPointScheme, budget: Mapping) -> ReductionTrace:
    """Repeatedly residuate along a maximal-degree line with budget left.

    Ties break toward the earliest line in the scheme's line order.  The
    trace is flagged not-full when the budgets run out (or no budgeted
    line meets the residual scheme) before the scheme is exhausted.
    """
    remaining = {line.name: int(budget.get(line.name, 0)) for line in scheme.lines}
    unknown = sorted(set(budget) - set(remaining))
    if unknown:
        raise StructureError(f"budget names unknown lines {unknown}")
    current = scheme
    steps = []
    while not current.is_empty:
        best_deg, best_line = 0, None
        for line in scheme.lines:
            if remaining[line.name] <= 0:
                continue
            deg = current.intersection_degree(line)
            if deg > best_deg:
                best_deg, best_line = deg, line
        if best_line is None:
            break
        remaining[best_line.name] -= 1
        current, deg = current.residual(best_line)
        steps.append(ReductionStep(line=best_line.name, degree=deg, after=current.points))
    return ReductionTrace(
        steps=tuple(steps),
        vector=tuple(s.degree for s in steps),
        full=current.is_empty,
        warnings=(),
    )


# ---------------------------------------------------------------------------
# family dispatch
# ---------------------------------------------------------------------------

FAMILIES = (
    "grid",
    "linear-config",
    "line-count-config",
    "star-config",
    "intersections",
    "projective-plane-fq",
    "dual-hesse",
    "zach-example",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = dataclass_field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}")


def gen(spec: GeneratorSpec) -> FatPointScheme:
    """Generate the scheme for a family spec; parameters are family specific."""
    params = dict(spec.params)
    family = spec.family
    try:
        return _gen_dispatch(family, params)
    except KeyError as exc:
        raise PreconditionError(f"family {family} needs parameter {exc.args[0]!r}") from None


def _gen_dispatch(family: str, params: dict) -> FatPointScheme:
    if family == "grid":
        return grid_scheme(
            rows=params.pop("rows"), cols=params.pop("cols"), doubles=params.pop("doubles", ())
        )
    if family == "linear-config":
        m = tuple(sorted(params.pop("m"), reverse=True))
        if len(set(m)) != len(m):
            raise PreconditionError("a linear configuration needs distinct point counts")
        scheme, _ = line_count_scheme((1,) * len(m), m)
        return scheme
    if family == "line-count-config":
        scheme, _ = line_count_scheme(tuple(params.pop("a")), tuple(params.pop("m")))
        return scheme
    if family == "star-config":
        return star_scheme(s=params.pop("s"), m=params.pop("m", 1))
    if family == "intersections":
        coeffs = params.pop("coeffs", None)
        e = tuple(params.pop("e"))
        multiplier = params.pop("mult", 1)
        prime = params.pop("prime", False)
        if coeffs is not None:
            field = params.pop("field", FieldSpec.rationals())
            _reject_params(params, family)
            return arrangement_scheme(coeffs, e, field=field, prime=prime, multiplier=multiplier)
        concurrences = params.pop("concurrences", ())
        _reject_params(params, family)
        return intersections_scheme(e, concurrences, prime=prime).scaled(multiplier)
    if family == "projective-plane-fq":
        return projective_plane_scheme(q=params.pop("q"), mult=params.pop("mult", 1))
    if family == "dual-hesse":
        return dual_hesse_scheme(p=params.pop("p", None), mult=params.pop("mult", 1))
    if family == "zach-example":
        _reject_params(params, family)
        return zach_scheme()
    raise AssertionError(family)


def _reject_params(params: dict, family: str) -> None:
    if params:
        raise PreconditionError(f"unused parameters for {family}: {sorted(params)}")
