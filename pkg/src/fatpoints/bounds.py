"""Hilbert function bounds computable from a reduction vector.

``f_lower`` and ``F_upper`` bound the Hilbert function of any plane fat
point scheme admitting the given vector as a full reduction vector.  When
the vector is GMS ("generalized monotone sequence": non-increasing with
v_i - v_j >= j - i - 1 for all i < j) the two bounds coincide and pin the
Hilbert function exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

from .errors import PreconditionError

__all__ = [
    "binom",
    "HilbertSequence",
    "f_value",
    "F_value",
    "f_lower",
    "F_upper",
    "f_recursive",
    "F_recursive",
    "StandardConfiguration",
    "standard_config",
    "diag",
    "sum_op",
    "is_nonincreasing",
    "is_positive",
    "is_nonnegative",
    "is_strictly_decreasing",
    "is_gms",
    "gms_by_delta",
    "gms_by_pattern",
    "gms_witness",
    "pn_lower_bound",
]

Vector = Sequence


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever n < k (negative n included).

    This is the convention under which C(s+N, N) equals the dimension of
    the space of degree-s forms on projective N-space for every integer s.
    """
    if k < 0:
        raise PreconditionError("binom requires k >= 0")
    if n < k:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class HilbertSequence:
    """Nondecreasing sequence of naturals, eventually constant.

    The prefix runs through the first index attaining the stable value, so
    ``prefix[-1] == stable`` always holds and regularity-style scans never
    need values beyond the prefix.
    """

    prefix: tuple
    stable: int

    def __post_init__(self):
        if not self.prefix or self.prefix[-1] != self.stable:
            raise PreconditionError("prefix must end at the stable value")
        if any(a > b for a, b in zip(self.prefix, self.prefix[1:])):
            raise PreconditionError("Hilbert sequence must be nondecreasing")

    def __call__(self, t: int) -> int:
        if t < 0:
            return 0
        if t < len(self.prefix):
            return self.prefix[t]
        return self.stable

    def __len__(self) -> int:
        return len(self.prefix)

    def render(self) -> str:
        """Comma-separated values with a trailing ellipsis for the stable tail."""
        return ",".join(str(v) for v in self.prefix) + ",…"

    def to_dict(self) -> dict:
        return {"prefix": list(self.prefix), "stable": self.stable}

    @staticmethod
    def from_function(fn: Callable, stable: int) -> "HilbertSequence":
        values = []
        t = 0
        while True:
            v = fn(t)
            values.append(v)
            if v == stable:
                return HilbertSequence(tuple(values), stable)
            if v > stable:
                raise PreconditionError("sequence exceeded its declared stable value")
            t += 1


def f_value(v: Vector, t: int) -> int:
    """Lower bound at degree t: row-by-row diagonal count of the vector."""
    if t < 0:
        return 0
    return sum(binom(min(t - i + 1, v[i]), 1) for i in range(len(v)))


def F_value(v: Vector, t: int) -> int:
    """Upper bound at degree t: best suffix truncation estimate."""
    if t < 0:
        return 0
    total = sum(v)
    best = None
    suffix = total
    for i in range(len(v) + 1):
        # suffix = sum of entries after position i (1-based prefix of length i dropped)
        cand = binom(t + 2, 2) - binom(t - i + 2, 2) + suffix
        if best is None or cand < best:
            best = cand
        if i < len(v):
            suffix -= v[i]
    return best


def f_lower(v: Vector) -> HilbertSequence:
    return HilbertSequence.from_function(lambda t: f_value(v, t), sum(v))


def F_upper(v: Vector) -> HilbertSequence:
    return HilbertSequence.from_function(lambda t: F_value(v, t), sum(v))


def f_recursive(v: Vector, t: int) -> int:
    if t < 0 or not v:
        return 0
    return f_recursive(v[1:], t - 1) + min(t + 1, v[0])


def F_recursive(v: Vector, t: int) -> int:
    if t < 0 or not v:
        return 0
    return min(t + 1 + F_recursive(v[1:], t - 1), sum(v))


@dataclass(frozen=True)
class StandardConfiguration:
    """Left-justified lattice rows: row j-1 holds v_j points starting at x=0."""

    rows: tuple
    lattice: frozenset


def standard_config(v: Vector) -> StandardConfiguration:
    pts = frozenset((i, j) for j, vj in enumerate(v) for i in range(vj))
    return StandardConfiguration(rows=tuple(v), lattice=pts)


def diag(v: Vector) -> tuple:
    """Anti-diagonal counts of the standard configuration of v.

    Reported through index (len(v) - 1) + max(v) so the zero tail is visible.
    """
    hi = (len(v) - 1 + max(v)) if v else 0
    counts = [0] * (hi + 1)
    for j, vj in enumerate(v):
        for i in range(vj):
            counts[i + j] += 1
    return tuple(counts)


def sum_op(seq: Vector) -> tuple:
    out = []
    run = 0
    for x in seq:
        run += x
        out.append(run)
    return tuple(out)


def is_nonnegative(v: Vector) -> bool:
    return all(x >= 0 for x in v)


def is_positive(v: Vector) -> bool:
    return all(x > 0 for x in v)


def is_nonincreasing(v: Vector) -> bool:
    return all(a >= b for a, b in zip(v, v[1:]))


def is_strictly_decreasing(v: Vector) -> bool:
    return all(a > b for a, b in zip(v, v[1:]))


def is_gms(v: Vector) -> bool:
    """Pairwise slack test: v_i - v_j >= j - i - 1 for all i < j.

    Evaluated literally on any vector; the two equivalent tests below
    additionally require non-increasing input.
    """
    return gms_witness(v) is None


def gms_witness(v: Vector):
    """None when GMS; otherwise the first violated (i, j) pair, 1-based."""
    r = len(v)
    for i in range(r):
        for j in range(i + 1, r):
            if v[i] - v[j] < j - i - 1:
                return (i + 1, j + 1)
    return None


def _require_nonincreasing(v: Vector, test: str) -> None:
    if not is_nonnegative(v) or not is_nonincreasing(v):
        raise PreconditionError(f"{test} requires a non-negative non-increasing vector")


def gms_by_delta(v: Vector) -> bool:
    """Difference-gap test on the reversed vector.

    Only the r-1 consecutive gaps participate; the leading entry of the
    difference vector is the raw first value, not a gap, and counting it
    would break the equivalence with the pairwise test on vectors that
    contain zero entries.
    """
    _require_nonincreasing(v, "gms_by_delta")
    w = tuple(reversed(v))
    gaps = [w[k] - w[k - 1] for k in range(1, len(w))]
    zeros = [i for i, g in enumerate(gaps) if g == 0]
    for a, b in zip(zeros, zeros[1:]):
        if not any(g > 1 for g in gaps[a + 1 : b]):
            return False
    return True


def gms_by_pattern(v: Vector) -> bool:
    return pattern_witness(v) is None


def pattern_witness(v: Vector):
    """Span of the first forbidden pattern, or None.

    Forbidden: three equal consecutive entries, or a window whose first
    two and last two entries form equal pairs with a run of consecutive
    integers in between.
    """
    _require_nonincreasing(v, "gms_by_pattern")
    r = len(v)
    for i in range(r - 2):
        if v[i] == v[i + 1] == v[i + 2]:
            return tuple(v[i : i + 3])
    for i in range(r):
        for j in range(2, r):  # window v[i..i+j+1]
            end = i + j + 1
            if end >= r:
                break
            if v[i] != v[i + 1] or v[i + j] != v[end]:
                continue
            middle = v[i + 1 : i + j + 1]
            if all(middle[k] - middle[k + 1] == 1 for k in range(len(middle) - 1)):
                return tuple(v[i : end + 1])
    return None


def pn_lower_bound(ambient_dim: int, residual_degrees: Vector, t: int) -> int:
    """Lower bound on the degree-t ideal dimension in projective N-space.

    ``residual_degrees`` lists the degrees of the successive residual
    schemes, ending at the empty scheme (degree 0).  Each step i after i
    hyperplane residuations contributes C(t-i+N, N) - deg(A_i).
    """
    if not residual_degrees or residual_degrees[-1] != 0:
        raise PreconditionError("residual degree list must end at 0 (empty scheme)")
    best = 0
    for i, deg_i in enumerate(residual_degrees):
        best = max(best, binom(t - i + ambient_dim, ambient_dim) - deg_i)
    return best
