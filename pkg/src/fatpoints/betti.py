"""Bounds on graded Betti numbers driven by a GMS reduction vector.

Once a vector pins the Hilbert function, the initial degree and the
regularity are read off, generator counts are bounded degree by degree,
and syzygy counts follow from the third difference of the ideal Hilbert
function.  For three special vector shapes the bounds collapse to exact
values at every degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .bounds import (
    HilbertSequence,
    binom,
    f_lower,
    f_value,
    is_gms,
    is_nonincreasing,
    is_positive,
    is_strictly_decreasing,
)
from .errors import PreconditionError

__all__ = [
    "alpha_reg",
    "ideal_hilbert",
    "naive_nu_bounds",
    "j_index",
    "improved_nu_bounds",
    "delta",
    "BettiBounds",
    "betti_table",
    "is_betti_determining",
]


def ideal_hilbert(v: Sequence, t: int) -> int:
    """Degree-t dimension of the ideal, from the vector's Hilbert function."""
    if t < 0:
        return 0
    return binom(t + 2, 2) - f_value(v, t)


def alpha_reg(h: HilbertSequence, deg: int) -> tuple:
    """Initial degree of the ideal and Castelnuovo-Mumford regularity.

    alpha is the least t with h(t) < C(t+2, 2); reg is the least t with
    h(t-1) = deg.  The sequence must stabilize at deg.
    """
    if h.stable != deg:
        raise PreconditionError("sequence does not stabilize at the scheme degree")
    alpha = None
    for t in range(len(h.prefix) + 2):
        if h(t) < binom(t + 2, 2):
            alpha = t
            break
    if alpha is None:
        raise PreconditionError("degenerate sequence: ideal is zero through the prefix")
    reg = 0
    while h(reg - 1) != deg:
        reg += 1
    return alpha, reg


def naive_nu_bounds(h_ideal: Callable, t: int) -> tuple:
    """Interval for the generator count in degree t+1 from dimensions alone.

    Lower bound: cokernel dimension of any map is at least target minus
    3 * source.  Upper bound: multiplying a nonzero space of forms by the
    three linear forms grows dimension by at least 2.
    """
    ht = h_ideal(t)
    if ht <= 0:
        raise PreconditionError("naive bounds need a nonzero ideal in degree t")
    ht1 = h_ideal(t + 1)
    return (max(0, ht1 - 3 * ht), ht1 - (2 + ht))


def _alpha_reg_of_vector(d: Sequence) -> tuple:
    h = f_lower(d)
    return alpha_reg(h, sum(d))


def _require_gms(d: Sequence) -> None:
    if not is_gms(d) or not is_nonincreasing(d) or not all(x >= 0 for x in d):
        raise PreconditionError("reduction vector must be non-negative, non-increasing and GMS")


def j_index(d: Sequence, t: int) -> int:
    """Longest initial run of residuals whose shifted ideals match in dimension.

    Greatest j with ideal_hilbert(d[i:], t-i) equal to ideal_hilbert(d, t)
    for every 1 <= i <= j.  Truncations of a GMS vector are GMS, so each
    residual's Hilbert function is determined and the run is well defined.
    """
    _require_gms(d)
    alpha, reg = _alpha_reg_of_vector(d)
    if not alpha <= t < reg:
        raise PreconditionError(f"degree {t} outside [{alpha}, {reg})")
    target = ideal_hilbert(d, t)
    j = 0
    for i in range(1, len(d) + 1):
        if ideal_hilbert(d[i:], t - i) == target:
            j = i
        else:
            break
    assert j <= t
    return j


def improved_nu_bounds(d: Sequence, t: int) -> tuple:
    """Interval for the generator count in degree t+1, using common divisors.

    The first j lines split off as a common factor of the degree-t part of
    the ideal; the surplus e (growth of the residual's Hilbert function one
    step below) controls the remaining slack.  A point interval whenever
    e = 0.
    """
    j = j_index(d, t)  # validates GMS and the degree range
    tail = tuple(d[j:])
    base = ideal_hilbert(d, t + 1) - ideal_hilbert(tail, t - j + 1)
    e = f_value(tail, t - j) - f_value(tail, t - j - 1)
    return (base + max(2 * e - t + j, 0), base + e)


def delta(seq: Sequence, order: int = 1) -> tuple:
    """Iterated difference operator; index 0 keeps the raw leading value."""
    if order < 1:
        raise PreconditionError("difference order must be >= 1")
    out = tuple(seq)
    for _ in range(order):
        out = tuple(out[i] - (out[i - 1] if i > 0 else 0) for i in range(len(out)))
    return out


@dataclass(frozen=True)
class BettiBounds:
    """Per-degree intervals for generator and syzygy counts.

    ``nu`` covers degrees alpha..reg, ``sigma`` covers alpha..reg+1; both
    are implicitly [0, 0] outside their stored range.
    """

    alpha: int
    reg: int
    nu: dict
    sigma: dict
    exact: bool

    def nu_at(self, t: int) -> tuple:
        return self.nu.get(t, (0, 0))

    def sigma_at(self, t: int) -> tuple:
        return self.sigma.get(t, (0, 0))

    def rows(self) -> list:
        degrees = sorted(set(self.nu) | set(self.sigma))
        return [(t, *self.nu_at(t), *self.sigma_at(t)) for t in degrees]


def betti_table(d: Sequence) -> BettiBounds:
    """Assemble the full table of generator/syzygy intervals for a GMS vector."""
    _require_gms(d)
    d = tuple(d)
    alpha, reg = _alpha_reg_of_vector(d)

    nu = {}
    nu[alpha] = (ideal_hilbert(d, alpha),) * 2  # all minimal forms of least degree
    for t in range(alpha, reg):
        nu[t + 1] = improved_nu_bounds(d, t)

    h_ideal_seq = [ideal_hilbert(d, t) for t in range(reg + 2)]
    d3 = delta(h_ideal_seq, 3)
    sigma = {}
    for t in range(alpha, reg + 2):
        lo, hi = nu.get(t, (0, 0))
        shift = -d3[t]
        sigma[t] = (max(0, lo + shift), max(0, hi + shift))

    all_points = all(lo == hi for lo, hi in nu.values())
    determining = is_betti_determining(d)
    assert not determining or all_points  # the shape test promises collapse
    return BettiBounds(
        alpha=alpha,
        reg=reg,
        nu=nu,
        sigma=sigma,
        exact=determining or all_points,
    )


def is_betti_determining(d: Sequence) -> bool:
    """True when the vector has one of the three interval-collapsing shapes.

    (1) strictly decreasing; (2) m, m, m-1, ..., 2, 1; (3) a strictly
    decreasing head ending at least m+2 above form (2)'s tail.
    Assumes d positive and GMS.
    """
    d = tuple(d)
    if not d or not is_positive(d):
        return False
    if is_strictly_decreasing(d):
        return True
    repeats = [i for i in range(len(d) - 1) if d[i] == d[i + 1]]
    if len(repeats) != 1:
        return False
    i = repeats[0]
    m = d[i]
    if d[i:] != (m,) + tuple(range(m, 0, -1)):
        return False
    head = d[:i]
    if not head:
        return True
    return is_strictly_decreasing(head) and head[-1] >= m + 2
