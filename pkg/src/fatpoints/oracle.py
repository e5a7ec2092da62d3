"""Independent ground truth via exact linear algebra.

The Hilbert function of a plane fat point scheme is the rank of the matrix
whose rows impose vanishing to the prescribed order at each point.  Rows
use divided-power (Hasse) derivatives of the dehomogenized monomials, so
the vanishing-order conditions are correct in every characteristic; the
binomial-weight row for orders (a, b) at a point with chart coordinate k is

    C(e_u, a) * C(e_v, b) * c_u^(e_u - a) * c_v^(e_v - b) * c_k^(e_k)

per degree-t monomial with exponents e, after scaling the point so the
entries stay in the ring of integers of the field.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Optional

from .bounds import binom
from .errors import PreconditionError
from .linalg import ExactMatrix, nullspace, rank
from .scheme import FatPointScheme

__all__ = [
    "monomials",
    "condition_matrix",
    "hilbert_oracle",
    "ideal_hilbert_oracle",
    "ideal_basis",
    "nu_oracle",
    "oracle_regularity",
]


def monomials(t: int) -> list:
    """Exponent triples of degree t in graded lexicographic order (descending)."""
    out = []
    for e0 in range(t, -1, -1):
        for e1 in range(t - e0, -1, -1):
            out.append((e0, e1, t - e0 - e1))
    return out


def _integer_coords(scheme: FatPointScheme, pid: str) -> tuple:
    vec = scheme.coords[pid]
    if scheme.field.kind == "Fp":
        p = scheme.field.p
        ints = [int(x) % p for x in vec]
    else:
        fracs = [Fraction(x) for x in vec]
        scale = 1
        for f in fracs:
            scale = scale * f.denominator // gcd(scale, f.denominator)
        ints = [int(f * scale) for f in fracs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
    if all(x == 0 for x in ints):
        raise PreconditionError(f"point {pid} has zero coordinate vector")
    return tuple(ints)


def _check_oracle_input(scheme: FatPointScheme) -> None:
    if scheme.ambient_dim != 2:
        raise PreconditionError("the oracle handles the projective plane only")
    coords = scheme.coords or {}
    missing = [pid for pid, m in scheme.points if m > 0 and pid not in coords]
    if missing:
        raise PreconditionError(f"missing coordinates for points {missing}")


def condition_matrix(
    scheme: FatPointScheme, t: int, charts: Optional[dict] = None
) -> ExactMatrix:
    """Vanishing conditions on degree-t forms, one row per derivative order.

    ``charts`` optionally forces the dehomogenization coordinate per point
    (used to test chart independence); by default the first position with
    a nonzero entry is taken.
    """
    _check_oracle_input(scheme)
    cols = monomials(t)
    p = scheme.field.p if scheme.field.kind == "Fp" else 0
    rows = []
    for pid, mult in scheme.points:
        if mult == 0:
            continue
        c = _integer_coords(scheme, pid)
        if charts and pid in charts:
            k = charts[pid]
            if c[k] == 0 or (p and c[k] % p == 0):
                raise PreconditionError(f"chart {k} vanishes at point {pid}")
        else:
            k = next(i for i in range(3) if (c[i] % p if p else c[i]) != 0)
        u, v = [i for i in range(3) if i != k]
        for order in range(mult):
            for a in range(order + 1):
                b = order - a
                row = []
                for e in cols:
                    eu, ev, ek = e[u], e[v], e[k]
                    if a > eu or b > ev:
                        row.append(0)
                        continue
                    val = comb(eu, a) * comb(ev, b) * c[u] ** (eu - a) * c[v] ** (ev - b) * c[k] ** ek
                    row.append(val % p if p else val)
                rows.append(row)
    return ExactMatrix(field=scheme.field, rows=tuple(tuple(r) for r in rows))


def hilbert_oracle(scheme: FatPointScheme, t: int, charts: Optional[dict] = None) -> int:
    """h(t) of the scheme: number of independent conditions in degree t."""
    if t < 0:
        return 0
    return rank(condition_matrix(scheme, t, charts))


def ideal_hilbert_oracle(scheme: FatPointScheme, t: int) -> int:
    """Dimension of the degree-t part of the defining ideal."""
    if t < 0:
        return 0
    return binom(t + 2, 2) - hilbert_oracle(scheme, t)


def ideal_basis(scheme: FatPointScheme, t: int) -> list:
    """Deterministic coefficient-vector basis of the degree-t ideal part."""
    if t < 0:
        return []
    return nullspace(condition_matrix(scheme, t))


def nu_oracle(scheme: FatPointScheme, t: int) -> int:
    """Number of degree-(t+1) minimal generators of the ideal.

    Cokernel dimension of multiplication by linear forms: the degree-t
    basis is pushed up by each of the three variables and the span of the
    images is ranked exactly.
    """
    _check_oracle_input(scheme)
    dim_next = ideal_hilbert_oracle(scheme, t + 1)
    if t < 0:
        return dim_next
    basis = ideal_basis(scheme, t)
    if not basis:
        return dim_next
    cols_t = monomials(t)
    index_next = {e: i for i, e in enumerate(monomials(t + 1))}
    shifted = []
    for g in basis:
        for var in range(3):
            row = [0] * len(index_next)
            for coeff, e in zip(g, cols_t):
                if coeff:
                    bumped = list(e)
                    bumped[var] += 1
                    row[index_next[tuple(bumped)]] = (
                        coeff % scheme.field.p if scheme.field.kind == "Fp" else coeff
                    )
            shifted.append(tuple(row))
    image_rank = rank(ExactMatrix(field=scheme.field, rows=tuple(shifted)))
    return dim_next - image_rank


def oracle_regularity(scheme: FatPointScheme, cap: int = 64) -> int:
    """Least t with h(t-1) equal to the scheme degree, scanned via the oracle."""
    deg = scheme.degree()
    t = 0
    while t <= cap:
        if hilbert_oracle(scheme, t - 1) == deg:
            return t
        t += 1
    raise PreconditionError(f"regularity exceeds the scan cap {cap}")
