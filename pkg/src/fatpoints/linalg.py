"""Exact dense matrices over the rationals or a prime field.

Only the oracle uses these.  No floating point anywhere: rational matrices
are scaled row-wise to integers (row scaling changes neither rank nor
right kernel) and eliminated fraction-free; prime-field matrices are
eliminated mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import _kernels
from .errors import PreconditionError
from .scheme import FieldSpec

__all__ = ["ExactMatrix", "rank", "nullspace"]

# Modular certificate prime for the rational rank shortcut: when the rank
# mod this prime already hits min(nrows, ncols) the rational rank is forced
# (rank can only drop under reduction), and the fraction-free pass is skipped.
_CERT_PRIME = 2147483647


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with exact entries; rows of ints (or Fractions over Q)."""

    field: FieldSpec
    rows: tuple

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise PreconditionError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def integer_rows(self) -> list:
        """Row-wise integerized copy (primitive integer rows over Q)."""
        if self.field.kind == "Fp":
            p = self.field.p
            return [[int(x) % p for x in row] for row in self.rows]
        out = []
        for row in self.rows:
            fracs = [Fraction(x) for x in row]
            scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
            ints = [int(f * scale) for f in fracs]
            g = 0
            for x in ints:
                g = gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            out.append(ints)
        return out


def rank(matrix: ExactMatrix) -> int:
    """Exact rank; fraction-free over Q, modular over a prime field."""
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    rows = matrix.integer_rows()
    if matrix.field.kind == "Fp":
        return _kernels.rank_mod_p(rows, matrix.field.p)
    cap = min(matrix.nrows, matrix.ncols)
    certified = _kernels.rank_mod_p(rows, _CERT_PRIME)
    if certified == cap:
        return cap
    return _kernels.rank_int(rows)


def nullspace(matrix: ExactMatrix) -> list:
    """Deterministic right-kernel basis, one vector per free column.

    Over a prime field the free coordinate is 1; over the rationals each
    vector is scaled to primitive integers with a positive free coordinate.
    """
    nc = matrix.ncols
    if matrix.nrows == 0:
        return [tuple(1 if i == j else 0 for i in range(nc)) for j in range(nc)]
    rows = matrix.integer_rows()
    if matrix.field.kind == "Fp":
        p = matrix.field.p
        rref, pivots = _kernels.rref_mod_p(rows, p)
        basis = []
        pivot_set = set(pivots)
        for free in range(nc):
            if free in pivot_set:
                continue
            vec = [0] * nc
            vec[free] = 1
            for r, c in enumerate(pivots):
                vec[c] = (-rref[r][free]) % p
            basis.append(tuple(vec))
        return basis
    return _rational_nullspace(rows, nc)


def _rational_nullspace(rows: list, nc: int) -> list:
    echelon, pivots = _kernels.bareiss_echelon(rows)
    pivot_set = set(pivots)
    rank_ = len(pivots)
    basis = []
    for free in range(nc):
        if free in pivot_set:
            continue
        # back-substitute the upper-triangular system with the free column at 1
        x = {free: Fraction(1)}
        for r in range(rank_ - 1, -1, -1):
            c = pivots[r]
            s = Fraction(echelon[r][free])
            for cc in pivots[r + 1 :]:
                if echelon[r][cc]:
                    s += echelon[r][cc] * x[cc]
            x[c] = -s / echelon[r][c]
        vec = [x.get(j, Fraction(0)) for j in range(nc)]
        scale = lcm(*(f.denominator for f in vec))
        ints = [int(f * scale) for f in vec]
        g = 0
        for val in ints:
            g = gcd(g, val)
        if g > 1:
            ints = [val // g for val in ints]
        basis.append(tuple(ints))
    return basis
