"""Pure-Python exact elimination kernels.

Semantics are shared bit-for-bit with the compiled backend in ``_core``:
same pivot choices (first nonzero, top-down), same normalizations, so the
two are interchangeable and the selector in ``_kernels`` may pick either.

All mod-p routines expect 0 <= entry < p.  The fraction-free routine works
on arbitrary Python integers; intermediate entries stay minors of the
input matrix, so divisions are exact.
"""

from __future__ import annotations

BACKEND = "python"


def rank_mod_p(rows, p):
    """Rank over the prime field, forward elimination only."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        pivot_row = -1
        for i in range(rank, nr):
            if m[i][c] % p:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = pow(m[rank][c] % p, -1, p)
        row = m[rank]
        for i in range(rank + 1, nr):
            f = m[i][c] % p
            if f:
                f = f * inv % p
                ri = m[i]
                for j in range(c, nc):
                    ri[j] = (ri[j] - f * row[j]) % p
        rank += 1
    return rank


def rref_mod_p(rows, p):
    """Reduced row echelon form over the prime field.

    Returns (rref rows, pivot column list); pivot entries are 1 and pivot
    columns are cleared above and below.
    """
    m = [[x % p for x in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pivot_row = -1
        for i in range(r, nr):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        row = m[r]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                ri = m[i]
                for j in range(c, nc):
                    ri[j] = (ri[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def bareiss_echelon(rows):
    """Fraction-free integer row echelon form.

    Returns (echelon rows, pivot column list).  The update
    new = (pivot * entry - factor * pivot_row_entry) / previous_pivot
    is applied to every trailing entry, zero factors included; skipping
    them would break the exact-division invariant downstream.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pivot_row = -1
        for i in range(r, nr):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][c]
        row = m[r]
        for i in range(r + 1, nr):
            ri = m[i]
            f = ri[c]
            for j in range(c + 1, nc):
                ri[j] = (piv * ri[j] - f * row[j]) // prev
            ri[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def rank_int(rows):
    """Exact rank of an integer matrix over the rationals."""
    _, pivots = bareiss_echelon(rows)
    return len(pivots)
