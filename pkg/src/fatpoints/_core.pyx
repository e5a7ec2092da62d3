# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled exact elimination kernels.

Mirrors ``_kernels_py`` exactly: same pivot order, same normalizations.
Mod-p routines run on C 64-bit integers (safe for p below 2^31); the
fraction-free integer routine keeps Python integers for exactness and
only compiles away loop overhead.
"""

from libc.stdlib cimport free, malloc

BACKEND = "c"


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p, p prime
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


cdef long long* _to_buffer(rows, Py_ssize_t nr, Py_ssize_t nc, long long p) except NULL:
    cdef long long* m = <long long*> malloc(nr * nc * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef object row
    for i in range(nr):
        row = rows[i]
        for j in range(nc):
            m[i * nc + j] = row[j] % p
    return m


def rank_mod_p(rows, long long p):
    """Rank over the prime field, forward elimination only."""
    cdef Py_ssize_t nr = len(rows)
    cdef Py_ssize_t nc = len(rows[0]) if nr else 0
    if nr == 0 or nc == 0:
        return 0
    cdef long long* m = _to_buffer(rows, nr, nc, p)
    cdef Py_ssize_t rank = 0, c, i, j, pivot_row
    cdef long long inv, f, t
    try:
        for c in range(nc):
            if rank == nr:
                break
            pivot_row = -1
            for i in range(rank, nr):
                if m[i * nc + c] != 0:
                    pivot_row = i
                    break
            if pivot_row < 0:
                continue
            if pivot_row != rank:
                for j in range(nc):
                    t = m[rank * nc + j]
                    m[rank * nc + j] = m[pivot_row * nc + j]
                    m[pivot_row * nc + j] = t
            inv = _inv_mod(m[rank * nc + c], p)
            for i in range(rank + 1, nr):
                f = m[i * nc + c]
                if f != 0:
                    f = f * inv % p
                    for j in range(c, nc):
                        m[i * nc + j] = (m[i * nc + j] - f * m[rank * nc + j]) % p
                        if m[i * nc + j] < 0:
                            m[i * nc + j] += p
            rank += 1
    finally:
        free(m)
    return rank


def rref_mod_p(rows, long long p):
    """Reduced row echelon form over the prime field."""
    cdef Py_ssize_t nr = len(rows)
    cdef Py_ssize_t nc = len(rows[0]) if nr else 0
    if nr == 0 or nc == 0:
        return [list(item) for item in rows], []
    cdef long long* m = _to_buffer(rows, nr, nc, p)
    cdef Py_ssize_t r = 0, c, i, j, pivot_row
    cdef long long inv, f, t
    pivots = []
    try:
        for c in range(nc):
            if r == nr:
                break
            pivot_row = -1
            for i in range(r, nr):
                if m[i * nc + c] != 0:
                    pivot_row = i
                    break
            if pivot_row < 0:
                continue
            if pivot_row != r:
                for j in range(nc):
                    t = m[r * nc + j]
                    m[r * nc + j] = m[pivot_row * nc + j]
                    m[pivot_row * nc + j] = t
            inv = _inv_mod(m[r * nc + c], p)
            for j in range(nc):
                m[r * nc + j] = m[r * nc + j] * inv % p
            for i in range(nr):
                if i != r:
                    f = m[i * nc + c]
                    if f != 0:
                        for j in range(c, nc):
                            m[i * nc + j] = (m[i * nc + j] - f * m[r * nc + j]) % p
                            if m[i * nc + j] < 0:
                                m[i * nc + j] += p
            pivots.append(c)
            r += 1
        out = [[m[i * nc + j] for j in range(nc)] for i in range(nr)]
    finally:
        free(m)
    return out, pivots


def bareiss_echelon(rows):
    """Fraction-free integer row echelon form (Python integer entries)."""
    cdef list m = [list(item) for item in rows]
    cdef Py_ssize_t nr = len(m)
    cdef Py_ssize_t nc = len(m[0]) if nr else 0
    pivots = []
    cdef object prev = 1
    cdef object piv, f
    cdef list row, ri
    cdef Py_ssize_t r = 0, c, i, j, pivot_row
    for c in range(nc):
        if r == nr:
            break
        pivot_row = -1
        for i in range(r, nr):
            if (<list> m[i])[c] != 0:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        row = <list> m[r]
        piv = row[c]
        for i in range(r + 1, nr):
            ri = <list> m[i]
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
