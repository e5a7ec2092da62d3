"""Elimination kernels: backend parity and independent references.

The rational rank reference is a direct Fraction-based Gaussian
elimination; the mod-p rank reference counts the row span of tiny
matrices by brute force (|span| = p^rank).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints import _kernels_py
from fatpoints.linalg import ExactMatrix, nullspace, rank
from fatpoints.scheme import FieldSpec

try:
    from fatpoints import _core

    BACKENDS = [_kernels_py, _core]
except ImportError:
    BACKENDS = [_kernels_py]


def fraction_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    nr, nc = len(m), len(m[0]) if m else 0
    rank_ = 0
    for c in range(nc):
        pivot = next((i for i in range(rank_, nr) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank_], m[pivot] = m[pivot], m[rank_]
        inv = 1 / m[rank_][c]
        m[rank_] = [x * inv for x in m[rank_]]
        for i in range(nr):
            if i != rank_ and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank_])]
        rank_ += 1
        if rank_ == nr:
            break
    return rank_


def spanned_size(rows, p):
    """Brute-force row span cardinality over F_p (tiny matrices only)."""
    span = {tuple([0] * len(rows[0]))}
    for _ in range(len(rows)):
        new = set(span)
        for v in span:
            for row in rows:
                for c in range(1, p):
                    new.add(tuple((a + c * b) % p for a, b in zip(v, row)))
        if new == span:
            break
        span = new
    return len(span)


matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda nc: st.lists(
        st.lists(st.integers(min_value=-30, max_value=30), min_size=nc, max_size=nc),
        min_size=1,
        max_size=5,
    )
)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
class TestBackends:
    def test_identity(self, backend):
        eye = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        assert backend.rank_int(eye) == 3
        assert backend.rank_mod_p(eye, 5) == 3

    def test_zero(self, backend):
        z = [[0, 0], [0, 0]]
        assert backend.rank_int(z) == 0
        assert backend.rank_mod_p(z, 7) == 0

    def test_vandermonde(self, backend):
        xs = [1, 2, 3, 5]
        m = [[x**k for k in range(4)] for x in xs]
        assert backend.rank_int(m) == 4

    def test_rank_drops_mod_p(self, backend):
        m = [[1, 1], [1, 6]]  # determinant 5
        assert backend.rank_int(m) == 2
        assert backend.rank_mod_p(m, 5) == 1

    @settings(max_examples=150)
    @given(matrices)
    def test_rank_int_matches_fraction_reference(self, backend, rows):
        assert backend.rank_int(rows) == fraction_rank(rows)

    @settings(max_examples=60)
    @given(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3),
            min_size=1,
            max_size=3,
        ),
        st.sampled_from([2, 3, 5]),
    )
    def test_rank_mod_p_matches_span_count(self, backend, rows, p):
        size = spanned_size([[x % p for x in r] for r in rows], p)
        expected = 0
        while p**expected < size:
            expected += 1
        assert p**expected == size
        assert backend.rank_mod_p(rows, p) == expected

    @settings(max_examples=100)
    @given(matrices, st.sampled_from([2, 3, 5, 7, 101]))
    def test_rref_kernel_annihilates(self, backend, rows, p):
        reduced, pivots = backend.rref_mod_p(rows, p)
        assert backend.rank_mod_p(rows, p) == len(pivots)
        nc = len(rows[0])
        free = [c for c in range(nc) if c not in set(pivots)]
        for f in free:
            vec = [0] * nc
            vec[f] = 1
            for r, c in enumerate(pivots):
                vec[c] = (-reduced[r][f]) % p
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) % p == 0


def test_backend_parity_when_compiled_available():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend unavailable")
    import random

    rng = random.Random(3)
    for _ in range(100):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-50, 50) for _ in range(nc)] for _ in range(nr)]
        p = rng.choice([2, 3, 5, 7, 101, 2147483647])
        assert _kernels_py.rank_mod_p(rows, p) == _core.rank_mod_p(rows, p)
        assert _kernels_py.rank_int(rows) == _core.rank_int(rows)
        assert _kernels_py.rref_mod_p(rows, p) == _core.rref_mod_p(rows, p)
        e1, p1 = _kernels_py.bareiss_echelon(rows)
        e2, p2 = _core.bareiss_echelon(rows)
        assert p1 == p2 and e1 == e2


class TestExactMatrix:
    def test_rank_rational_entries(self):
        m = ExactMatrix(
            FieldSpec.rationals(),
            ((Fraction(1, 2), Fraction(1, 3)), (Fraction(3), Fraction(2))),
        )
        assert rank(m) == 1  # second row is 6x the first

    def test_nullspace_rational(self):
        m = ExactMatrix(FieldSpec.rationals(), ((1, 2, 3), (0, 1, 1)))
        basis = nullspace(m)
        assert len(basis) == 1
        for row in m.rows:
            assert sum(a * b for a, b in zip(row, basis[0])) == 0

    def test_nullspace_mod_p(self):
        m = ExactMatrix(FieldSpec.prime(5), ((1, 2, 3), (2, 4, 6)))
        basis = nullspace(m)
        assert len(basis) == 2
        for vec in basis:
            for row in m.rows:
                assert sum(a * b for a, b in zip(row, vec)) % 5 == 0

    def test_nullspace_dimension_theorem(self):
        import random

        rng = random.Random(9)
        for _ in range(60):
            nr, nc = rng.randint(1, 6), rng.randint(1, 6)
            rows = tuple(tuple(rng.randint(-9, 9) for _ in range(nc)) for _ in range(nr))
            m = ExactMatrix(FieldSpec.rationals(), rows)
            assert rank(m) + len(nullspace(m)) == nc
            for vec in nullspace(m):
                for row in rows:
                    assert sum(a * b for a, b in zip(row, vec)) == 0

    def test_empty(self):
        m = ExactMatrix(FieldSpec.rationals(), ())
        assert rank(m) == 0

    def test_ragged_rejected(self):
        from fatpoints.errors import PreconditionError

        with pytest.raises(PreconditionError):
            ExactMatrix(FieldSpec.rationals(), ((1, 2), (1,)))
