"""Scheme data model, residuation engine, and the JSON wire format."""

import random

import pytest

from fatpoints.configs import grid_scheme, zach_scheme
from fatpoints.errors import SchemeFormatError, StructureError
from fatpoints.scheme import (
    FatPointScheme,
    FieldSpec,
    NamedLine,
    dump_scheme,
    load_scheme,
    scheme_from_dict,
)


def small_scheme():
    return zach_scheme()


class TestResidual:
    def test_first_line(self):
        scheme = small_scheme()
        res, deg = scheme.residual("l1")
        assert deg == 3
        assert dict(res.points) == {"p1": 1, "p2": 0, "p3": 1, "p4": 2, "p5": 1, "p6": 1}

    def test_empty_incidence_is_null_operation(self):
        scheme = small_scheme()
        res, deg = scheme.residual(NamedLine("ghost", frozenset()))
        assert deg == 0 and res.points == scheme.points

    def test_unknown_point_rejected(self):
        scheme = small_scheme()
        with pytest.raises(StructureError):
            scheme.residual(NamedLine("bad", frozenset({"nope"})))

    def test_star_first_line_degree(self):
        from fatpoints.configs import star_scheme

        star = star_scheme(5, 3)
        line = star.lines[0]
        _, deg = star.residual(line)
        assert deg == 12

    def test_floor_at_zero(self):
        scheme = FatPointScheme(2, (("a", 1),), (NamedLine("L", frozenset({"a"})),))
        once, d1 = scheme.residual("L")
        twice, d2 = once.residual("L")
        assert d1 == 1 and d2 == 0
        assert twice.multiplicity("a") == 0


class TestReduce:
    def test_grid_schedules(self):
        grid = grid_scheme(3, 5, ("V1H1", "V1H2", "V2H3"))
        t1 = grid.reduce(["H1", "H2", "H3", "V1", "V2"])
        assert t1.vector == (6, 6, 6, 2, 1) and t1.full
        t2 = grid.reduce(["V1", "V2", "V3", "V4", "V5", "V1", "V2"])
        assert t2.vector == (5, 4, 3, 3, 3, 2, 1) and t2.full

    def test_zach_schedule(self):
        trace = small_scheme().reduce(["l1", "l3", "l2", "l4"])
        assert trace.vector == (3, 3, 2, 2) and trace.full

    def test_empty_scheme_empty_schedule(self):
        empty = FatPointScheme(2, ())
        trace = empty.reduce([])
        assert trace.vector == () and trace.full

    def test_zero_step_warning(self):
        scheme = small_scheme()
        trace = scheme.reduce(["l1", "l1", "l1"])
        assert trace.vector == (3, 1, 0)
        assert len(trace.warnings) == 1 and "zero-degree" in trace.warnings[0]

    def test_unresolved_name(self):
        with pytest.raises(StructureError):
            small_scheme().reduce(["nope"])

    def test_degree_accounting(self):
        scheme = small_scheme()
        trace = scheme.reduce(["l1", "l3", "l2", "l4"])
        assert sum(trace.vector) == scheme.degree()


class TestDegree:
    def test_grid(self):
        grid = grid_scheme(3, 5, ("V1H1", "V1H2", "V2H3"))
        assert grid.degree() == 21 == 12 * 1 + 3 * 3
        assert grid.degree() == sum((6, 6, 6, 2, 1))

    def test_empty(self):
        assert FatPointScheme(2, ()).degree() == 0

    def test_triple_points(self):
        from fatpoints.configs import star_scheme

        assert star_scheme(5, 3).degree() == 60

    def test_higher_ambient(self):
        scheme = FatPointScheme(3, (("a", 2), ("b", 1)))
        # deg(2p) = C(4,3) = 4 in P^3, deg(p) = 1
        assert scheme.degree() == 5

    def test_hyperplane_intersection_degree_accounts(self):
        # a double point in P^3 meets a hyperplane in a planar double point
        scheme = FatPointScheme(3, (("a", 2),), (NamedLine("H", frozenset({"a"})),))
        res, deg = scheme.residual("H")
        assert deg == 3  # C(2+1, 2)
        assert scheme.degree() - res.degree() == deg


def random_incidence_scheme(rng):
    n_pts = rng.randint(1, 7)
    pts = tuple((f"p{i}", rng.randint(0, 3)) for i in range(n_pts))
    lines = []
    used = set()
    for j in range(rng.randint(1, 5)):
        size = rng.randint(0, 2)
        incid = frozenset(rng.sample([p for p, _ in pts], min(size, n_pts)))
        key = incid
        if key in used:  # two named lines may not share two points; keep them distinct
            continue
        if any(len(incid & other) > 1 for other in used):
            continue
        used.add(key)
        lines.append(NamedLine(f"L{j}", incid))
    return FatPointScheme(2, pts, tuple(lines))


def test_degree_accounting_random_structures():
    rng = random.Random(7)
    for _ in range(200):
        scheme = random_incidence_scheme(rng)
        names = [line.name for line in scheme.lines]
        schedule = [rng.choice(names) for _ in range(rng.randint(0, 8))]
        current, total = scheme, 0
        for name in schedule:
            before = current.degree()
            current, d = current.residual(name)
            assert current.degree() == before - d
            total += d
        assert total == scheme.degree() - current.degree()
        assert all(m >= 0 for _, m in current.points)


def test_full_traces_sum_is_permutation_invariant():
    rng = random.Random(11)
    for _ in range(60):
        scheme = random_incidence_scheme(rng)
        names = [line.name for line in scheme.lines]
        # repeat lines enough to exhaust every point that lies on some line
        schedule = names * 4
        covered = set().union(*(line.incidence for line in scheme.lines)) if scheme.lines else set()
        reducible = all(m == 0 or p in covered for p, m in scheme.points)
        t1 = scheme.reduce(schedule)
        perm = schedule[:]
        rng.shuffle(perm)
        t2 = scheme.reduce(perm)
        if t1.full and t2.full:
            assert sum(t1.vector) == sum(t2.vector) == scheme.degree()
        if reducible:
            assert t1.full


class TestValidate:
    def test_two_lines_sharing_two_points(self):
        scheme = FatPointScheme(
            2,
            (("a", 1), ("b", 1), ("c", 1)),
            (NamedLine("L1", frozenset({"a", "b"})), NamedLine("L2", frozenset({"a", "b"}))),
        )
        violations = scheme.validate()
        assert len(violations) == 1 and violations[0].kind == "line-pair-overlap"

    def test_incidence_maximality(self):
        # b lies on the line x=0 but is missing from the incidence set
        scheme = FatPointScheme(
            2,
            (("a", 1), ("b", 1)),
            (NamedLine("L", frozenset({"a"}), coeffs=(1, 0, 0)),),
            coords={"a": (0, 1, 1), "b": (0, 2, 1)},
        )
        kinds = {v.kind for v in scheme.validate()}
        assert kinds == {"incidence-not-maximal"}

    def test_valid_grid_is_clean(self):
        assert grid_scheme(3, 5, ("V1H1",)).validate() == []

    def test_collinearity_determinant(self):
        scheme = FatPointScheme(
            2,
            (("a", 1), ("b", 1), ("c", 1)),
            (NamedLine("L", frozenset({"a", "b", "c"})),),
            coords={"a": (0, 0, 1), "b": (1, 0, 1), "c": (1, 1, 1)},
        )
        kinds = {v.kind for v in scheme.validate()}
        assert "not-collinear" in kinds


GOOD_DOC = """
{"ambient_dim": 2,
 "field": {"kind": "Q"},
 "points": [{"id": "a", "mult": 2, "coords": ["0", "1/2", "1"]},
            {"id": "b", "mult": 1}],
 "lines": [{"name": "L", "points": ["a"], "coeffs": ["1", "0", "0"]}]}
"""


class TestJson:
    def test_round_trip(self):
        scheme = load_scheme(GOOD_DOC)
        assert scheme.multiplicity("a") == 2
        again = load_scheme(dump_scheme(scheme))
        assert again == scheme

    def test_grid_round_trip(self):
        grid = grid_scheme(3, 5, ("V1H1", "V1H2", "V2H3"))
        assert load_scheme(dump_scheme(grid)) == grid

    def test_unknown_top_key(self):
        with pytest.raises(SchemeFormatError, match="unknown"):
            scheme_from_dict({"ambient_dim": 2, "field": {"kind": "Q"}, "points": [], "lines": [], "extra": 1})

    def test_unknown_point_key(self):
        with pytest.raises(SchemeFormatError, match="unknown"):
            scheme_from_dict(
                {"ambient_dim": 2, "field": {"kind": "Q"},
                 "points": [{"id": "a", "mult": 1, "colour": "red"}], "lines": []}
            )

    def test_missing_field(self):
        with pytest.raises(SchemeFormatError, match="field"):
            scheme_from_dict({"ambient_dim": 2, "points": [], "lines": []})

    def test_bad_rational(self):
        with pytest.raises(SchemeFormatError):
            FieldSpec.rationals().parse("1/0")

    def test_prime_field_elements(self):
        f7 = FieldSpec.prime(7)
        assert f7.parse("10") == 3
        assert f7.parse("1/2") == 4  # inverse of 2 mod 7

    def test_nonprime_field_rejected(self):
        with pytest.raises(SchemeFormatError):
            FieldSpec.prime(6)

    def test_line_with_unknown_point(self):
        with pytest.raises(SchemeFormatError, match="unknown point"):
            scheme_from_dict(
                {"ambient_dim": 2, "field": {"kind": "Q"}, "points": [],
                 "lines": [{"name": "L", "points": ["ghost"]}]}
            )

    def test_zero_coords_rejected(self):
        with pytest.raises(SchemeFormatError, match="zero"):
            scheme_from_dict(
                {"ambient_dim": 2, "field": {"kind": "Fp", "p": 7},
                 "points": [{"id": "a", "mult": 1, "coords": ["7", "0", "14"]}], "lines": []}
            )

    def test_invalid_json(self):
        with pytest.raises(SchemeFormatError, match="JSON"):
            load_scheme("{nope")
