"""Command surface: outputs, exit codes, determinism, round trips."""

import json

from fatpoints.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_vector_output(self, capsys):
        code, out, _ = run(capsys, "bounds", "--vector", "6,6,6,2,1")
        assert code == 0
        assert out == "f: 1,3,6,10,15,18,20,21,…\nF: 1,3,6,10,15,18,21,…\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "bounds", "--vector", "3,3,2,2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["f"] == {"prefix": [1, 3, 6, 9, 10], "stable": 10}
        assert doc["F"] == {"prefix": [1, 3, 6, 10], "stable": 10}

    def test_bad_vector(self, capsys):
        code, _, err = run(capsys, "bounds", "--vector", "3,x")
        assert code == 2 and "error" in err

    def test_negative_vector(self, capsys):
        code, _, err = run(capsys, "bounds", "--vector", "3,-1")
        assert code == 2 and "non-negative" in err


class TestGms:
    def test_pattern_witness(self, capsys):
        code, out, _ = run(capsys, "gms", "--vector", "3,3,2,2")
        assert code == 0 and out == "false: pattern (3,3,2,2)\n"

    def test_true_verdict(self, capsys):
        code, out, _ = run(capsys, "gms", "--vector", "9,6,4,3,2")
        assert code == 0 and out == "true\n"

    def test_pair_witness_non_monotone(self, capsys):
        code, out, _ = run(capsys, "gms", "--vector", "1,1,5")
        assert code == 0 and out.startswith("false: pair (")


class TestBetti:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "betti", "--vector", "12,11,10,9,8,4,3,2,1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "alpha\t9" and lines[1] == "reg\t12" and lines[2] == "exact\ttrue"
        assert "9\t5\t5\t0\t0" in lines
        assert "12\t5\t5\t0\t0" in lines

    def test_non_gms_exit_code(self, capsys):
        code, _, err = run(capsys, "betti", "--vector", "6,6,6,2,1")
        assert code == 3 and "GMS" in err


class TestSchemePipeline:
    def test_gen_reduce_bounds_check(self, tmp_path, capsys):
        path = str(tmp_path / "star.json")
        code, _, _ = run(capsys, "gen", "--family", "star-config", "--s", "5", "--m", "3", "-o", path)
        assert code == 0

        code, out, _ = run(capsys, "reduce", "--scheme", path, "--greedy")
        assert code == 0
        assert "vector\t12,11,10,9,8,4,3,2,1" in out
        assert out.rstrip().endswith("full\ttrue")

        code, out, _ = run(
            capsys, "bounds", "--scheme", path,
            "--lines", "L1,L2,L3,L4,L5,L1,L2,L3,L4",
        )
        assert code == 0
        assert out.startswith("f: 1,3,6,10,15,21,28,36,45,50,55,60,…\n")

        code, out, _ = run(
            capsys, "check", "--scheme", path,
            "--lines", "L1,L2,L3,L4,L5,L1,L2,L3,L4",
        )
        assert code == 0
        assert out.rstrip().splitlines()[-1] == "result\tPASS"

    def test_gen_stdout_roundtrip(self, capsys, tmp_path):
        code, out, _ = run(capsys, "gen", "--family", "zach-example")
        assert code == 0
        path = tmp_path / "zach.json"
        path.write_text(out, encoding="utf-8")
        code, out2, _ = run(capsys, "reduce", "--scheme", str(path), "--lines", "l1,l3,l2,l4")
        assert code == 0 and "vector\t3,3,2,2" in out2

    def test_hilbert_values(self, tmp_path, capsys):
        path = str(tmp_path / "grid.json")
        run(capsys, "gen", "--family", "grid", "--rows", "3", "--cols", "5",
            "--doubles", "V1H1,V1H2,V2H3", "-o", path)
        code, out, _ = run(capsys, "hilbert", "--scheme", path)
        assert code == 0
        rows = [line.split("\t") for line in out.splitlines()[1:]]
        values = [int(h) for _, h in rows]
        assert values == [1, 3, 6, 10, 15, 18, 21, 21]

    def test_hilbert_requires_coords(self, tmp_path, capsys):
        path = str(tmp_path / "z.json")
        run(capsys, "gen", "--family", "zach-example", "-o", path)
        code, _, err = run(capsys, "hilbert", "--scheme", path)
        assert code == 3 and "coordinates" in err

    def test_check_partial_schedule_rejected(self, tmp_path, capsys):
        path = str(tmp_path / "star.json")
        run(capsys, "gen", "--family", "star-config", "--s", "4", "--m", "1", "-o", path)
        code, _, err = run(capsys, "check", "--scheme", path, "--lines", "L1")
        assert code == 3 and "totally reduce" in err

    def test_check_detects_sandwich_failure(self, tmp_path, capsys):
        # scheme file with coordinates deliberately inconsistent with the
        # claimed incidence: 3 collinear points but lines pretending otherwise
        doc = {
            "ambient_dim": 2,
            "field": {"kind": "Q"},
            "points": [
                {"id": "a", "mult": 1, "coords": ["0", "0", "1"]},
                {"id": "b", "mult": 1, "coords": ["1", "0", "1"]},
                {"id": "c", "mult": 1, "coords": ["2", "0", "1"]},
            ],
            "lines": [
                {"name": "L1", "points": ["a", "b", "c"]},
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        # vector (3): f=F=(1,2,3) but a line through 3 collinear points is fine;
        # instead claim a two-step split that over-promises degree growth
        doc["lines"] = [
            {"name": "L1", "points": ["a", "b"]},
            {"name": "L2", "points": ["c"]},
        ]
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run(capsys, "check", "--scheme", str(path), "--lines", "L1,L2")
        # vector (2,1): bounds claim h(1)=3, truth is 2 (points are collinear)
        assert code == 4
        assert "FAIL" in out

    def test_malformed_scheme_file(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{broken", encoding="utf-8")
        code, _, err = run(capsys, "reduce", "--scheme", str(path), "--lines", "a")
        assert code == 2 and "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "hilbert", "--scheme", "/nonexistent/x.json")
        assert code == 2

    def test_bad_budget_entry(self, tmp_path, capsys):
        path = str(tmp_path / "g.json")
        run(capsys, "gen", "--family", "grid", "--rows", "2", "--cols", "2", "-o", path)
        code, _, err = run(capsys, "reduce", "--scheme", path, "--greedy", "--budget", "H1=x")
        assert code == 2 and "budget" in err

    def test_zero_step_warning_on_stderr(self, tmp_path, capsys):
        path = str(tmp_path / "z.json")
        run(capsys, "gen", "--family", "zach-example", "-o", path)
        code, out, err = run(capsys, "reduce", "--scheme", path, "--lines", "l1,l1,l1")
        assert code == 0
        assert "zero-degree" in err
        assert "vector\t3,1,0" in out


class TestDeterminism:
    def test_byte_identical_runs(self, capsys, tmp_path):
        path = str(tmp_path / "p.json")
        outs = set()
        for _ in range(2):
            run(capsys, "gen", "--family", "projective-plane-fq", "--q", "3", "-o", path)
            code, out, _ = run(capsys, "reduce", "--scheme", path, "--greedy", "--budget-uniform", "1")
            assert code == 0
            outs.add(out)
        assert len(outs) == 1

    def test_gen_output_accepted_everywhere(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        run(capsys, "gen", "--family", "star-config", "--s", "4", "--m", "2", "-o", path)
        for argv in (
            ["reduce", "--scheme", path, "--greedy"],
            ["bounds", "--scheme", path, "--greedy"],
            ["hilbert", "--scheme", path],
            ["check", "--scheme", path, "--greedy"],
        ):
            code, _, err = run(capsys, *argv)
            assert code == 0, (argv, err)


class TestGenFamilies:
    def test_intersections_with_coeffs(self, capsys):
        code, out, _ = run(
            capsys, "gen", "--family", "intersections",
            "--e", "1,1", "--coeffs", "1,0,0;0,1,0",
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["points"]) == 1 and doc["points"][0]["mult"] == 2

    def test_intersections_concurrences(self, capsys):
        code, out, _ = run(
            capsys, "gen", "--family", "intersections",
            "--e", "1,1,1,1", "--concurrences", "1,2,3",
        )
        assert code == 0
        doc = json.loads(out)
        assert sorted(p["mult"] for p in doc["points"]) == [2, 2, 2, 3]

    def test_missing_required_family_flag(self, capsys):
        code, _, err = run(capsys, "gen", "--family", "grid", "--cols", "5")
        assert code == 2 and "--rows" in err
        code, _, err = run(capsys, "gen", "--family", "star-config")
        assert code == 2 and "--s" in err

    def test_dual_hesse_json(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "dual-hesse", "--p", "7")
        assert code == 0
        doc = json.loads(out)
        assert doc["field"] == {"kind": "Fp", "p": 7}
        assert len(doc["points"]) == 12 and len(doc["lines"]) == 9
