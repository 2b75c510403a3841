import json

import pytest

from starlap import run_cli, save_graph
from starlap.fileio import parse_graph_file


@pytest.fixture
def fixture_files(tmp_path, f1, f2, f3, f4):
    paths = {}
    for name, g in (("f1", f1), ("f2", f2), ("f3", f3), ("f4", f4)):
        path = tmp_path / f"{name}.graph"
        save_graph(g, str(path))
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfoAndSpectrum:
    def test_info(self, capsys, fixture_files):
        code, out, _ = run(capsys, "info", fixture_files["f1"])
        assert code == 0 and "vertices: 5" in out

    def test_spectrum_values(self, capsys, fixture_files):
        code, out, _ = run(capsys, "--json", "spectrum", fixture_files["f1"])
        assert code == 0
        payload = json.loads(out)
        assert payload["values"] == pytest.approx([0.0, 2.0, 2.0, 3.0, 5.0], abs=1e-10)

    def test_spectrum_missing_file(self, capsys):
        code, _, err = run(capsys, "spectrum", "missing.graph")
        assert code == 1 and err

    def test_spectrum_normalized(self, capsys, fixture_files):
        code, out, _ = run(capsys, "--json", "spectrum", fixture_files["f1"], "--matrix", "normalized")
        assert code == 0
        assert json.loads(out)["values"] == pytest.approx([0.0, 1.0, 1.0, 1.0, 2.0], abs=1e-10)

    def test_usage_error(self, capsys):
        code, _, _ = run(capsys, "spectrum")
        assert code == 1


class TestStars:
    def test_path_reports_none(self, capsys, fixture_files):
        code, out, _ = run(capsys, "stars", fixture_files["f4"])
        assert code == 0 and "no stars detected" in out

    def test_bipartite(self, capsys, fixture_files):
        code, out, _ = run(capsys, "stars", fixture_files["f1"])
        assert code == 0
        assert "v1=[0, 1, 2]" in out and "PASS" in out


class TestLdep:
    def test_detects_fixture_groups(self, capsys, fixture_files):
        code, out, _ = run(capsys, "ldep", fixture_files["f1"])
        assert code == 0 and "PASS" in out

    def test_explicit_partition(self, capsys, tmp_path, fixture_files):
        part = tmp_path / "part.json"
        part.write_text(json.dumps({"v1": [0, 1], "v2": [2, 3, 4], "v3": [5]}))
        code, out, _ = run(capsys, "ldep", fixture_files["f3"], "--partition", str(part))
        assert code == 0 and "multiplicity 2 >= 1" in out

    def test_rejected_partition(self, capsys, tmp_path, fixture_files):
        part = tmp_path / "part.json"
        part.write_text(json.dumps({"v1": [0], "v2": [2, 3, 4], "v3": [5]}))
        code, out, _ = run(capsys, "ldep", fixture_files["f3"], "--partition", str(part))
        assert code == 2 and "REJECTED" in out


class TestReduce:
    def test_writes_reduced_graph(self, capsys, tmp_path, fixture_files):
        out_path = tmp_path / "reduced.graph"
        report_path = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "reduce", fixture_files["f2"], "--policy", "collapse",
            "-o", str(out_path), "--report", str(report_path),
        )
        assert code == 0
        reduced = parse_graph_file(out_path.read_text())
        assert reduced.n == 4 and sorted(reduced.mass) == [1.0, 1.0, 2.0, 2.0]
        report = json.loads(report_path.read_text())
        assert report["reduction"]["passed"] is True


class TestVerify:
    def test_fixtures_pass(self, capsys, fixture_files):
        code, out, _ = run(capsys, "verify", fixture_files["f1"], "--q", "1")
        assert code == 0 and "all checks passed" in out
        for name in ("f2", "f3", "f4"):
            code, _, _ = run(capsys, "verify", fixture_files[name])
            assert code == 0, name

    def test_q1_spectrum_match_reported(self, capsys, fixture_files):
        code, out, _ = run(capsys, "--json", "verify", fixture_files["f1"], "--q", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["reduction"]["reduced_vertices"] == 4
        assert payload["passed"] is True

    def test_mutated_fixture_fails_named(self, capsys, tmp_path, f1):
        from starlap import build_graph

        edges = [(u, v, 1.1 if (u, v) == (0, 3) else w) for u, v, w in f1.edges]
        mutated = tmp_path / "mutated.graph"
        save_graph(build_graph(5, edges), str(mutated))
        code, out, err = run(capsys, "verify", str(mutated), "--q", "1")
        assert code == 2
        assert "FAIL reduction-requested(q=1)" in out
        assert "reduction-requested" in err

    def test_bad_q(self, capsys, fixture_files):
        code, _, err = run(capsys, "verify", fixture_files["f1"], "--q", "0")
        assert code == 1 and err

    def test_overlapping_certificates_not_double_counted(self, capsys, tmp_path):
        # rows (1,2), (1,2), (2,1), (1.5,1.5) at strength 3: the duplicate-row
        # group sits inside the dependence certificate; summing both claims
        # would overstate the multiplicity of 3 (which is exactly 2)
        from starlap import build_graph

        g = build_graph(
            6,
            [
                (0, 4, 1.0), (0, 5, 2.0),
                (1, 4, 1.0), (1, 5, 2.0),
                (2, 4, 2.0), (2, 5, 1.0),
                (3, 4, 1.5), (3, 5, 1.5),
            ],
        )
        path = tmp_path / "overlap.graph"
        save_graph(g, str(path))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert "dependent-rows-multiplicity(w=3) (computed 2 >= 2)" in out


class TestPartitionCommand:
    def test_bisect(self, capsys, fixture_files):
        code, out, _ = run(capsys, "--json", "partition", fixture_files["f4"], "--bisect")
        assert code == 0
        assert json.loads(out)["labels"] == [0, 0, 1, 1]

    def test_rsb(self, capsys, fixture_files):
        code, out, _ = run(
            capsys, "--json", "partition", fixture_files["f4"], "--rsb", "--max-clusters", "4"
        )
        assert code == 0
        assert sorted(json.loads(out)["labels"]) == [0, 1, 2, 3]

    def test_kway_dot(self, capsys, tmp_path, fixture_files):
        dot = tmp_path / "out.dot"
        code, _, _ = run(
            capsys, "partition", fixture_files["f4"], "--kway", "2", "--dot", str(dot)
        )
        assert code == 0
        assert "graph G {" in dot.read_text()

    def test_disconnected_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "disc.graph"
        path.write_text("n 4\n0 1 1\n2 3 1\n")
        code, _, err = run(capsys, "partition", str(path), "--bisect")
        assert code == 1 and "Disconnected" in err


class TestCompare:
    def test_double_star(self, capsys, fixture_files):
        code, out, _ = run(capsys, "compare", fixture_files["f2"])
        assert code == 0 and "signs agree" in out

    def test_degenerate_inconclusive(self, capsys, fixture_files):
        code, out, _ = run(capsys, "compare", fixture_files["f1"])
        assert code == 0 and "inconclusive" in out


class TestJsonStability:
    @pytest.mark.parametrize(
        "argv",
        [
            ("--json", "spectrum", "{f1}"),
            ("--json", "stars", "{f1}"),
            ("--json", "verify", "{f2}"),
            ("--json", "ldep", "{f3}"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, fixture_files, argv):
        resolved = [a.format(**fixture_files) for a in argv]
        _, first, _ = run(capsys, *resolved)
        _, second, _ = run(capsys, *resolved)
        assert first == second and first
