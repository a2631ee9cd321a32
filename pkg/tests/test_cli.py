import json
import shutil
from pathlib import Path

import pytest

from anglemethod import fixtures
from anglemethod.angle_model import ConstraintSystem
from anglemethod.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
K4 = "p 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def two_lines(tmp_path):
    path = tmp_path / "two.json"
    path.write_text(json.dumps({
        "lines": ["a", "b"],
        "constraints": [{"kind": "angle", "lines": [0, 1], "rhs": {"pi": "0", "symbols": {"phi": "1"}}}],
    }))
    return path


class TestShippedFixtures:
    @pytest.mark.parametrize(
        "name, system",
        [
            ("fig1", fixtures.fig1_system()),
            ("fig1_mixed", fixtures.fig1_system(fixtures.FIG1_MIXED_KINDS)),
            ("fig3a", fixtures.fig3a_system()),
            ("fig3b", fixtures.fig3b_system()),
        ],
    )
    def test_json_matches_embedded(self, name, system):
        assert ConstraintSystem.from_json((FIXTURES / f"{name}.json").read_text()) == system

    def test_figure4(self):
        assert (FIXTURES / "figure4.txt").read_text() == fixtures.figure4_text()


class TestSolve:
    def test_fig3a(self, capsys):
        code, out, _ = run(capsys, "solve", "--system", FIXTURES / "fig3a.json", "--angle", "12", "13")
        assert code == 0
        assert out.strip() == "d(12) - d(13) = 0 (mod 2*pi/2)"

    def test_echo_phi(self, capsys, two_lines):
        code, out, _ = run(capsys, "solve", "--system", two_lines, "--angle", "a", "b")
        assert (code, out.strip()) == (0, "d(a) - d(b) = phi")

    def test_unknown_line(self, capsys, two_lines):
        code, _, err = run(capsys, "solve", "--system", two_lines, "--angle", "a", "zz")
        assert code == 2 and "unknown line" in err

    def test_undetermined(self, capsys):
        code, out, _ = run(capsys, "solve", "--system", FIXTURES / "fig1.json", "--angle", "A", "B")
        assert (code, out.strip()) == (3, "undetermined")

    def test_bad_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "solve", "--system", bad, "--angle", "a", "b")[0] == 2
        assert run(capsys, "solve", "--system", tmp_path / "missing.json", "--angle", "a", "b")[0] == 2


class TestDiscover:
    def test_fig1(self, capsys, tmp_path):
        out_file = tmp_path / "r.json"
        code, _, _ = run(
            capsys, "discover", "--system", FIXTURES / "fig1.json", "--exhaustive",
            "--min-hypotheses", 7, "--max-support", 2, "--out", out_file,
        )
        report = json.loads(out_file.read_text())
        assert code == 0
        assert [t["support"] for t in report] == [[4, 10]]
        assert report[0]["score"] == [7, 2]

    def test_k_above_m(self, capsys):
        code, out, _ = run(capsys, "discover", "--system", FIXTURES / "fig1.json", "--min-hypotheses", 9)
        assert code == 0 and json.loads(out) == []

    def test_seeded_byte_identical(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            run(capsys, "discover", "--system", FIXTURES / "fig3a.json", "--seed", 9, "--budget", 200, "--out", path)
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] and json.loads(outs[0])

    def test_cap_refusal(self, capsys):
        code, _, err = run(capsys, "discover", "--system", FIXTURES / "fig3a.json", "--exhaustive", "--cap", 10)
        assert code == 4 and "random mode" in err


class TestSweep:
    def test_k4(self, capsys, tmp_path):
        g = tmp_path / "k4.txt"
        g.write_text(K4)
        report = tmp_path / "s.json"
        code, out, _ = run(capsys, "sweep", "--graph", g, "--remove-edge", 0, 1, "--out", report)
        assert code == 0
        assert "hits: 0 / 81" in out
        assert json.loads(report.read_text())["total"] == 81

    def test_non_cubic(self, capsys, tmp_path):
        g = tmp_path / "tri.txt"
        g.write_text("p 3 3\n0 1\n1 2\n2 0\n")
        assert run(capsys, "sweep", "--graph", g, "--remove-edge", 0, 1)[0] == 2

    def test_missing_edge_args(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--graph", str(tmp_path / "x.txt")])
        assert exc.value.code == 2

    def test_absent_edge(self, capsys, tmp_path):
        g = tmp_path / "k4.txt"
        g.write_text(K4)
        assert run(capsys, "sweep", "--graph", g, "--remove-edge", 0, 0)[0] == 2


class TestGraphs:
    @pytest.mark.parametrize("p, count", [(2, 1), (3, 2)])
    def test_counts(self, capsys, tmp_path, p, count):
        code, _, _ = run(capsys, "graphs", "--p", p, "--out", tmp_path)
        index = json.loads((tmp_path / "index.json").read_text())
        assert code == 0 and index["count"] == count
        assert sorted(x.name for x in tmp_path.glob("cubic_*.txt")) == index["files"]

    def test_out_of_range(self, capsys, tmp_path):
        assert run(capsys, "graphs", "--p", 7, "--out", tmp_path)[0] == 2


class TestVerify:
    @pytest.mark.slow
    def test_corrupted_fig3a(self, capsys, tmp_path):
        for f in FIXTURES.iterdir():
            shutil.copy(f, tmp_path / f.name)
        data = json.loads((tmp_path / "fig3a.json").read_text())
        data["constraints"][0]["lines"] = [11, 0, 1]
        (tmp_path / "fig3a.json").write_text(json.dumps(data))
        code, out, _ = run(capsys, "verify", "--fixture-dir", tmp_path)
        assert code == 1
        failed = [ln for ln in out.splitlines() if ln.startswith("FAIL")]
        assert failed and all("fig3a" in ln or "figure4 layout" in ln for ln in failed)


class TestExportDot:
    def test_pattern(self, capsys):
        code, out, _ = run(capsys, "export-dot", "--graph", FIXTURES / "figure4.txt", "--remove-edge", 0, 7)
        assert code == 0 and out.count("style=dashed") == 2

    def test_derived_from_code(self, capsys):
        code, out, _ = run(
            capsys, "export-dot", "--graph", FIXTURES / "figure4.txt", "--remove-edge", 0, 7, "--code", "21010102",
        )
        assert code == 0 and out.startswith("graph derived")

    def test_derived_from_system(self, capsys):
        code, out, _ = run(capsys, "export-dot", "--system", FIXTURES / "fig3a.json")
        assert code == 0 and out.count(" -- ") == 8

    def test_needs_input(self, capsys):
        assert run(capsys, "export-dot")[0] == 2
