import json

from click.testing import CliRunner

from k4graphs.cli import main
from k4graphs.core import from_text, g2, to_text
from k4graphs.classify import are_isomorphic, generate_random_melonic


def write_graph(tmp_path, G, name="graph.txt"):
    path = tmp_path / name
    path.write_text(to_text(G) + "\n")
    return str(path)


class TestCensusCommand:
    def test_b2_summary(self, tmp_path):
        out = tmp_path / "report.json"
        result = CliRunner().invoke(
            main, ["census", "--b", "2", "--out", str(out)])
        assert result.exit_code == 0
        assert "# matchings=105" in result.output
        assert "2\t0\t4\t1" in result.output
        obj = json.loads(out.read_text())
        assert obj["total_matchings"] == 105

    def test_table_out(self, tmp_path):
        table = tmp_path / "report.tsv"
        result = CliRunner().invoke(
            main, ["census", "--b", "1", "--table-out", str(table)])
        assert result.exit_code == 0
        assert table.read_text().startswith("b\ttwo_omega")

    def test_budget_refusal(self):
        result = CliRunner().invoke(main, ["census", "--b", "7"])
        assert result.exit_code != 0
        assert "Error" in result.output

    def test_deterministic_output(self, tmp_path):
        args = ["census", "--b", "2", "--out"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert CliRunner().invoke(main, args + [str(a)]).exit_code == 0
        assert CliRunner().invoke(main, args + [str(b)]).exit_code == 0
        assert a.read_bytes() == b.read_bytes()


class TestClassifyCommand:
    def test_melonic(self, tmp_path):
        path = write_graph(tmp_path, generate_random_melonic(4, 0))
        result = CliRunner().invoke(main, ["classify", path])
        assert result.exit_code == 0
        assert "class: LEADING_MELONIC" in result.output
        assert "two_omega: 0" in result.output

    def test_json_input(self, tmp_path):
        from k4graphs.core import to_obj
        path = tmp_path / "graph.json"
        path.write_text(json.dumps(to_obj(g2())))
        result = CliRunner().invoke(main, ["classify", str(path)])
        assert result.exit_code == 0
        assert "faces: 6" in result.output


class TestVerifyCommand:
    def test_single_check_passes(self, tmp_path):
        out_dir = tmp_path / "reports"
        result = CliRunner().invoke(
            main, ["verify", "--check", "flip", "--bmax", "2",
                   "--samples", "100", "--out", str(out_dir)])
        assert result.exit_code == 0
        assert "flip: pass" in result.output
        obj = json.loads((out_dir / "flip.json").read_text())
        assert obj["passed"] is True

    def test_gmax_single_b(self):
        result = CliRunner().invoke(
            main, ["verify", "--check", "gmax", "--b", "2"])
        assert result.exit_code == 0
        assert "gmax: pass" in result.output


class TestReduceCommand:
    def test_backtracking(self, tmp_path):
        path = write_graph(tmp_path, generate_random_melonic(6, 2))
        result = CliRunner().invoke(main, ["reduce", path])
        assert result.exit_code == 0
        assert "class: LEADING_MELONIC" in result.output
        final = result.output.strip().splitlines()[-1].removeprefix("final: ")
        assert are_isomorphic(from_text(final), g2())

    def test_greedy(self, tmp_path):
        path = write_graph(tmp_path, generate_random_melonic(6, 2))
        result = CliRunner().invoke(main, ["reduce", path, "--greedy"])
        assert result.exit_code == 0
        final = result.output.strip().removeprefix("final: ")
        assert are_isomorphic(from_text(final), g2())


class TestFlipCommand:
    def test_flip_and_reload(self, tmp_path):
        path = write_graph(tmp_path, g2())
        out = tmp_path / "flipped.txt"
        result = CliRunner().invoke(
            main, ["flip", path, "-l", "0.0-1.0", "-r", "0.1-1.1",
                   "--variant", "A", "--out", str(out)])
        assert result.exit_code == 0
        assert "delta_faces:" in result.output
        H = from_text(out.read_text().strip())
        assert H.b == 2

    def test_bad_edge_spec(self, tmp_path):
        path = write_graph(tmp_path, g2())
        result = CliRunner().invoke(
            main, ["flip", path, "-l", "nonsense", "-r", "0.1-1.1",
                   "--variant", "A"])
        assert result.exit_code != 0

    def test_non_edge_rejected(self, tmp_path):
        path = write_graph(tmp_path, g2())
        result = CliRunner().invoke(
            main, ["flip", path, "-l", "0.0-1.1", "-r", "0.1-1.0",
                   "--variant", "A"])
        assert result.exit_code != 0


class TestGenerateCommand:
    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        args = ["generate", "--kind", "nlo", "--b", "5", "--seed", "3",
                "--out"]
        assert CliRunner().invoke(main, args + [str(a)]).exit_code == 0
        assert CliRunner().invoke(main, args + [str(b)]).exit_code == 0
        assert a.read_bytes() == b.read_bytes()
        G = from_text(a.read_text().strip())
        assert G.b == 5

    def test_parity_error(self):
        result = CliRunner().invoke(
            main, ["generate", "--kind", "melonic", "--b", "3"])
        assert result.exit_code != 0


class TestExportDot:
    def test_round_trip_via_header(self, tmp_path):
        G = generate_random_melonic(4, 5)
        path = write_graph(tmp_path, G)
        out = tmp_path / "graph.dot"
        result = CliRunner().invoke(
            main, ["export-dot", path, "--out", str(out)])
        assert result.exit_code == 0
        text = out.read_text()
        header = text.splitlines()[0].removeprefix("// graph: ")
        assert from_text(header) == G
        assert text.count("style=dashed") == 2 * G.b
        assert text.count("color=red") == 2 * G.b
