"""Command-line interface: subcommands, exit codes, JSON determinism."""

import json
from pathlib import Path

import pytest

from burnside.cli import main

DATA_DIR = Path(__file__).parent.parent / "src" / "burnside" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMarks:
    def test_s3(self, capsys):
        code, out, err = run(capsys, "marks", "--group", "S3", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["matrix"] == [
            [6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1],
        ]

    def test_trivial(self, capsys):
        code, out, err = run(capsys, "marks", "--group", "trivial", "--json")
        assert code == 0
        assert json.loads(out)["results"]["matrix"] == [[1]]

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.grp"
        bad.write_text("(0 1\n")
        code, out, err = run(capsys, "marks", "--file", str(bad))
        assert code == 2
        assert "error" in err

    def test_malformed_file_json_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.grp"
        bad.write_text("(0 1\n")
        code, out, err = run(capsys, "marks", "--file", str(bad), "--json")
        assert code == 2
        payload = json.loads(err)
        assert payload["error"]["type"] == "MalformedCycle"

    def test_missing_group(self, capsys):
        code, out, err = run(capsys, "marks")
        assert code == 2


class TestArtin:
    def test_s3_n1(self, capsys):
        code, out, err = run(capsys, "artin", "--group", "S3", "--n", "1", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["coefficients"] == [
            {"class": "1a", "c": -3}, {"class": "2a", "c": 6}, {"class": "3a", "c": 3},
        ]
        assert payload["status"] == "pass"

    def test_c2xc2(self, capsys):
        code, out, err = run(capsys, "artin", "--group", "C2xC2", "--n", "1", "--json")
        assert code == 0

    def test_n0_convention(self, capsys):
        code, out, err = run(capsys, "artin", "--group", "S3", "--n", "0", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["checks"] == []  # ghost-level certificate
        assert payload["results"]["ghost_checks"]

    def test_n_inf(self, capsys):
        code, out, err = run(capsys, "artin", "--group", "D4", "--n", "inf", "--json")
        assert code == 0
        assert json.loads(out)["results"]["n"] == "inf"


class TestBrauer:
    def test_s3(self, capsys):
        code, out, err = run(capsys, "brauer", "--group", "S3", "--n", "1", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["decomposition"] == [
            {"class": "1a", "k": 1}, {"class": "2a", "k": -2},
            {"class": "3a", "k": -1}, {"class": "6a", "k": 3},
        ]

    def test_a4(self, capsys):
        code, out, err = run(capsys, "brauer", "--group", "A4", "--json")
        assert code == 0
        assert json.loads(out)["status"] == "pass"

    def test_trivial(self, capsys):
        code, out, err = run(capsys, "brauer", "--group", "trivial", "--json")
        assert code == 0


class TestEqualizer:
    def test_artin_mode(self, capsys):
        code, out, err = run(capsys, "equalizer", "--group", "S3", "--n", "1",
                             "--mode", "artin", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["order"] == 6

    def test_brauer_mode(self, capsys):
        code, out, err = run(capsys, "equalizer", "--group", "S3", "--n", "1",
                             "--mode", "brauer", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["elementary_divisors"] == [1, 1, 1]

    def test_shipped_tables_directory(self, capsys):
        code, out, err = run(capsys, "equalizer", "--group", "S3", "--mode", "artin",
                             "--tables", str(DATA_DIR / "tables"), "--json")
        assert code == 0

    def test_missing_tables_directory(self, capsys, tmp_path):
        code, out, err = run(capsys, "equalizer", "--group", "S3", "--mode", "artin",
                             "--tables", str(tmp_path))
        assert code == 2


class TestLie:
    def test_so3_n2(self, capsys):
        code, out, err = run(capsys, "lie", "--file", str(DATA_DIR / "so3.json"),
                             "--n", "2", "--json")
        assert code == 0
        assert json.loads(out)["results"]["order"] == 6

    def test_so3_power2_n2(self, capsys):
        code, out, err = run(capsys, "lie", "--file", str(DATA_DIR / "so3.json"),
                             "--power", "2", "--n", "2", "--json")
        assert code == 0
        assert json.loads(out)["results"]["order"] == 12

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"name\": \"x\"}")
        code, out, err = run(capsys, "lie", "--file", str(bad))
        assert code == 2


class TestVerify:
    @pytest.mark.parametrize("name", ["S3", "Q8"])
    def test_pass(self, capsys, name):
        code, out, err = run(capsys, "verify", "--group", name, "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "pass"
        assert all(check["ok"] for check in payload["checks"])

    def test_s4(self, capsys):
        code, out, err = run(capsys, "verify", "--group", "S4", "--json")
        assert code == 0

    def test_text_output(self, capsys):
        code, out, err = run(capsys, "verify", "--group", "S3")
        assert code == 0
        assert "status: pass" in out


class TestDeterminism:
    def test_identical_json(self, capsys):
        _, first, _ = run(capsys, "artin", "--group", "S4", "--n", "2", "--json")
        _, second, _ = run(capsys, "artin", "--group", "S4", "--n", "2", "--json")
        assert first == second

    def test_marks_identical(self, capsys):
        _, first, _ = run(capsys, "marks", "--group", "D4", "--json")
        _, second, _ = run(capsys, "marks", "--group", "D4", "--json")
        assert first == second
