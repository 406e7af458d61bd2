"""Tests for the command line."""

import json
from pathlib import Path

import pytest

from lucaslehmer import __version__
from lucaslehmer.cli import main


class TestForms:
    """Tests for the forms command."""

    def test_text(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the one-line dump of F_7."""
        assert main(["forms", "7"]) == 0
        assert capsys.readouterr().out == "7 3 1 1 -2 -1\n"

    def test_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test JSON output for several indices."""
        assert main(["forms", "5", "7", "--json"]) == 0

        forms = json.loads(capsys.readouterr().out)
        assert [f["n"] for f in forms] == [5, 7]
        assert forms[0]["coeffs"] == [1, 1, -1]

    def test_excluded_index(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that n = 6 exits with the unsupported-input code."""
        assert main(["forms", "6"]) == 3

        diagnostic = json.loads(capsys.readouterr().err)
        assert diagnostic["error"] == "UnsupportedInputError"


class TestSolve:
    """Tests for the solve command."""

    def test_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the JSON report of n = 10."""
        assert main(["solve", "10", "--json", "--prec", "60"]) == 0

        report = json.loads(capsys.readouterr().out)
        assert report["n"] == 10
        assert report["route"] == "smalln"
        assert len(report["candidates"]) == 3

    def test_text(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the text report header and candidate lines."""
        assert main(["solve", "8", "--prec", "60"]) == 0

        out = capsys.readouterr().out
        assert out.startswith("n = 8 via smalln")
        assert "1±√-6" in out

    def test_single_rhs(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test restricting to m = -5."""
        assert main(["solve", "10", "--m", "-5", "--json", "--prec", "60"]) == 0

        report = json.loads(capsys.readouterr().out)
        assert {(s["x"], s["y"]) for s in report["solutions"]} == {(-11, 18), (11, 7)}

    @pytest.mark.parametrize("argv", [["solve", "31"], ["solve", "5", "--m", "2"]])
    def test_unsupported(self, argv: list[str]) -> None:
        """Test inputs that no route or target accepts."""
        assert main(argv) == 3

    def test_low_precision(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a precision below the floor is rejected."""
        assert main(["solve", "5", "--prec", "10"]) == 3
        assert "precision" in capsys.readouterr().err

    def test_output_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test writing the report to a file instead of stdout."""
        target = tmp_path / "eight.txt"

        assert main(["solve", "8", "--prec", "60", "-o", str(target)]) == 0

        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8").startswith("n = 8 via smalln")

    def test_config_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a configuration file selects JSON output."""
        conf = tmp_path / "run.conf"
        conf.write_text("# quick run\nprecision = 60\noutput_format = json\n", encoding="utf-8")

        assert main(["solve", "8", "--config", str(conf)]) == 0

        assert json.loads(capsys.readouterr().out)["n"] == 8


class TestOther:
    """Tests for scan, thue and the global flags."""

    def test_scan_nothing(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a scan past the tables that finds nothing."""
        assert main(["scan", "31", "32", "--box", "60", "--prec", "60"]) == 0
        assert "no candidates" in capsys.readouterr().out

    def test_scan_rejects_solved_indices(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a scan starting below 31 exits with code 3."""
        assert main(["scan", "5", "5", "--box", "60"]) == 3
        assert "scan starts at n = 31" in capsys.readouterr().err

    def test_thue_needs_index(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that thue without an index or --quartic is rejected."""
        assert main(["thue"]) == 3
        assert "needs an index" in capsys.readouterr().err

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the --version flag."""
        with pytest.raises(SystemExit):
            main(["--version"])

        assert __version__ in capsys.readouterr().out


@pytest.mark.slow
class TestLongCommands:
    """Tests for the commands that solve Thue equations."""

    def test_thue_seven(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the JSON ledger of F_7 through the --n flag."""
        assert main(["thue", "--n", "7", "--json"]) == 0

        record = json.loads(capsys.readouterr().out)
        assert (record["ledger"]["X4"], record["ledger"]["Y4"]) == (9, 9)

    def test_selftest(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that every quick cross-check passes."""
        assert main(["selftest", "--json"]) == 0

        passed = json.loads(capsys.readouterr().out)["passed"]
        assert passed == ["forms", "fibonacci", "quartics", "thue-7", "tables-7"]

    def test_tables(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the full tables in JSON."""
        assert main(["tables", "--json", "--threads", "4"]) == 0

        tables = json.loads(capsys.readouterr().out)
        assert tables["lucas"]["8"] == ["(1±√-7)/2", "1±√-6"]
