"""Tests for the sqmk command line."""

import json

import pytest

from app.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, main, render


class TestParser:
    """Tests for argument parsing."""

    def test_defaults(self):
        """kgroups defaults to the vect model at level 1."""
        args = build_parser().parse_args(["kgroups", "--q", "2"])
        assert args.model == "vect"
        assert args.maxdim == 1
        assert args.mode is None
        assert args.format == "json"

    def test_det3_takes_a_file(self):
        """det3 has no model arguments."""
        args = build_parser().parse_args(["det3", "complex.json"])
        assert args.input == "complex.json"
        assert not hasattr(args, "model")


class TestRender:
    """Tests for report rendering."""

    def test_json_is_sorted(self):
        """JSON output has sorted keys."""
        assert render({"b": 1, "a": 2}, "json").index('"a"') < render({"b": 1, "a": 2}, "json").index('"b"')

    def test_text(self):
        """Text output has one line per key."""
        assert render({"pi1": [2], "model": "m"}, "text") == "model: m\npi1: [2]"


class TestMain:
    """Tests for subcommands and exit codes."""

    def test_kgroups(self, capsys):
        """kgroups prints pi0 and pi1 as JSON."""
        assert main(["kgroups", "--q", "2"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["pi0"] == [0]
        assert data["pi1"] == [2]

    def test_kgroups_text(self, capsys):
        """--format text prints key: value lines."""
        assert main(["kgroups", "--q", "3", "--format", "text"]) == EXIT_OK
        assert "pi1: [2, 2]" in capsys.readouterr().out

    def test_unstable_level_fails(self, capsys):
        """A level that is not yet stable exits with 1."""
        assert main(["kgroups", "--q", "2", "--stable"]) == EXIT_FAILED
        assert json.loads(capsys.readouterr().out)["stable"] is False

    def test_missing_order(self, capsys):
        """The vect model without q is a configuration error."""
        assert main(["kgroups"]) == EXIT_CONFIG
        assert "q" in capsys.readouterr().err

    def test_missing_family(self):
        """verify needs --family."""
        assert main(["verify", "--q", "2"]) == EXIT_CONFIG

    def test_unknown_subcommand(self):
        """argparse errors map to exit code 2."""
        assert main(["frobnicate"]) == EXIT_CONFIG

    def test_help(self):
        """--help exits cleanly."""
        assert main(["--help"]) == EXIT_OK

    def test_verify(self, capsys):
        """The modes suite passes on Vect(F2, 1)."""
        assert main(["verify", "--q", "2", "--family", "modes"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_det3(self, tmp_path, capsys, det3_payload):
        """det3 reads a complex from a file."""
        path = tmp_path / "complex.json"
        path.write_text(json.dumps(det3_payload))
        assert main(["det3", str(path)]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["det"] == "t"

    def test_det3_missing_file(self, tmp_path, capsys):
        """An unreadable file is a failed run."""
        assert main(["det3", str(tmp_path / "absent.json")]) == EXIT_FAILED
        assert "error" in json.loads(capsys.readouterr().out)

    def test_realize_incomplete(self, capsys):
        """Vect(F3, 1) is only partly realized by pairs."""
        assert main(["realize", "--q", "3"]) == EXIT_FAILED
        data = json.loads(capsys.readouterr().out)
        assert data["complete"] is False

    def test_cofiber_to_file(self, tmp_path):
        """The toy cofiber report can be written to a file."""
        out = tmp_path / "cofiber.json"
        assert main(["cofiber", "--q", "2", "--output", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert data["sequences"][0]["exact"] is True

    @pytest.mark.parametrize("budget", ["0", "-5"])
    def test_bad_budget(self, budget):
        """The search budget must be positive."""
        assert main(["realize", "--q", "3", "--budget", budget]) == EXIT_CONFIG
