"""Command-line client: output formats, exit codes, module entry point."""

import json
import shutil
import subprocess
import sys

import httpx

from dycktilings import service
from dycktilings.cli import _client, main


class TestEnumerateCommands:
    def test_paths_text(self, capsys):
        rc = main(["enumerate", "paths", "--n", "2", "--format", "text"])
        assert rc == 0
        assert capsys.readouterr().out == "UUDD\nUDUD\ncount: 2\n"

    def test_paths_json(self, capsys):
        rc = main(["enumerate", "paths", "--n", "2"])
        assert rc == 0
        body = json.loads(capsys.readouterr().out)
        assert body["count"] == 2
        assert body["items"] == ["UUDD", "UDUD"]

    def test_tilings_text_items_are_json_lines(self, capsys):
        rc = main(
            [
                "enumerate",
                "tilings",
                "--lower",
                "UDUD",
                "--upper",
                "UUDD",
                "--format",
                "text",
            ]
        )
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert json.loads(lines[0])["tiles"] == [[[0, 1]]]
        assert lines[-1] == "count: 1"

    def test_region_paths(self, capsys):
        rc = main(
            [
                "enumerate",
                "region-paths",
                "--path",
                "UD",
                "--a",
                "1",
                "--b",
                "1",
                "--format",
                "text",
            ]
        )
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert json.loads(lines[0]) == {"steps": "UR", "area_halves": 4}
        assert lines[-1] == "count: 2"


class TestComputeCommands:
    def test_bq_text(self, capsys):
        rc = main(
            ["compute", "bq", "--path", "UD", "--a", "1", "--b", "1", "--format", "text"]
        )
        assert rc == 0
        assert capsys.readouterr().out == "2*q + q^2\n"

    def test_bq_eval_q1(self, capsys):
        rc = main(
            [
                "compute",
                "bq",
                "--path",
                "UD",
                "--a",
                "1",
                "--b",
                "1",
                "--eval-q1",
                "--format",
                "text",
            ]
        )
        assert rc == 0
        assert capsys.readouterr().out == "2*q + q^2\nat q=1: 3\n"

    def test_bq_routes(self, capsys):
        for route in ("brute", "closed", "recursive"):
            rc = main(
                [
                    "compute",
                    "bq",
                    "--path",
                    "UDUD",
                    "--a",
                    "0",
                    "--b",
                    "0",
                    "--route",
                    route,
                    "--format",
                    "text",
                ]
            )
            assert rc == 0
            assert capsys.readouterr().out == "1 + q\n"

    def test_moments_json(self, capsys):
        rc = main(["compute", "moments", "--n", "2"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["value"] == "1 + p + q"

    def test_touchard_text(self, capsys):
        rc = main(["compute", "touchard", "--n", "3", "--format", "text"])
        assert rc == 0
        assert capsys.readouterr().out == "5 + 6*q + 3*q^2 + q^3\n"

    def test_matrix_text(self, capsys):
        rc = main(["compute", "matrix", "--n", "2", "--format", "text"])
        assert rc == 0
        body = json.loads(capsys.readouterr().out)
        assert body["matrix"] == [["1", "0"], ["p*q", "1"]]
        assert body["matches_formula"] is True


class TestExitCodes:
    def test_missing_option_is_usage_error(self, capsys):
        rc = main(["enumerate", "paths"])
        assert rc == 1
        assert "error" in capsys.readouterr().err.lower()

    def test_domain_error_is_usage_error(self, capsys):
        rc = main(["enumerate", "hermite", "--path", "UDX"])
        assert rc == 1
        err = capsys.readouterr().err
        assert "other than U or D" in err

    def test_capacity_is_exit_2(self, capsys):
        rc = main(["enumerate", "paths", "--n", "9"])
        assert rc == 2
        assert "capacity exceeded" in capsys.readouterr().err

    def test_capacity_override(self, capsys):
        rc = main(["enumerate", "paths", "--n", "9", "--max-n", "9", "--format", "text"])
        assert rc == 0
        assert capsys.readouterr().out.splitlines()[-1] == "count: 4862"

    def test_help_is_exit_0(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "enumerate" in out
        assert "verify" in out

    def test_bad_choice_is_usage_error(self, capsys):
        rc = main(["verify", "everything"])
        assert rc == 1


class TestVerifyCommand:
    def test_passing_suite(self, capsys):
        rc = main(["verify", "thm2", "--n", "1", "--format", "text"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.endswith("suite: thm2  checks: 4  failed: 0\n")
        assert "FAIL" not in out

    def test_json_output(self, capsys):
        rc = main(["verify", "mpq-inverse", "--n", "2"])
        assert rc == 0
        body = json.loads(capsys.readouterr().out)
        assert body["ok"] is True
        assert body["failed"] == 0

    def test_failing_suite_is_exit_3(self, capsys, monkeypatch):
        # force one failing row through the real service plumbing
        def fake_rows(suite, n):
            return [
                {
                    "check": "forced",
                    "parameters": {"n": 0},
                    "lhs": "0",
                    "rhs": "1",
                    "equal": False,
                }
            ]

        monkeypatch.setattr(service, "_suite_rows", fake_rows)
        rc = main(["verify", "thm1", "--format", "text"])
        assert rc == 3
        out = capsys.readouterr().out
        assert "FAIL forced" in out
        assert "lhs: 0" in out
        assert out.endswith("suite: thm1  checks: 1  failed: 1\n")


class TestTransports:
    def test_client_selection(self):
        with _client(None) as inproc:
            assert inproc.__class__.__name__ == "TestClient"
        with _client("http://127.0.0.1:1") as remote:
            assert isinstance(remote, httpx.Client)

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "dycktilings.cli", "--help"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert "enumerate" in proc.stdout

    def test_console_script(self):
        exe = shutil.which("dycktilings")
        assert exe, "console script not installed"
        proc = subprocess.run(
            [exe, "compute", "touchard", "--n", "2", "--format", "text"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout == "2 + q\n"
