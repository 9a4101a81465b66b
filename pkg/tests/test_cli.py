"""Tests for the bfnml command line."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from bfnml.__main__ import EXIT_OK, EXIT_VALIDATION, main

_SRC = Path(__file__).resolve().parent.parent / "src"


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEvidence:
    def test_fields_and_preferences(self, capsys):
        code, out, _ = _run(capsys, "evidence", "--n", "25", "--y", "19", "--z", "0.8")
        assert code == EXIT_OK
        record = json.loads(out)
        assert set(record) == {
            "n", "y", "z", "log_b01_uniform", "w0_bayes", "log_b01_jeffreys",
            "w0_bayes_jeffreys", "log_lnml0", "log_lnml1", "w0_lnml",
            "log_nml0", "log_nml1", "w0_nml",
        }
        assert record["w0_bayes"] < 0.5 < record["w0_lnml"]

    def test_closed_form_weight(self, capsys):
        code, out, _ = _run(capsys, "evidence", "--n", "1", "--y", "0", "--z", "0.5")
        assert code == EXIT_OK
        assert json.loads(out)["w0_bayes"] == pytest.approx(0.6, abs=1e-12)

    @pytest.mark.parametrize(
        "argv, flag",
        [
            (["--n", "0", "--y", "0", "--z", "0.5"], "--n"),
            (["--n", "5", "--y", "6", "--z", "0.5"], "--y"),
            (["--n", "5", "--y", "2", "--z", "1.0"], "--z"),
            (["--n", "5", "--y", "2", "--z", "0.5", "--precision", "5"], "--precision"),
        ],
    )
    def test_validation_errors_name_the_flag(self, capsys, argv, flag):
        code, out, err = _run(capsys, "evidence", *argv)
        assert code == EXIT_VALIDATION
        assert out == ""
        assert flag in err

    def test_method_restricts_columns(self, capsys):
        _, out, _ = _run(capsys, "evidence", "--n", "10", "--y", "3", "--z", "0.5", "--method", "nml")
        assert set(json.loads(out)) == {"n", "y", "z", "log_nml0", "log_nml1", "w0_nml"}

    def test_csv_format(self, capsys):
        _, out, _ = _run(
            capsys, "evidence", "--n", "10", "--y", "3", "--z", "0.5", "--format", "csv",
            "--method", "bayes", "--precision", "6",
        )
        header, row = out.splitlines()
        assert header == "n,y,z,log_b01_uniform,w0_bayes"
        assert row.startswith("10,3,0.500000,")


class TestSweep:
    def test_rows_and_header(self, capsys):
        code, out, _ = _run(capsys, "sweep", "--n", "20", "--z", "0.5", "--format", "csv")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 22
        assert lines[0] == "y,ml_estimate,w0_bayes,w0_lnml,w0_nml,w0_bayes_jeffreys"
        assert [int(line.split(",")[0]) for line in lines[1:]] == list(range(21))

    def test_plateau_rows_share_lnml_text(self, capsys):
        _, out, _ = _run(capsys, "sweep", "--n", "20", "--z", "0.5")
        lnml = [line.split(",")[3] for line in out.splitlines()[1:12]]
        assert len(set(lnml)) == 1

    def test_deterministic(self, capsys):
        first = _run(capsys, "sweep", "--n", "20", "--z", "0.5")[1]
        second = _run(capsys, "sweep", "--n", "20", "--z", "0.5")[1]
        assert first == second

    def test_writes_file(self, capsys, tmp_path):
        target = tmp_path / "out" / "sweep.csv"
        code, out, _ = _run(capsys, "sweep", "--n", "5", "--z", "0.3", "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        data = target.read_bytes()
        assert data.endswith(b"\n") and b"\r" not in data
        assert len(data.splitlines()) == 7


class TestConverge:
    def test_twenty_rows_near_limit(self, capsys):
        code, out, _ = _run(
            capsys, "converge", "--z", "0.5", "--fraction", "0.6",
            "--n-min", "10", "--n-max", "1000", "--steps", "20",
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n,y_used,theta_target,w0_bayes,w0_lnml"
        assert len(lines) == 21
        last = lines[-1].split(",")
        assert int(last[0]) == 1000 and int(last[1]) == 300
        assert float(last[3]) == pytest.approx(2 / 3, abs=0.05)

    def test_rejects_target_outside_unit_interval(self, capsys):
        code, _, err = _run(
            capsys, "converge", "--z", "0.8", "--fraction", "1.5",
            "--n-min", "10", "--n-max", "100",
        )
        assert code == EXIT_VALIDATION
        assert "--fraction" in err


class TestDivergence:
    def test_single_n_report(self, capsys):
        code, out, _ = _run(capsys, "divergence", "--z", "0.5", "--n", "20")
        assert code == EXIT_OK
        report = json.loads(out)
        assert 1 <= report["count"] <= 3
        assert report["proportion"] == pytest.approx(report["count"] / 21, abs=1e-12)

    def test_known_critical_point(self, capsys):
        _, out, _ = _run(capsys, "divergence", "--z", "0.8", "--n", "25")
        assert 19 in json.loads(out)["critical_y"]

    def test_range_table(self, capsys):
        code, out, _ = _run(capsys, "divergence", "--z", "0.8", "--n-min", "5", "--n-max", "100")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n,min_critical_y,max_critical_y,count"
        assert len(lines) == 97

    def test_range_output_independent_of_workers(self, capsys):
        argv = ("divergence", "--z", "0.3", "--n-min", "1", "--n-max", "80")
        serial = _run(capsys, *argv, "--workers", "1")[1]
        threaded = _run(capsys, *argv, "--workers", "4")[1]
        assert serial == threaded

    def test_range_needs_upper_end(self, capsys):
        code, _, err = _run(capsys, "divergence", "--z", "0.8", "--n-min", "5")
        assert code == EXIT_VALIDATION
        assert "--n-max" in err

    def test_single_n_rejects_upper_end(self, capsys):
        code, out, err = _run(capsys, "divergence", "--z", "0.5", "--n", "20", "--n-max", "50")
        assert code == EXIT_VALIDATION
        assert out == ""
        assert "--n-max" in err


class TestIndependence:
    def test_report(self, capsys):
        code, out, _ = _run(capsys, "independence", "--n", "20", "--z", "0.5")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["holds"] is True
        assert report["region_min"] == 0 and report["region_max"] == 10


class TestArgparse:
    def test_missing_subcommand_exits_with_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        paths = [str(_SRC), os.environ.get("PYTHONPATH", "")]
        env = dict(os.environ, PYTHONPATH=os.pathsep.join(p for p in paths if p))
        proc = subprocess.run(
            [sys.executable, "-m", "bfnml", "evidence", "--n", "1", "--y", "0", "--z", "0.5"],
            capture_output=True, text=True, env=env, check=False,
        )
        assert proc.returncode == 0, proc.stderr
        assert json.loads(proc.stdout)["w0_bayes"] == pytest.approx(0.6, abs=1e-12)
