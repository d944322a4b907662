"""CLI behavior: flags, outputs, and exit codes."""

import json
import os

import pytest

from tsaudit import (Dataset, MonthIndex, Series, generate, random_walk,
                     write_csv)
from tsaudit import cli
from tsaudit.audit import AuditReport


@pytest.fixture(scope="module")
def rw_csv(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    a = generate(random_walk(), 140, seed=77, stream=0)
    b = generate(random_walk(), 140, seed=77, stream=1)
    y = Series.from_array(MonthIndex(2000, 1), a.to_array(), name="approve")
    x = Series.from_array(MonthIndex(2000, 1), b.to_array(), name="tone")
    path = d / "pair.csv"
    write_csv(Dataset({"approve": y, "tone": x}), str(path))
    return str(path)


def _audit_args(rw_csv, out, extra=()):
    return ["audit", "--input", rw_csv, "--y", "approve", "--x", "tone",
            "--out", out, *extra]


class TestAudit:
    def test_complete_run(self, rw_csv, tmp_path, capsys):
        rc = cli.main(_audit_args(rw_csv, str(tmp_path)))
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "verdict: spurious-levels-relationship" in out
        files = sorted(os.listdir(tmp_path))
        assert "audit.json" in files and "audit.md" in files
        assert sum(f.endswith(".svg") for f in files) == 5

    def test_format_selection(self, rw_csv, tmp_path, capsys):
        rc = cli.main(_audit_args(rw_csv, str(tmp_path),
                                  ["--format", "json,md"]))
        assert rc == cli.EXIT_OK
        files = sorted(os.listdir(tmp_path))
        assert files == ["audit.json", "audit.md"]
        # md alias resolves to the markdown renderer
        assert "audit.md" in capsys.readouterr().out

    def test_empty_format_writes_nothing(self, rw_csv, tmp_path, capsys):
        out = tmp_path / "void"
        rc = cli.main(_audit_args(rw_csv, str(out), ["--format", ""]))
        assert rc == cli.EXIT_OK
        assert not out.exists()
        assert "verdict:" in capsys.readouterr().out

    def test_unknown_format_is_input_error(self, rw_csv, tmp_path, capsys):
        rc = cli.main(_audit_args(rw_csv, str(tmp_path), ["--format", "pdf"]))
        assert rc == cli.EXIT_INPUT
        assert "unknown format" in capsys.readouterr().err

    def test_missing_input_is_input_error(self, tmp_path, capsys):
        rc = cli.main(_audit_args(str(tmp_path / "nope.csv"), str(tmp_path)))
        assert rc == cli.EXIT_INPUT
        err = capsys.readouterr().err
        assert "truncated at step 'load'" in err

    def test_unknown_column_is_input_error(self, rw_csv, tmp_path, capsys):
        rc = cli.main(["audit", "--input", rw_csv, "--y", "approve",
                       "--x", "missing_col", "--out", str(tmp_path)])
        assert rc == cli.EXIT_INPUT

    def test_estimation_failure_is_numeric_error(self, rw_csv, tmp_path,
                                                 monkeypatch, capsys):
        def fake_run(cfg):
            return AuditReport(
                config=cfg.to_dict(), steps=(), key_statistics={},
                verdict=None, truncated=True,
                truncation={"step": "armax-fit", "error_kind": "estimation",
                            "message": "did not converge"})
        monkeypatch.setattr(cli, "run_audit", fake_run)
        rc = cli.main(_audit_args(rw_csv, str(tmp_path)))
        assert rc == cli.EXIT_NUMERIC
        assert "armax-fit" in capsys.readouterr().err
        # the partial report is still written for inspection
        assert (tmp_path / "audit.json").exists()

    def test_bad_alpha_is_input_error(self, rw_csv, tmp_path, capsys):
        rc = cli.main(_audit_args(rw_csv, str(tmp_path),
                                  ["--alpha-durbin", "1.5"]))
        assert rc == cli.EXIT_INPUT

    def test_no_interpolate_flag_reaches_config(self, rw_csv, tmp_path):
        rc = cli.main(_audit_args(rw_csv, str(tmp_path),
                                  ["--no-interpolate", "--format", "json"]))
        assert rc == cli.EXIT_OK
        with open(tmp_path / "audit.json", encoding="utf-8") as fh:
            parsed = json.load(fh)
        assert parsed["config"]["interpolate"] is False


class TestSimulate:
    def test_json_output(self, tmp_path, capsys):
        rc = cli.main(["simulate", "--process", "random-walk", "--n", "50",
                       "--reps", "100", "--seed", "9", "--out", str(tmp_path)])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "rejection_rate:" in out
        with open(tmp_path / "simulate.json", encoding="utf-8") as fh:
            parsed = json.load(fh)
        assert parsed["process"] == "random-walk"
        assert parsed["reps"] == 100
        assert not (tmp_path / "simulate_reps.csv").exists()

    def test_csv_output(self, tmp_path, capsys):
        rc = cli.main(["simulate", "--process", "white-noise", "--n", "40",
                       "--reps", "100", "--seed", "10", "--out",
                       str(tmp_path), "--csv"])
        assert rc == cli.EXIT_OK
        lines = (tmp_path / "simulate_reps.csv").read_text().splitlines()
        assert lines[0] == "rep,t,r_squared"
        assert len(lines) == 101
        first = lines[1].split(",")
        assert first[0] == "0"
        float(first[1]), float(first[2])

    def test_ar_process_flags(self, tmp_path):
        rc = cli.main(["simulate", "--process", "ar1", "--rho", "0.6",
                       "--n", "60", "--reps", "100", "--seed", "11",
                       "--out", str(tmp_path), "--difference"])
        assert rc == cli.EXIT_OK
        with open(tmp_path / "simulate.json", encoding="utf-8") as fh:
            parsed = json.load(fh)
        assert parsed["process"] == "ar1(0.6)"
        assert parsed["differenced"] is True

    def test_too_few_reps_is_input_error(self, tmp_path, capsys):
        rc = cli.main(["simulate", "--process", "random-walk", "--n", "50",
                       "--reps", "99", "--seed", "12", "--out", str(tmp_path)])
        assert rc == cli.EXIT_INPUT
        assert "reps" in capsys.readouterr().err

    def test_bad_process_parameter_is_input_error(self, tmp_path, capsys):
        rc = cli.main(["simulate", "--process", "ar1", "--rho", "1.0",
                       "--n", "50", "--reps", "100", "--seed", "13",
                       "--out", str(tmp_path)])
        assert rc == cli.EXIT_INPUT


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["audit", "--help"])
    assert exc.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "default: 12" in text
    assert "json,md,svg" in text
