"""End-to-end command line runs in subprocesses.

Exit code contract: 0 for a converged (or cleanly reported) run,
2 when the iteration does not reach a fixed point, nonzero argparse
codes for usage errors.
"""

from __future__ import annotations

import csv
import json
import os
import subprocess
import sys

import pytest

_BASE = [sys.executable, "-m", "fpuwaves.cli"]


def run_cli(args, tmp_path, **kw):
    env = dict(os.environ)
    env["FPUWAVES_OUT"] = str(tmp_path / "default_out")
    return subprocess.run(
        _BASE + args, capture_output=True, text=True, env=env, timeout=600, **kw
    )


def test_solve_writes_a_full_artifact_set(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(
        ["solve", "--potential", "cosh", "--gamma", "10", "--M", "32", "--out", str(out)],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    assert "converged" in proc.stdout
    for name in ("config.json", "result.json", "profile.csv", "field.csv", "field.json", "trace.csv"):
        assert (out / name).is_file(), name
    result = json.loads((out / "result.json").read_text())
    assert result["converged"] is True
    assert result["sigma2"] > 1.0
    assert result["residual"] <= 1e-9
    cfg = json.loads((out / "config.json").read_text())
    assert cfg["potential"] == "cosh"
    assert cfg["op"] == "bar"
    assert cfg["cone"] == "UN"
    with open(out / "profile.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["phi", "w"]
    assert len(rows) == 1 + 2 * 2 * (2 * 32)  # header + 2L * cells per unit


def test_solve_respects_env_output_root(tmp_path):
    proc = run_cli(["solve", "--potential", "cosh", "--gamma", "1", "--M", "16"], tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "default_out" / "solve" / "result.json").is_file()


def test_missing_required_flag_is_a_usage_error(tmp_path):
    # exit 2 is reserved for "no fixed point", so usage failures are 1
    proc = run_cli(["solve", "--potential", "cosh"], tmp_path)
    assert proc.returncode == 1
    assert "usage" in proc.stderr.lower()
    assert "Traceback" not in proc.stderr


def test_unknown_potential_fails_cleanly(tmp_path):
    proc = run_cli(
        ["solve", "--potential", "sombrero", "--gamma", "1", "--M", "16"], tmp_path
    )
    assert proc.returncode == 1
    assert "Traceback" not in proc.stderr
    assert "sombrero" in proc.stderr


def test_stalled_run_exits_with_two(tmp_path):
    # the sonic-limit line problem has no fixed point to find
    proc = run_cli(
        [
            "solve",
            "--potential",
            "harmonic:beta=1",
            "--gamma",
            "0.5",
            "--mode",
            "line",
            "--L",
            "40",
            "--M",
            "8",
            "--seed",
            "gaussian(4.0)",
            "--max-iter",
            "2000",
            "--out",
            str(tmp_path / "stall"),
        ],
        tmp_path,
    )
    assert proc.returncode == 2
    assert "no fixed point" in proc.stdout
    result = json.loads((tmp_path / "stall" / "result.json").read_text())
    assert result["converged"] is False


def test_hat_operator_on_line_grid_is_refused(tmp_path):
    proc = run_cli(
        [
            "solve", "--potential", "cosh", "--gamma", "1", "--op", "hat",
            "--mode", "line", "--L", "4", "--M", "8",
        ],
        tmp_path,
    )
    assert proc.returncode == 1
    assert "periodic" in proc.stderr


def test_validate_reports_rigidity(tmp_path):
    out = tmp_path / "val"
    proc = run_cli(
        [
            "validate", "--potential", "cosh", "--gamma", "10", "--M", "32",
            "--dt", "2e-4", "--out", str(out),
        ],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads((out / "validation.json").read_text())
    assert report["rigidity_error"] < 1e-2
    assert report["momentum_drift"] < 1e-11
    assert "rigidity" in proc.stdout


def test_validate_refuses_an_unconverged_wave(tmp_path):
    proc = run_cli(
        ["validate", "--potential", "cosh", "--gamma", "10", "--M", "32", "--max-iter", "1"],
        tmp_path,
    )
    assert proc.returncode == 2
    assert "no fixed point" in proc.stdout


def test_check_potential_json_flags(tmp_path):
    out = tmp_path / "report"
    proc = run_cli(
        ["check-potential", "--name", "toda", "--gamma", "0.5", "--out", str(out)],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads((out / "report.json").read_text())
    assert report["c1"] is False
    assert report["beta_phi_monotone"] is False
    assert report["genuine_margin"] < 0.0
    assert report["min_margin_c1"] == pytest.approx(-0.103638323514327, rel=1e-9)

    proc2 = run_cli(["check-potential", "--name", "cosh", "--gamma", "8"], tmp_path)
    assert proc2.returncode == 0
    report2 = json.loads(proc2.stdout)
    assert report2["c1"] and report2["c2"] and report2["c3"]
    assert report2["genuine_margin"] > 0.0


def test_spectrum_probe_emits_mode_table(tmp_path):
    out = tmp_path / "spectrum"
    proc = run_cli(
        ["spectrum-probe", "--L", "2", "--M", "32", "--m-max", "6", "--out", str(out)],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    with open(out / "spectrum.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 7  # modes 0..6
    assert float(rows[0]["measured"]) == pytest.approx(1.0, abs=1e-13)
    for row in rows:
        assert abs(float(row["measured"]) - float(row["analytic"])) < 5e-3


def test_sweep_cli_runs_and_summarises(tmp_path):
    out = tmp_path / "sweep"
    proc = run_cli(
        [
            "sweep", "--potential", "cosh", "--gammas", "1,10",
            "--M", "16", "--out", str(out),
        ],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    summary = json.loads((out / "summary.json").read_text())
    assert summary["all_converged"] is True


def test_continue_cli_compacton(tmp_path):
    out = tmp_path / "cont"
    proc = run_cli(
        [
            "continue", "--potential", "homogeneous:q=4", "--gamma", "0.5",
            "--L", "4,8,16", "--M", "16", "--out", str(out),
        ],
        tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    summary = json.loads((out / "summary.json").read_text())
    assert summary["final"]["converged"] is True
    assert summary["right_gap_min"] >= -1e-9


def test_continue_cli_gate_failure_is_reported(tmp_path):
    proc = run_cli(
        [
            "continue", "--potential", "toda_reflected", "--gamma", "0.25",
            "--L", "2,4", "--M", "16",
        ],
        tmp_path,
    )
    assert proc.returncode == 1
    assert "Traceback" not in proc.stderr
    assert "ceiling" in proc.stderr


def test_runs_are_bitwise_reproducible(tmp_path):
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        proc = run_cli(
            ["solve", "--potential", "cosh", "--gamma", "10", "--M", "16", "--out", str(out)],
            tmp_path,
        )
        assert proc.returncode == 0
        outs.append(out)
    for name in ("profile.csv", "field.csv", "trace.csv", "result.json"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
