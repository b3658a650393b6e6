"""Command-line interface: exit codes, config precedence, exports,
byte-determinism."""

from __future__ import annotations

import json

import numpy as np
import pytest

from epsqp.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc_info:
        main(list(argv))
    capsys.readouterr()
    return exc_info.value.code


# ---------------------------------------------------------------------------
# basic commands
# ---------------------------------------------------------------------------


def test_list_names_every_scenario(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == 0
    for name in (
        "wigner-equivalence",
        "alpha-sweep",
        "harmonic-coherent",
        "linear-gaussian",
        "pspace-linear",
        "eps-residuals",
        "classical-appendix",
        "all",
    ):
        assert name in out


def test_run_emits_json_report_and_exit_zero(capsys):
    code, out, err = _run(capsys, "run", "classical-appendix")
    assert code == 0
    payload = json.loads(out)
    assert payload["scenario"] == "classical-appendix"
    assert payload["passed"] is True
    # timing goes to stderr only; stdout is pure report
    assert "finished in" in err
    assert "finished in" not in out


def test_repeated_runs_are_byte_identical(capsys):
    _, out1, _ = _run(capsys, "run", "classical-appendix")
    _, out2, _ = _run(capsys, "run", "classical-appendix")
    assert out1 == out2


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_unknown_scenario_is_usage_error(capsys):
    assert _run_usage_error(capsys, "run", "no-such-scenario") == 2


def test_fields_without_out_is_usage_error(capsys):
    assert _run_usage_error(capsys, "run", "classical-appendix", "--fields", "all") == 2


def test_failed_check_returns_one(capsys):
    # a coarse time step pushes the finite-difference residuals over their
    # tolerances without raising anything
    code, out, _ = _run(capsys, "run", "harmonic-coherent", "--dt", "0.1")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_numerical_failure_returns_three(capsys):
    # sweep without the predicted vanishing point is a domain error raised
    # by the sweep itself, not a usage error the parser can catch
    code, out, err = _run(capsys, "run", "alpha-sweep", "--alphas=-1,-0.4,0")
    assert code == 3
    assert out == ""
    assert "numerical failure" in err


# ---------------------------------------------------------------------------
# configuration precedence
# ---------------------------------------------------------------------------


def test_config_file_applies_and_flags_win(capsys, tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"grid_n": 64, "dt": 2e-3}))
    code, out, _ = _run(capsys, "run", "classical-appendix", "--config", str(cfg_file))
    assert code == 0
    assert json.loads(out)["config"]["grid_n"] == 64

    code, out, _ = _run(
        capsys,
        "run",
        "classical-appendix",
        "--config",
        str(cfg_file),
        "--grid-n",
        "128",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["grid_n"] == 128  # flag beats file
    assert payload["config"]["dt"] == 2e-3  # untouched file key survives


def test_bad_config_files_are_usage_errors(capsys, tmp_path):
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"no_such_key": 1}))
    assert _run_usage_error(capsys, "run", "classical-appendix", "--config", str(unknown)) == 2

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert _run_usage_error(capsys, "run", "classical-appendix", "--config", str(broken)) == 2

    missing = tmp_path / "missing.json"
    assert _run_usage_error(capsys, "run", "classical-appendix", "--config", str(missing)) == 2


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------


def test_out_writes_report_and_fields_csv(capsys, tmp_path):
    out_dir = tmp_path / "export"
    code, out, _ = _run(
        capsys,
        "run",
        "harmonic-coherent",
        "--out",
        str(out_dir),
        "--fields",
        "quantum-potential-q",
    )
    assert code == 0
    assert (out_dir / "report.json").read_text() == out

    csv_path = out_dir / "quantum-potential-q.csv"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "q,re,im,masked"
    assert len(lines) == 1 + 256  # header + one row per grid point
    # masked rows are flagged, not dropped; the profile itself is NaN there
    flags = np.array([int(line.rsplit(",", 1)[1]) for line in lines[1:]])
    assert 0 < flags.sum() < 256


def test_unknown_field_bundle_is_usage_error(capsys, tmp_path):
    assert (
        _run_usage_error(
            capsys,
            "run",
            "harmonic-coherent",
            "--out",
            str(tmp_path / "x"),
            "--fields",
            "no-such-bundle",
        )
        == 2
    )


def test_csv_2d_layout_is_q_major(capsys, tmp_path):
    out_dir = tmp_path / "w"
    code, _, _ = _run(
        capsys,
        "run",
        "wigner-equivalence",
        "--grid-n",
        "64",
        "--out",
        str(out_dir),
        "--fields",
        "wigner",
    )
    assert code == 0
    lines = (out_dir / "wigner.csv").read_text().splitlines()
    assert lines[0] == "q,p,re,im,masked"
    assert len(lines) == 1 + 64 * 64
    first_q = lines[1].split(",")[0]
    # q varies slowest: the first 64 rows share one q value
    assert all(line.split(",")[0] == first_q for line in lines[1:65])
    assert lines[65].split(",")[0] != first_q
