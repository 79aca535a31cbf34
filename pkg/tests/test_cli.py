import json
import math

import pytest

from modecoupler.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_steady_json_worked_example(capsys):
    code, out, _ = run(capsys, "steady", "--omega", "1", "--kappa", "1",
                       "--epsilon", "1", "--gamma-a", "1", "--gamma-b", "1",
                       "--gamma", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["regime"] == "balanced_subcritical"
    assert payload["analytic"]["p11"] == pytest.approx(2.0 / 3.0)
    assert payload["max_abs_deviation"] < 1e-12
    assert payload["observables"]["g2"] == pytest.approx(2.25)


def test_steady_normalized_flags(capsys):
    code, out, _ = run(capsys, "steady", "--normalized", "--kappa", "1",
                       "--epsilon", "1", "--gamma-a", "1", "--gamma-b", "1")
    assert code == 0
    assert json.loads(out)["analytic"]["p11"] == pytest.approx(2.0 / 3.0)


def test_steady_csv_format(capsys):
    code, out, _ = run(capsys, "steady", "--omega", "1", "--kappa", "1",
                       "--epsilon", "1", "--gamma-a", "1", "--gamma-b", "1",
                       "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    cols = dict(zip(header.split(","), row.split(",")))
    assert float(cols["p11"]) == pytest.approx(2.0 / 3.0)


def test_steady_params_file(tmp_path, capsys):
    cfg = tmp_path / "params.json"
    cfg.write_text(json.dumps({"omega": 1, "kappa": 1, "epsilon": 1,
                               "gamma_a": 1, "gamma_b": 1, "gamma": 0}))
    code, out, _ = run(capsys, "steady", "--params", str(cfg))
    assert code == 0
    assert json.loads(out)["analytic"]["p11"] == pytest.approx(2.0 / 3.0)


def test_steady_singular_needs_pdd0(capsys):
    argv = ["steady", "--omega", "1", "--kappa", "1", "--epsilon", "1",
            "--gamma-a", "1", "--gamma-b", "1", "--gamma", "1"]
    code, _, err = run(capsys, *argv)
    assert code == 1 and "pdd0" in err
    code, out, _ = run(capsys, *argv, "--pdd0", "0")
    assert code == 0
    assert json.loads(out)["singular"] is True


def test_evolve_writes_trajectory(tmp_path, capsys):
    out_csv = tmp_path / "traj.csv"
    code, _, _ = run(capsys, "evolve", "--omega", "1", "--kappa", "0.5",
                     "--epsilon", "0.5", "--gamma-a", "0.2", "--gamma-b",
                     "0.05", "--t-end", "5", "--samples", "50",
                     "--output", str(out_csv))
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0].startswith("time,p11")
    assert len(lines) > 40
    first = [float(v) for v in lines[1].split(",")]
    assert first[0] == 0.0 and first[1] == 1.0  # starts from vacuum


def test_sweep_command_and_rerun_is_byte_identical(tmp_path, capsys):
    args = ["sweep", "--omega", "1", "--kappa", "1", "--epsilon", "1",
            "--gamma-a", "1", "--gamma-b", "1", "--gamma", "0",
            "--axis", "gamma_d:-1:1:21"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--output", str(a))[0] == 0
    assert run(capsys, *args, "--output", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().splitlines()[0].split(",")
    assert "visibility" in header and "gamma_d" in header
    assert (tmp_path / "a.csv.meta.json").exists()


def test_figure_command(tmp_path, capsys):
    out_csv = tmp_path / "fig5.csv"
    code, _, _ = run(capsys, "figure", "fig5", "--resolution", "16",
                     "--output", str(out_csv))
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert len(lines) == 1 + 16 * 16
    meta = json.loads((tmp_path / "fig5.csv.meta.json").read_text())
    assert meta["figure"] == "fig5"


def test_validate_command(capsys):
    code, out, _ = run(capsys, "validate", "--seed", "7")
    assert code == 0
    assert "passed:" in out and "failed: 0" in out


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "steady", "--omega", "-1")
    assert code == 1 and "error" in err


def test_io_error_exit_code(capsys):
    code, _, err = run(capsys, "figure", "fig2", "--resolution", "16",
                       "--output", "/nonexistent-dir/fig2.csv")
    assert code == 2


def test_missing_omega(capsys):
    code, _, err = run(capsys, "steady", "--kappa", "1")
    assert code == 1 and "omega" in err
