"""Command-line interface: subcommands, config layering, formats, exit codes."""

import json
import math

import pytest

from ckstates.cli import main
from ckstates.modes import SqueezeParams, make_params
from ckstates.observables import uncertainty_product


def run_cli(argv, capsys):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def csv_rows(out):
    lines = out.strip().splitlines()
    rows = [tuple(float(v) for v in line.split(",")) for line in lines[1:]]
    return lines[0], rows


# ---------------------------------------------------------------- uncertainty


def test_uncertainty_defaults(capsys):
    rc, out, _ = run_cli(["uncertainty"], capsys)
    assert rc == 0
    header, rows = csv_rows(out)
    assert header == (
        "t [time],dq [length],dp [momentum],product [action],"
        "bound [action],ratio [1]"
    )
    assert len(rows) == 64
    for row in rows:
        assert row[3] == pytest.approx(0.625, rel=1e-12)  # product
        assert row[5] == pytest.approx(1.0, rel=1e-12)  # ratio
    assert rows[0][0] == 0.0  # window starts at t0 = 0


def test_uncertainty_undamped_squeezed_band(capsys):
    rc, out, _ = run_cli(["uncertainty", "--gamma", "0", "--r", "1"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    for row in rows:
        assert row[4] == pytest.approx(0.5, rel=1e-12)  # undamped bound
        assert 0.5 * (1.0 - 1e-12) <= row[3] <= 0.5 * math.cosh(2.0) * (1.0 + 1e-12)


def test_uncertainty_number_state_scaling(capsys):
    rc, out, _ = run_cli(["uncertainty", "--n", "2", "--nt", "2"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    assert rows[0][3] == pytest.approx(5.0 * 0.625, rel=1e-12)


def test_uncertainty_respects_window_flags(capsys):
    rc, out, _ = run_cli(
        ["uncertainty", "--t0", "0.5", "--t1", "1.5", "--nt", "3"], capsys
    )
    assert rc == 0
    _, rows = csv_rows(out)
    assert [row[0] for row in rows] == [0.5, 1.0, 1.5]


# ---------------------------------------------------------------- wavefunction


def test_wavefunction_ground_state_peak(capsys):
    rc, out, _ = run_cli(["wavefunction"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    assert len(rows) == 2049
    peak = max(rows, key=lambda row: row[3])
    assert peak[0] == 0.0
    assert peak[3] == pytest.approx(math.sqrt(0.8 / math.pi), rel=1e-12)


def test_wavefunction_first_excited_node(capsys):
    rc, out, _ = run_cli(["wavefunction", "--n", "1"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    center = min(rows, key=lambda row: abs(row[0]))
    assert center[0] == 0.0
    assert center[3] < 1e-30  # node at the origin


def test_wavefunction_coherent_centering(capsys):
    rc, out, _ = run_cli(["wavefunction", "--qc", "2"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    peak = max(rows, key=lambda row: row[3])
    assert peak[0] == pytest.approx(2.0, abs=1e-12)


def test_wavefunction_grid_clamping(capsys):
    rc, out, _ = run_cli(["wavefunction", "--grid-points", "600"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    assert len(rows) == 1025


# ---------------------------------------------------------------- trajectory


def test_trajectory_damped_envelope(capsys):
    rc, out, _ = run_cli(["trajectory", "--qc", "1", "--pc", "0.5"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    params = make_params(1.0, 1.2, 1.0, 1.0)
    period = 2.0 * math.pi / params.omega
    shrink = math.exp(-params.gamma * period / 2.0)
    assert rows[-1][0] == pytest.approx(period, rel=1e-12)
    assert rows[-1][1] == pytest.approx(shrink * rows[0][1], rel=1e-10)
    assert rows[0][1] == pytest.approx(1.0, abs=1e-12)


def test_trajectory_undamped_orbit_closes(capsys):
    rc, out, _ = run_cli(["trajectory", "--gamma", "0", "--qc", "1.3"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    assert rows[-1][1] == pytest.approx(rows[0][1], abs=1e-9)
    assert rows[-1][2] == pytest.approx(rows[0][2], abs=1e-9)


def test_trajectory_rejects_number_state(capsys):
    rc, _, err = run_cli(["trajectory", "--qc", "1", "--n", "1"], capsys)
    assert rc == 2
    assert "coherent" in err


# ---------------------------------------------------------------- hamiltonian


def test_hamiltonian_reference_constant(capsys):
    rc, out, _ = run_cli(["hamiltonian", "--nt", "8"], capsys)
    assert rc == 0
    header, rows = csv_rows(out)
    assert header == "t [time],energy [energy]"
    for row in rows:
        assert row[1] == pytest.approx(0.625, rel=1e-12)


def test_hamiltonian_undamped_ground_energy(capsys):
    rc, out, _ = run_cli(["hamiltonian", "--gamma", "0", "--nt", "4"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    for row in rows:
        assert row[1] == pytest.approx(0.5, rel=1e-12)


def test_hamiltonian_coherent_adds_classical_part(capsys):
    rc, out, _ = run_cli(["hamiltonian", "--qc", "1", "--nt", "2"], capsys)
    assert rc == 0
    _, rows = csv_rows(out)
    assert rows[0][1] == pytest.approx(0.5 + 0.625, rel=1e-12)


# ---------------------------------------------------------------- config and formats


def test_config_file_layering(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(
        "# reference sweep\ngamma = 0.8\nr = 0.5\nnt = 2\n", encoding="utf-8"
    )
    rc, out, _ = run_cli(
        ["uncertainty", "--config", str(config), "--gamma", "0.4"], capsys
    )
    assert rc == 0
    _, rows = csv_rows(out)
    # flag wins over file for gamma; r and nt come from the file
    params = make_params(1.0, 0.4, 1.0, 1.0)
    expected = uncertainty_product(params, 0, SqueezeParams(0.5, 0.0), 0.0)
    assert len(rows) == 2
    assert rows[0][3] == pytest.approx(expected.product, rel=1e-12)


def test_config_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("wobble = 3\n", encoding="utf-8")
    rc, _, err = run_cli(["uncertainty", "--config", str(config)], capsys)
    assert rc == 2
    assert "unknown config key" in err


def test_config_rejects_malformed_line(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("gamma\n", encoding="utf-8")
    rc, _, err = run_cli(["uncertainty", "--config", str(config)], capsys)
    assert rc == 2


def test_json_format(capsys):
    rc, out, _ = run_cli(["uncertainty", "--nt", "2", "--format", "json"], capsys)
    assert rc == 0
    lines = out.strip().splitlines()
    meta = json.loads(lines[0])
    assert meta["columns"] == ["t", "dq", "dp", "product", "bound", "ratio"]
    assert meta["units"] == ["time", "length", "momentum", "action", "action", "1"]
    row = json.loads(lines[1])
    assert row["product"] == pytest.approx(0.625, rel=1e-12)


def test_out_writes_file_instead_of_stdout(tmp_path, capsys):
    target = tmp_path / "table.csv"
    rc, out, _ = run_cli(
        ["uncertainty", "--nt", "2", "--out", str(target)], capsys
    )
    assert rc == 0
    assert out == ""
    lines = target.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0].startswith("t [time]")
    assert len(lines) == 3


def test_repeat_runs_are_byte_identical(capsys):
    argv = ["uncertainty", "--r", "0.7", "--phi", "2.2", "--nt", "16"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second


# ---------------------------------------------------------------- validate


def test_validate_default_point_passes(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out, _ = run_cli(
        ["validate", "--format", "json", "--out", str(target)], capsys
    )
    assert rc == 0
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["summary"]["failed"] == 0
    assert payload["summary"]["total"] == len(payload["entries"])
    assert all(e["pass"] or e["skipped"] for e in payload["entries"])


def test_validate_tolerance_override_forces_failure(tmp_path, capsys):
    overrides = tmp_path / "tol.cfg"
    overrides.write_text("wronskian = 1e-300\n", encoding="utf-8")
    rc, out, _ = run_cli(["validate", "--tol-overrides", str(overrides)], capsys)
    assert rc == 1
    assert "failed" in out


def test_validate_rejects_unknown_tolerance(tmp_path, capsys):
    overrides = tmp_path / "tol.cfg"
    overrides.write_text("no_such = 1\n", encoding="utf-8")
    rc, _, err = run_cli(["validate", "--tol-overrides", str(overrides)], capsys)
    assert rc == 2
    assert "unknown tolerance" in err


# ---------------------------------------------------------------- exit codes


def test_overdamped_parameters_exit_2(capsys):
    rc, _, err = run_cli(["uncertainty", "--gamma", "2.5"], capsys)
    assert rc == 2
    assert "error:" in err


def test_bad_window_exits_2(capsys):
    rc, _, err = run_cli(["uncertainty", "--t0", "1", "--t1", "0.5"], capsys)
    assert rc == 2


def test_bad_nt_exits_2(capsys):
    rc, _, err = run_cli(["uncertainty", "--nt", "1"], capsys)
    assert rc == 2


def test_unknown_flag_exits_2(capsys):
    rc, _, _ = run_cli(["uncertainty", "--frequency", "3"], capsys)
    assert rc == 2


def test_help_exits_0(capsys):
    rc, out, _ = run_cli(["--help"], capsys)
    assert rc == 0
    assert "validate" in out


def test_closed_stdout_pipe_is_quiet(monkeypatch, capsys):
    # Piping into a pager that exits early must not raise.
    def broken(_text):
        raise BrokenPipeError

    monkeypatch.setattr("sys.stdout.write", broken)
    assert main(["uncertainty", "--nt", "2"]) == 0
