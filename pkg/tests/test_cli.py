"""Command-line interface: subcommands, config resolution, artifacts."""

import json
import subprocess
import sys

import numpy as np
import pytest

from plhsim import complexity_report, read_codebook, read_genmatrix, read_modcod_table
from plhsim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# design


def test_design_writes_default_artifacts(tmp_path, capsys, design):
    code, out, err = run_cli(capsys, "design", "--out", str(tmp_path))
    assert code == 0 and err == ""
    book = read_codebook(tmp_path / "codebook.txt")
    assert book.n == 39
    for a, b in zip(book.entries, design.codebook.entries):
        assert a.bits.tolist() == b.bits.tolist()
    table = read_modcod_table(tmp_path / "modcod_table.csv")
    assert table == design.table
    for L in (26, 48, 58, 64):
        g = read_genmatrix(tmp_path / f"genmatrix_L{L}.txt")
        assert g.v == L
        assert f"L={L}: dmin=" in out


def test_design_free_mode(tmp_path, capsys):
    code, out, err = run_cli(
        capsys, "design", "--k", "4", "--target-dmin", "3", "--out", str(tmp_path)
    )
    assert code == 0
    g = read_genmatrix(tmp_path / "genmatrix_k4.txt")
    assert g.k == 4
    assert "noncoherent_dmin=" in out
    code, _, err = run_cli(capsys, "design", "--k", "4", "--out", str(tmp_path))
    assert code == 1 and "error:" in err


# ---------------------------------------------------------------------------
# simulate


def test_simulate_prints_reproducible_csv(capsys):
    argv = (
        "simulate", "--modcod", "6", "--decoder", "strategy1", "--alpha", "0.7",
        "--esn0", "2.0", "--trials", "4000", "--seed", "99",
    )
    code, out1, err = run_cli(capsys, *argv)
    assert code == 0 and err == ""
    lines = out1.strip().splitlines()
    assert lines[0].startswith("modcod,decoder,")
    fields = lines[1].split(",")
    assert fields[:5] == ["6", "strategy1", "alpha", "0.7", "2"]
    assert int(fields[5]) == 4000
    code, out2, _ = run_cli(capsys, *argv)
    assert out2 == out1


def test_simulate_writes_csv_file(tmp_path, capsys):
    out_file = tmp_path / "point.csv"
    code, out, _ = run_cli(
        capsys, "simulate", "--modcod", "6", "--decoder", "simple",
        "--esn0", "5.0", "--trials", "2000", "--out", str(out_file),
    )
    assert code == 0
    assert "cer=" in out
    lines = out_file.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].split(",")[1] == "simple"


def test_simulate_standard_decoder_runs(capsys):
    code, out, _ = run_cli(
        capsys, "simulate", "--modcod", "1", "--decoder", "standard",
        "--esn0", "-2.0", "--trials", "2000",
    )
    assert code == 0
    assert out.strip().splitlines()[1].split(",")[1] == "standard"


def test_simulate_missing_options_fail(capsys):
    code, _, err = run_cli(capsys, "simulate", "--modcod", "6")
    assert code == 1
    assert "error:" in err and "--decoder" in err


# ---------------------------------------------------------------------------
# sweep


def test_sweep_writes_grid_csv(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    code, out, _ = run_cli(
        capsys, "sweep", "--modcods", "6", "--decoder", "strategy1",
        "--params", "0.5,0.7", "--esn0-grid", "3:5:1", "--trials", "1000",
        "--out", str(out_file),
    )
    assert code == 0
    assert "wrote 6 points" in out
    lines = out_file.read_text().splitlines()
    assert len(lines) == 7
    grids = {float(ln.split(",")[4]) for ln in lines[1:]}
    assert grids == {3.0, 4.0, 5.0}


def test_sweep_parameter_validation(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "sweep", "--modcods", "6", "--decoder", "strategy1",
        "--esn0-grid", "3,4", "--out", str(tmp_path / "x.csv"),
    )
    assert code == 1 and "needs --params" in err
    code, _, err = run_cli(
        capsys, "sweep", "--modcods", "6", "--decoder", "simple",
        "--params", "0.5", "--esn0-grid", "3,4", "--out", str(tmp_path / "x.csv"),
    )
    assert code == 1 and "takes no --params" in err


# ---------------------------------------------------------------------------
# gap


def test_gap_smoke_writes_json(tmp_path, capsys):
    out_file = tmp_path / "gaps.json"
    code, out, err = run_cli(
        capsys, "gap", "--modcods", "6", "--decoder", "strategy1", "--alpha", "0.7",
        "--target-cer", "0.02", "--trials-start", "2000", "--trials-cap", "8000",
        "--resolution", "0.2", "--seed", "17", "--out", str(out_file),
    )
    assert code == 0 and err == ""
    assert "modcod 6:" in out and "gap" in out
    payload = json.loads(out_file.read_text())
    assert len(payload) == 1
    assert payload[0]["modcod"] == 6
    assert payload[0]["ldpc_threshold_db"] == 5.13
    assert payload[0]["gap_db"] == pytest.approx(
        payload[0]["snr_at_target_db"] - 5.13, abs=1e-9
    )


def test_gap_deep_flag_changes_target(capsys):
    # --deep pins the publication operating point; verify via config dump
    # without paying its runtime.
    code, out, _ = run_cli(
        capsys, "gap", "--modcods", "6", "--decoder", "strategy2", "--beta", "0.2",
        "--deep", "--out", "unused.json", "--dump-config",
    )
    assert code == 0
    assert "deep=true" in out.splitlines()


# ---------------------------------------------------------------------------
# complexity


def test_complexity_stdout_and_json(tmp_path, capsys, design):
    out_file = tmp_path / "complexity.json"
    code, out, _ = run_cli(capsys, "complexity", "--out", str(out_file))
    assert code == 0
    assert out.splitlines()[0].split() == ["decoder", "additions", "multiplications", "lut_accesses"]
    payload = json.loads(out_file.read_text())
    assert payload == complexity_report(design.codebook).json_dict()


def test_complexity_from_codebook_file(tmp_path, capsys):
    run_cli(capsys, "design", "--out", str(tmp_path))
    code, out, _ = run_cli(capsys, "complexity", "--codebook", str(tmp_path / "codebook.txt"))
    assert code == 0
    assert out.splitlines()[2].split() == ["strategy1", "59", "2", "0"]


# ---------------------------------------------------------------------------
# config files


def test_dump_config_round_trips(tmp_path, capsys):
    argv = (
        "simulate", "--modcod", "6", "--decoder", "strategy1", "--alpha", "0.7",
        "--esn0", "2.0", "--trials", "4000",
    )
    code, dump1, _ = run_cli(capsys, *argv, "--dump-config")
    assert code == 0
    cfg_file = tmp_path / "sim.cfg"
    cfg_file.write_text(dump1)
    code, dump2, _ = run_cli(capsys, "simulate", "--config", str(cfg_file), "--dump-config")
    assert code == 0
    assert dump2 == dump1
    assert "esn0=2" in dump1.splitlines()
    assert "seed=12345" in dump1.splitlines()


def test_flags_override_config(tmp_path, capsys):
    cfg_file = tmp_path / "sim.cfg"
    cfg_file.write_text("modcod=6\ndecoder=simple\nesn0=3\ntrials=1000\n")
    code, out, _ = run_cli(
        capsys, "simulate", "--config", str(cfg_file), "--esn0", "5", "--dump-config"
    )
    assert code == 0
    assert "esn0=5" in out.splitlines()
    assert "trials=1000" in out.splitlines()


def test_unknown_config_key_fails(tmp_path, capsys):
    cfg_file = tmp_path / "sim.cfg"
    cfg_file.write_text("modcod=6\nbogus=1\n")
    code, _, err = run_cli(capsys, "simulate", "--config", str(cfg_file))
    assert code == 1
    assert "unknown config keys" in err


def test_custom_book_files_feed_simulate(tmp_path, capsys):
    run_cli(capsys, "design", "--out", str(tmp_path))
    code, out, err = run_cli(
        capsys, "simulate", "--modcod", "6", "--decoder", "simple", "--esn0", "5.0",
        "--trials", "1000", "--codebook", str(tmp_path / "codebook.txt"),
        "--modcod-table", str(tmp_path / "modcod_table.csv"),
    )
    assert code == 0 and err == ""
    code, _, err = run_cli(
        capsys, "simulate", "--modcod", "1", "--decoder", "standard", "--esn0", "-2.0",
        "--trials", "1000", "--codebook", str(tmp_path / "codebook.txt"),
    )
    assert code == 1 and "--genmatrix" in err
    code, out, err = run_cli(
        capsys, "simulate", "--modcod", "1", "--decoder", "standard", "--esn0", "-2.0",
        "--trials", "1000", "--codebook", str(tmp_path / "codebook.txt"),
        "--genmatrix", str(tmp_path / "genmatrix_L64.txt"),
    )
    assert code == 0 and err == ""


# ---------------------------------------------------------------------------
# console entry point


def test_installed_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "plhsim.cli", "complexity"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "standard" in proc.stdout and "127" in proc.stdout
