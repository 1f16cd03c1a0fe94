import json
import subprocess
import sys
from pathlib import Path

from plhplots import load_gaps, load_results
from plhplots.cli import main

DATA = Path(__file__).parent / "data"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_cer_writes_png(tmp_path, capsys):
    out = tmp_path / "fig.png"
    rc = main(["cer", "--in", str(DATA / "sweep_results.csv"),
               "--out", str(out)])
    assert rc == 0
    assert out.read_bytes()[:8] == PNG_MAGIC
    assert f"wrote {out}" in capsys.readouterr().out


def test_gaps_writes_png(tmp_path):
    out = tmp_path / "gaps.png"
    rc = main(["gaps", "--in", str(DATA / "gaps.json"), "--out", str(out)])
    assert rc == 0
    assert out.read_bytes()[:8] == PNG_MAGIC


def test_other_image_formats(tmp_path):
    out = tmp_path / "fig.svg"
    assert main(["cer", "--in", str(DATA / "sweep_results.csv"),
                 "--out", str(out)]) == 0
    assert b"<svg" in out.read_bytes()[:300]


def test_dump_data_is_dry_run(tmp_path, capsys):
    rc = main(["cer", "--in", str(DATA / "sweep_results.csv"),
               "--dump-data"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["series"]) == 6
    assert not list(tmp_path.iterdir())


def test_dump_data_values_equal_csv(capsys):
    main(["cer", "--in", str(DATA / "sweep_results.csv"), "--modcod", "6",
          "--decoder", "simple", "--dump-data"])
    payload = json.loads(capsys.readouterr().out)
    (series,) = payload["series"]
    rows = [r for r in load_results(DATA / "sweep_results.csv")
            if r.modcod == 6 and r.decoder == "simple"]
    rows.sort(key=lambda r: r.esn0_db)
    assert series["x"] == [r.esn0_db for r in rows]
    assert series["y"] == [r.cer for r in rows]
    assert series["ci_lo"] == [r.ci_lo for r in rows]
    assert series["ci_hi"] == [r.ci_hi for r in rows]


def test_dump_data_gaps_values_equal_json(capsys):
    main(["gaps", "--in", str(DATA / "gaps.json"), "--modcod", "6",
          "--dump-data"])
    payload = json.loads(capsys.readouterr().out)
    (series,) = payload["series"]
    rows = [r for r in load_gaps(DATA / "gaps.json") if r.modcod == 6]
    rows.sort(key=lambda r: r.param_value)
    assert series["x"] == [r.param_value for r in rows]
    assert series["y"] == [r.gap_db for r in rows]


def test_out_required_without_dump(capsys):
    rc = main(["cer", "--in", str(DATA / "sweep_results.csv")])
    assert rc == 1
    assert "--out is required" in capsys.readouterr().err


def test_missing_column_named(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("modcod,decoder,esn0_db\n6,simple,5.13\n")
    rc = main(["cer", "--in", str(bad), "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "missing column: param_name" in capsys.readouterr().err


def test_empty_after_filter_is_explicit(capsys):
    rc = main(["cer", "--in", str(DATA / "sweep_results.csv"),
               "--modcod", "99", "--dump-data"])
    assert rc == 1
    assert "no sweep rows left after filtering" in capsys.readouterr().err


def test_missing_file_reports_error(tmp_path, capsys):
    rc = main(["gaps", "--in", str(tmp_path / "nope.json"),
               "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "fig.png"
    proc = subprocess.run(
        [sys.executable, "-m", "plhplots.cli", "cer",
         "--in", str(DATA / "sweep_results.csv"), "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert out.exists()


def test_title_flag(tmp_path):
    out = tmp_path / "t.png"
    rc = main(["gaps", "--in", str(DATA / "gaps.json"), "--out", str(out),
               "--title", "tuning sweep"])
    assert rc == 0
    assert out.exists()
