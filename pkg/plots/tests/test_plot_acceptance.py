"""Acceptance gate for the plotting package.

Both commands must turn the desk-scale sweep CSV and gap JSON into image
files whose plotted point values equal the input values, verified through
the dry-run data dump.
"""

import json
from pathlib import Path

from plhplots.cli import main

DATA = Path(__file__).parent / "data"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _report(name):
    print(f"[ACCEPTANCE] {name}: PASS")


def test_plot_commands_preserve_input_values(tmp_path, capsys):
    cer_png = tmp_path / "cer.png"
    gap_png = tmp_path / "gaps.png"

    assert main(["cer", "--in", str(DATA / "sweep_results.csv"),
                 "--out", str(cer_png), "--dump-data"]) == 0
    cer_dump = json.loads(capsys.readouterr().out.split("wrote ")[0])
    assert cer_png.read_bytes()[:8] == PNG_MAGIC

    assert main(["gaps", "--in", str(DATA / "gaps.json"),
                 "--out", str(gap_png), "--dump-data"]) == 0
    gap_dump = json.loads(capsys.readouterr().out.split("wrote ")[0])
    assert gap_png.read_bytes()[:8] == PNG_MAGIC

    # Every CSV row appears in the dumped data layer with its exact values.
    import csv
    with open(DATA / "sweep_results.csv", newline="") as fh:
        csv_rows = list(csv.DictReader(fh))
    plotted = {}
    for series in cer_dump["series"]:
        for x, y, lo, hi in zip(series["x"], series["y"],
                                series["ci_lo"], series["ci_hi"]):
            plotted[(series["label"], x)] = (y, lo, hi)
    assert len(plotted) == len(csv_rows)
    for rec in csv_rows:
        label = f"mc{rec['modcod']} {rec['decoder']}"
        if rec["param_name"]:
            label += f" {rec['param_name']}={float(rec['param_value']):g}"
        y, lo, hi = plotted[(label, float(rec["esn0_db"]))]
        assert y == float(rec["cer"])
        assert lo == float(rec["ci_lo"])
        assert hi == float(rec["ci_hi"])

    # Same for every gap JSON entry.
    entries = json.loads((DATA / "gaps.json").read_text())
    plotted_gaps = {}
    for series in gap_dump["series"]:
        for x, y in zip(series["x"], series["y"]):
            plotted_gaps[(series["label"], x)] = y
    assert len(plotted_gaps) == len(entries)
    for e in entries:
        assert plotted_gaps[(f"mc{e['modcod']}", e["param_value"])] == e["gap_db"]

    _report("plot_commands_preserve_input_values")
