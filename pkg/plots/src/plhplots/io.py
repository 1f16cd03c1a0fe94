"""Readers for the simulator's machine-readable outputs.

The only coupling to the simulator is the on-disk layout: the sweep CSV with
its fixed column set and the gap-analysis JSON list. Extra CSV columns are
tolerated; missing ones are reported by name.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

RESULTS_COLUMNS = (
    "modcod",
    "decoder",
    "param_name",
    "param_value",
    "esn0_db",
    "trials",
    "errors",
    "cer",
    "ci_lo",
    "ci_hi",
    "seed",
)

GAP_KEYS = (
    "modcod",
    "decoder",
    "param_name",
    "param_value",
    "noise_var_source",
    "target_cer",
    "snr_at_target_db",
    "ldpc_threshold_db",
    "gap_db",
)


class SchemaError(ValueError):
    """An input file does not match the expected layout."""


@dataclass(frozen=True)
class ResultRow:
    """One sweep point: a CER estimate at one (ModCod, decoder, Es/N0)."""

    modcod: int
    decoder: str
    param_name: str | None
    param_value: float | None
    esn0_db: float
    trials: int
    errors: int
    cer: float
    ci_lo: float
    ci_hi: float
    seed: int


@dataclass(frozen=True)
class GapRow:
    """One gap measurement: SNR at a target CER minus the FEC threshold."""

    modcod: int
    decoder: str
    param_name: str | None
    param_value: float | None
    noise_var_source: str
    target_cer: float
    snr_at_target_db: float
    ldpc_threshold_db: float
    gap_db: float


def load_results(path: str | Path) -> list[ResultRow]:
    """Parse a sweep CSV, raising SchemaError naming any missing column."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in RESULTS_COLUMNS:
            if col not in header:
                raise SchemaError(f"results CSV missing column: {col}")
        rows = []
        for line_no, rec in enumerate(reader, start=2):
            try:
                rows.append(
                    ResultRow(
                        modcod=int(rec["modcod"]),
                        decoder=rec["decoder"],
                        param_name=rec["param_name"] or None,
                        param_value=(
                            float(rec["param_value"]) if rec["param_value"] else None
                        ),
                        esn0_db=float(rec["esn0_db"]),
                        trials=int(rec["trials"]),
                        errors=int(rec["errors"]),
                        cer=float(rec["cer"]),
                        ci_lo=float(rec["ci_lo"]),
                        ci_hi=float(rec["ci_hi"]),
                        seed=int(rec["seed"]),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"results CSV line {line_no}: {exc}") from exc
    return rows


def load_gaps(path: str | Path) -> list[GapRow]:
    """Parse a gap-analysis JSON list, naming any missing key."""
    payload = json.loads(Path(path).read_text())
    if not isinstance(payload, list):
        raise SchemaError("gap JSON must be a list of entries")
    rows = []
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict):
            raise SchemaError(f"gap JSON entry {i} is not an object")
        for key in GAP_KEYS:
            if key not in entry:
                raise SchemaError(f"gap JSON entry {i} missing key: {key}")
        rows.append(
            GapRow(
                modcod=int(entry["modcod"]),
                decoder=str(entry["decoder"]),
                param_name=entry["param_name"],
                param_value=(
                    None
                    if entry["param_value"] is None
                    else float(entry["param_value"])
                ),
                noise_var_source=str(entry["noise_var_source"]),
                target_cer=float(entry["target_cer"]),
                snr_at_target_db=float(entry["snr_at_target_db"]),
                ldpc_threshold_db=float(entry["ldpc_threshold_db"]),
                gap_db=float(entry["gap_db"]),
            )
        )
    return rows
