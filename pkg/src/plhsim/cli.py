"""Command-line front end.

Subcommands: design, simulate, sweep, gap, complexity. Every option can also
be supplied through --config FILE holding key=value lines (keys are the
option names with underscores); explicit flags override the file, the file
overrides built-in defaults. --dump-config prints the fully resolved
configuration and exits, and its output re-parses to the same configuration.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .decoders import DecoderConfig
from .plh_code import (
    DEFAULT_DESIGN_SEED,
    CodeDesignSpec,
    ModCodTable,
    PlhCodebook,
    bits_from_int,
    build_codebook,
    build_fixed_codebook,
    code_min_distance,
    default_design,
    default_modcod_table,
    design_code,
    design_codebook_matrices,
    encode,
    read_codebook,
    read_genmatrix,
    read_modcod_table,
    write_codebook,
    write_genmatrix,
    write_modcod_table,
)
from .sim_harness import (
    SweepPoint,
    complexity_report,
    gap_analysis,
    run_cer,
    sweep,
    write_gap_json,
    write_results_csv,
)

DEFAULT_SIM_SEED = 12345


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_grid(text: str) -> list[float]:
    """Es/N0 grid: either "lo:hi:step" (inclusive) or a comma list."""
    if ":" in text:
        lo, hi, step = (float(tok) for tok in text.split(":"))
        if step <= 0 or hi < lo:
            raise ValueError("grid must be lo:hi:step with step > 0 and hi >= lo")
        return [float(x) for x in np.arange(lo, hi + step / 2, step)]
    return _parse_float_list(text)


def _parse_window(text: str) -> tuple[float, float]:
    lo, hi = (float(tok) for tok in text.split(":"))
    return lo, hi


@dataclass(frozen=True)
class Opt:
    """One resolvable option: CLI flag, config key, parser, default."""

    name: str
    parse: Callable[[str], Any]
    default: Any = None
    help: str = ""
    flag: bool = False  # presence-style boolean
    choices: tuple[str, ...] | None = None

    def fmt(self, value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (list, tuple)):
            return ",".join(f"{v:g}" if isinstance(v, float) else str(v) for v in value)
        if isinstance(value, float):
            return f"{value:g}"
        return str(value)


_COMMON = [
    Opt("seed", int, DEFAULT_SIM_SEED, "master seed"),
    Opt("threads", int, 1, "worker threads for Monte Carlo batches"),
    Opt("out", str, None, "output path"),
]

_BOOK_SOURCE = [
    Opt("codebook", str, None, "codebook file (default: built-in design)"),
    Opt("genmatrix", str, None, "full-length generator matrix file, needed with --codebook for the standard decoder"),
    Opt("modcod_table", str, None, "ModCod table CSV (default: built-in table)"),
]

_DECODER = [
    Opt("decoder", str, None, "decoder kind", choices=("standard", "simple", "strategy1", "strategy2")),
    Opt("alpha", float, None, "length-normalization exponent (strategy1)"),
    Opt("beta", float, None, "tail-energy weight (strategy2)"),
    Opt("noise_var_source", str, "known", "noise variance for strategy2", choices=("known", "estimated")),
    Opt("simple_mode", str, "own_length", "simple decoder correlation window", choices=("own_length", "zero_padded")),
]

OPTIONS: dict[str, list[Opt]] = {
    "design": [
        Opt("k", int, None, "message bits (free design mode)"),
        Opt("target_dmin", int, None, "noncoherent distance target (free design mode)"),
        Opt("max_length", int, 512, "length cap for free design"),
        Opt("target_cer", float, 1e-5, "bound target for per-length distance requirements"),
        Opt("modcod_table", str, None, "ModCod table CSV (default: built-in table)"),
        Opt("seed", int, DEFAULT_DESIGN_SEED, "design seed"),
        Opt("threads", int, 1, "unused; accepted for uniformity"),
        Opt("out", str, None, "output directory"),
    ],
    "simulate": [
        Opt("modcod", int, None, "ModCod id to transmit"),
        *_DECODER,
        Opt("esn0", float, None, "Es/N0 in dB"),
        Opt("trials", int, 100_000, "Monte Carlo trials"),
        Opt("amp_random", _parse_bool, False, "draw amplitude uniform in [0.5, 2]", flag=True),
        *_BOOK_SOURCE,
        *_COMMON,
    ],
    "sweep": [
        Opt("modcods", _parse_int_list, None, "comma list of ModCod ids"),
        Opt("decoder", str, None, "decoder kind", choices=("standard", "simple", "strategy1", "strategy2")),
        Opt("params", _parse_float_list, None, "comma list of alpha/beta values"),
        Opt("noise_var_source", str, "known", "noise variance for strategy2", choices=("known", "estimated")),
        Opt("simple_mode", str, "own_length", "simple decoder correlation window", choices=("own_length", "zero_padded")),
        Opt("esn0_grid", _parse_grid, None, "lo:hi:step or comma list, in dB"),
        Opt("trials", int, 20_000, "trials per grid point"),
        Opt("amp_random", _parse_bool, False, "draw amplitude uniform in [0.5, 2]", flag=True),
        *_BOOK_SOURCE,
        *_COMMON,
    ],
    "gap": [
        Opt("modcods", _parse_int_list, None, "comma list of ModCod ids"),
        *_DECODER,
        Opt("target_cer", float, 1e-3, "error rate defining the SNR operating point"),
        Opt("window_rel", _parse_window, (-9.0, 1.5), "search window around each threshold, lo:hi dB"),
        Opt("resolution", float, 0.05, "bisection resolution in dB"),
        Opt("trials_start", int, 10_000, "initial trials per probe"),
        Opt("trials_cap", int, 1_000_000, "maximum trials per probe"),
        Opt("deep", _parse_bool, False, "publication depth: target 1e-5, cap 1e8 trials", flag=True),
        Opt("amp_random", _parse_bool, False, "draw amplitude uniform in [0.5, 2]", flag=True),
        *_BOOK_SOURCE,
        *_COMMON,
    ],
    "complexity": [
        Opt("codebook", str, None, "codebook file (default: built-in design)"),
        *_COMMON,
    ],
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plhsim",
        description="Design and simulate variable-length physical-layer header codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "design": "construct header codes and write codebook/matrix artifacts",
        "simulate": "estimate CER at one operating point",
        "sweep": "CER over a ModCod x parameter x Es/N0 grid, written as CSV",
        "gap": "SNR gap between header decoding and the FEC threshold",
        "complexity": "analytic per-codeword operation counts",
    }
    for name, opts in OPTIONS.items():
        p = sub.add_parser(name, help=descriptions[name])
        p.add_argument("--config", default=None, help="key=value file of option defaults")
        p.add_argument(
            "--dump-config",
            action="store_const",
            const=True,
            default=False,
            help="print the resolved configuration and exit",
        )
        for o in opts:
            flag = "--" + o.name.replace("_", "-")
            if o.flag:
                p.add_argument(flag, dest=o.name, action="store_const", const=True, default=None, help=o.help)
            else:
                p.add_argument(flag, dest=o.name, type=str, default=None, help=o.help, choices=o.choices)
    return parser


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for ln in Path(path).read_text().splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if "=" not in ln:
            raise ValueError(f"config line without '=': {ln!r}")
        key, value = ln.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _resolve(args: argparse.Namespace, opts: list[Opt]) -> dict[str, Any]:
    config = _read_config(args.config) if args.config else {}
    unknown = set(config) - {o.name for o in opts}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    resolved: dict[str, Any] = {}
    for o in opts:
        raw = getattr(args, o.name)
        if raw is not None:
            resolved[o.name] = raw if o.flag else o.parse(raw)
        elif o.name in config:
            resolved[o.name] = o.parse(config[o.name])
        else:
            resolved[o.name] = o.default
    return resolved


def _dump_config(resolved: dict[str, Any], opts: list[Opt]) -> str:
    by_name = {o.name: o for o in opts}
    lines = []
    for name in sorted(resolved):
        value = resolved[name]
        if value is None:
            continue
        lines.append(f"{name}={by_name[name].fmt(value)}")
    return "\n".join(lines)


def _require(cfg: dict[str, Any], *names: str) -> None:
    missing = [n for n in names if cfg[n] is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ValueError(f"missing required option(s): {flags}")


def _decoder_config(cfg: dict[str, Any], param: float | None = None) -> DecoderConfig:
    kind = cfg["decoder"]
    alpha = cfg.get("alpha")
    beta = cfg.get("beta")
    if param is not None:
        if kind == "strategy1":
            alpha = param
        elif kind == "strategy2":
            beta = param
        else:
            raise ValueError(f"decoder {kind!r} takes no sweep parameter")
    return DecoderConfig(
        kind=kind,
        alpha=alpha,
        beta=beta,
        noise_var_source=cfg.get("noise_var_source", "known"),
        simple_mode=cfg.get("simple_mode", "own_length"),
    )


def _load_books(cfg: dict[str, Any], need_fixed: bool) -> tuple[PlhCodebook, ModCodTable, PlhCodebook | None]:
    """Codebook + table from files when given, else the built-in design."""
    table = read_modcod_table(cfg["modcod_table"]) if cfg.get("modcod_table") else None
    if cfg.get("codebook"):
        codebook = read_codebook(cfg["codebook"])
        table = table or default_modcod_table()
        fixed = None
        if need_fixed:
            if not cfg.get("genmatrix"):
                raise ValueError("standard decoding from a codebook file needs --genmatrix")
            g = read_genmatrix(cfg["genmatrix"])
            fixed = build_fixed_codebook(g, table.n)
        return codebook, table, fixed
    design = default_design()
    return design.codebook, table or design.table, design.fixed_codebook


def _cmd_design(cfg: dict[str, Any]) -> int:
    _require(cfg, "out")
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    if (cfg["k"] is None) != (cfg["target_dmin"] is None):
        raise ValueError("--k and --target-dmin must be given together")
    if cfg["k"] is not None:
        spec = CodeDesignSpec(
            k=cfg["k"], target_dmin=cfg["target_dmin"], max_length=cfg["max_length"], seed=cfg["seed"]
        )
        g = design_code(spec)
        path = out_dir / f"genmatrix_k{g.k}.txt"
        write_genmatrix(g, path)
        if g.k <= 10:
            words = [encode(g, bits_from_int(m, g.k)) for m in range(1 << g.k)]
            dmin = code_min_distance(words, mode="noncoherent")
            print(f"designed k={g.k} v={g.v} noncoherent_dmin={dmin} -> {path}")
        else:
            print(f"designed k={g.k} v={g.v} -> {path}")
        return 0
    table = read_modcod_table(cfg["modcod_table"]) if cfg["modcod_table"] else default_modcod_table()
    designs = design_codebook_matrices(table, target_cer=cfg["target_cer"], seed=cfg["seed"])
    codebook = build_codebook(table, {L: d.matrix for L, d in designs.items()})
    write_codebook(codebook, out_dir / "codebook.txt")
    write_modcod_table(table, out_dir / "modcod_table.csv")
    for L, d in sorted(designs.items()):
        write_genmatrix(d.matrix, out_dir / f"genmatrix_L{L}.txt")
        print(f"L={L}: dmin={d.achieved_dmin} (target {d.target_dmin})")
    print(f"wrote codebook.txt, modcod_table.csv, genmatrix_L*.txt -> {out_dir}")
    return 0


def _cmd_simulate(cfg: dict[str, Any]) -> int:
    _require(cfg, "modcod", "decoder", "esn0")
    decoder = _decoder_config(cfg)
    codebook, table, fixed = _load_books(cfg, need_fixed=decoder.kind == "standard")
    est = run_cer(
        codebook,
        table,
        cfg["modcod"],
        decoder,
        cfg["esn0"],
        cfg["trials"],
        cfg["seed"],
        amp_random=cfg["amp_random"],
        fixed_codebook=fixed,
        threads=cfg["threads"],
    )
    point = SweepPoint(
        modcod=cfg["modcod"],
        decoder=decoder.kind,
        param_name=decoder.param_name,
        param_value=decoder.param_value,
        esn0_db=cfg["esn0"],
        estimate=est,
        seed=cfg["seed"],
    )
    if cfg["out"]:
        write_results_csv([point], cfg["out"])
        print(f"cer={est.cer:.6g} ci95=[{est.ci95_lo:.6g},{est.ci95_hi:.6g}] -> {cfg['out']}")
    else:
        from .sim_harness import RESULTS_CSV_HEADER

        print(RESULTS_CSV_HEADER)
        print(point.csv_row())
    return 0


def _cmd_sweep(cfg: dict[str, Any]) -> int:
    _require(cfg, "modcods", "decoder", "esn0_grid", "out")
    kind = cfg["decoder"]
    if kind in ("strategy1", "strategy2"):
        if not cfg["params"]:
            raise ValueError(f"decoder {kind} needs --params")
        decoders = [_decoder_config(cfg, param=p) for p in cfg["params"]]
    else:
        if cfg["params"]:
            raise ValueError(f"decoder {kind} takes no --params")
        decoders = [_decoder_config(cfg)]
    codebook, table, fixed = _load_books(cfg, need_fixed=kind == "standard")
    points = sweep(
        codebook,
        table,
        cfg["modcods"],
        decoders,
        cfg["esn0_grid"],
        cfg["trials"],
        cfg["seed"],
        amp_random=cfg["amp_random"],
        fixed_codebook=fixed,
        threads=cfg["threads"],
    )
    write_results_csv(points, cfg["out"])
    print(f"wrote {len(points)} points -> {cfg['out']}")
    return 0


def _cmd_gap(cfg: dict[str, Any]) -> int:
    _require(cfg, "modcods", "decoder", "out")
    decoder = _decoder_config(cfg)
    codebook, table, fixed = _load_books(cfg, need_fixed=decoder.kind == "standard")
    target = cfg["target_cer"]
    cap = cfg["trials_cap"]
    if cfg["deep"]:
        # publication operating point; far beyond desk-scale runtimes
        target = 1e-5
        cap = 100_000_000
    results = gap_analysis(
        codebook,
        table,
        cfg["modcods"],
        decoder,
        target,
        cfg["seed"],
        window_rel_db=cfg["window_rel"],
        resolution_db=cfg["resolution"],
        trials_start=cfg["trials_start"],
        trials_cap=cap,
        amp_random=cfg["amp_random"],
        fixed_codebook=fixed,
        threads=cfg["threads"],
    )
    write_gap_json(results, cfg["out"])
    for r in results:
        print(
            f"modcod {r.modcod_id}: snr@{target:g} = {r.snr_at_target_db:.2f} dB, "
            f"threshold {r.ldpc_threshold_db:.2f} dB, gap {r.gap_db:+.2f} dB"
        )
    return 0


def _cmd_complexity(cfg: dict[str, Any]) -> int:
    codebook = read_codebook(cfg["codebook"]) if cfg["codebook"] else default_design().codebook
    report = complexity_report(codebook)
    print(report.text_table())
    if cfg["out"]:
        import json

        Path(cfg["out"]).write_text(json.dumps(report.json_dict(), indent=2, sort_keys=True) + "\n")
        print(f"wrote JSON -> {cfg['out']}")
    return 0


_HANDLERS = {
    "design": _cmd_design,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "gap": _cmd_gap,
    "complexity": _cmd_complexity,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    opts = OPTIONS[args.command]
    try:
        resolved = _resolve(args, opts)
        if args.dump_config:
            print(_dump_config(resolved, opts))
            return 0
        return _HANDLERS[args.command](resolved)
    except (ValueError, KeyError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
