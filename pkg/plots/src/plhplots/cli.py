"""Command line entry point: `plot cer ...` and `plot gaps ...`.

Batch tool only: reads one input file, writes one image and/or dumps the
plotted data as JSON for verification.
"""

from __future__ import annotations

import argparse
import json
import sys

import matplotlib

matplotlib.use("Agg")

from .figures import (
    cer_series,
    dump_payload,
    gap_series,
    param_axis_label,
    plot_cer,
    plot_gaps,
)
from .io import load_gaps, load_results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render header-detection sweep results and gap tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cer = sub.add_parser("cer", help="semilog CER curves from a sweep CSV")
    p_cer.add_argument("--in", dest="infile", required=True,
                       help="sweep results CSV")
    p_gap = sub.add_parser("gaps", help="gap-vs-parameter chart from gap JSON")
    p_gap.add_argument("--in", dest="infile", required=True,
                       help="gap analysis JSON")
    for p in (p_cer, p_gap):
        p.add_argument("--out", help="output image path (png, pdf, svg)")
        p.add_argument("--modcod", type=int, action="append",
                       help="keep only this ModCod id (repeatable)")
        p.add_argument("--decoder", action="append",
                       help="keep only this decoder (repeatable)")
        p.add_argument("--title", help="figure title")
        p.add_argument("--dump-data", action="store_true",
                       help="print the plotted values as JSON; --out optional")
    return parser


def run(args: argparse.Namespace) -> int:
    if args.out is None and not args.dump_data:
        raise ValueError("--out is required unless --dump-data is given")

    if args.command == "cer":
        rows = load_results(args.infile)
        series = cer_series(rows, args.modcod, args.decoder)
        if args.dump_data:
            print(json.dumps(dump_payload(series), indent=2, sort_keys=True))
        if args.out is not None:
            plot_cer(series, args.out, title=args.title)
            print(f"wrote {args.out}")
    else:
        rows = load_gaps(args.infile)
        series = gap_series(rows, args.modcod, args.decoder)
        if args.dump_data:
            print(json.dumps(dump_payload(series), indent=2, sort_keys=True))
        if args.out is not None:
            plot_gaps(series, args.out, title=args.title,
                      xlabel=param_axis_label(rows))
            print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
