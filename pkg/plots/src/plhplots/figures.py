"""Series grouping and figure builders.

Builds matplotlib Figure objects directly (no pyplot, no global state), so
rendering is deterministic for a fixed input: fixed figure size, series
ordered by sorted keys, and no data transformation beyond axis scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from matplotlib.figure import Figure

from .io import GapRow, ResultRow

FIGSIZE = (7.2, 4.8)
DPI = 150


@dataclass(frozen=True)
class Series:
    """One plotted curve: points in x order plus optional CI bounds.

    For CER curves, lo/hi carry the confidence interval and censored flags
    the zero-error points (drawn as open upper-bound markers at hi). Gap
    charts use only label/x/y.
    """

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    lo: tuple[float, ...] | None = None
    hi: tuple[float, ...] | None = None
    censored: tuple[bool, ...] | None = None


def _filter(rows, modcods, decoders, what: str):
    kept = [
        r
        for r in rows
        if (modcods is None or r.modcod in modcods)
        and (decoders is None or r.decoder in decoders)
    ]
    if not kept:
        raise ValueError(f"no {what} rows left after filtering")
    return kept


def _series_label(show_mc: bool, modcod: int, decoder: str,
                  param_name: str | None, param_value: float | None) -> str:
    parts = []
    if show_mc:
        parts.append(f"mc{modcod}")
    parts.append(decoder)
    if param_name is not None and param_value is not None:
        parts.append(f"{param_name}={param_value:g}")
    return " ".join(parts)


def cer_series(
    rows: Sequence[ResultRow],
    modcods: Sequence[int] | None = None,
    decoders: Sequence[str] | None = None,
) -> list[Series]:
    """Group sweep rows into one series per (ModCod, decoder, parameter)."""
    kept = _filter(rows, modcods, decoders, "sweep")
    show_mc = len({r.modcod for r in kept}) > 1

    def key(r):
        pv = r.param_value if r.param_value is not None else float("-inf")
        return (r.modcod, r.decoder, r.param_name or "", pv)

    groups: dict[tuple, list[ResultRow]] = {}
    for r in kept:
        groups.setdefault(key(r), []).append(r)

    out = []
    for k in sorted(groups):
        pts = sorted(groups[k], key=lambda r: r.esn0_db)
        label = _series_label(show_mc, pts[0].modcod, pts[0].decoder,
                              pts[0].param_name, pts[0].param_value)
        out.append(
            Series(
                label=label,
                x=tuple(r.esn0_db for r in pts),
                y=tuple(r.cer for r in pts),
                lo=tuple(r.ci_lo for r in pts),
                hi=tuple(r.ci_hi for r in pts),
                censored=tuple(r.errors == 0 for r in pts),
            )
        )
    return out


def gap_series(
    rows: Sequence[GapRow],
    modcods: Sequence[int] | None = None,
    decoders: Sequence[str] | None = None,
) -> list[Series]:
    """Group gap rows into one series per (ModCod, decoder), x = parameter."""
    kept = _filter(rows, modcods, decoders, "gap")
    for r in kept:
        if r.param_value is None:
            raise ValueError(
                f"gap entry for decoder '{r.decoder}' has no parameter value; "
                "the gap chart needs one for the x axis"
            )
    show_dec = len({r.decoder for r in kept}) > 1

    groups: dict[tuple, list[GapRow]] = {}
    for r in kept:
        groups.setdefault((r.modcod, r.decoder), []).append(r)

    out = []
    for mc, dec in sorted(groups):
        pts = sorted(groups[(mc, dec)], key=lambda r: r.param_value)
        label = f"mc{mc} {dec}" if show_dec else f"mc{mc}"
        out.append(
            Series(
                label=label,
                x=tuple(r.param_value for r in pts),
                y=tuple(r.gap_db for r in pts),
            )
        )
    return out


def param_axis_label(rows: Sequence[GapRow]) -> str:
    names = {r.param_name for r in rows if r.param_name is not None}
    return names.pop() if len(names) == 1 else "parameter value"


def plot_cer(series: Sequence[Series], out: str | Path | None = None,
             title: str | None = None) -> Figure:
    """Semilog CER-vs-Es/N0 figure with CI whiskers.

    Zero-error points carry no point estimate, so they are drawn as open
    downward triangles at the CI upper bound and left unconnected.
    """
    if not series:
        raise ValueError("nothing to plot: no series")
    fig = Figure(figsize=FIGSIZE)
    ax = fig.add_subplot()
    ax.set_yscale("log")

    nonzero_cer: list[float] = []
    upper: list[float] = []
    all_x: list[float] = []
    for s in series:
        cens = s.censored or (False,) * len(s.x)
        solid = [i for i, c in enumerate(cens) if not c]
        open_ = [i for i, c in enumerate(cens) if c]
        all_x.extend(s.x)
        upper.extend(s.hi)
        nonzero_cer.extend(s.y[i] for i in solid)

        eb = ax.errorbar(
            [s.x[i] for i in solid],
            [s.y[i] for i in solid],
            yerr=[
                [s.y[i] - s.lo[i] for i in solid],
                [s.hi[i] - s.y[i] for i in solid],
            ],
            fmt="-o",
            markersize=4,
            capsize=3,
            linewidth=1.2,
            label=s.label,
        )
        # gids make the data layer addressable after rendering.
        eb.lines[0].set_gid(f"series:{s.label}")
        color = eb.lines[0].get_color()
        if open_:
            (marker_line,) = ax.plot(
                [s.x[i] for i in open_],
                [s.hi[i] for i in open_],
                "v",
                markersize=6,
                markerfacecolor="none",
                color=color,
                label="_nolegend_",
            )
            marker_line.set_gid(f"censored:{s.label}")

    ax.set_xlim(min(all_x) - 0.5, max(all_x) + 0.5)
    floor_ref = min(nonzero_cer) if nonzero_cer else min(upper)
    ax.set_ylim(floor_ref / 10.0, max(upper) * 2.0)
    ax.set_xlabel("Es/N0 (dB)")
    ax.set_ylabel("CER")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best")
    if out is not None:
        _save(fig, out)
    return fig


def plot_gaps(series: Sequence[Series], out: str | Path | None = None,
              title: str | None = None, xlabel: str = "parameter value") -> Figure:
    """Gap-to-threshold chart with a zero-gap reference line."""
    if not series:
        raise ValueError("nothing to plot: no series")
    fig = Figure(figsize=FIGSIZE)
    ax = fig.add_subplot()
    ref = ax.axhline(0.0, color="black", linewidth=1.0, linestyle="--",
                     label="_nolegend_")
    ref.set_gid("zero-gap")
    lo = hi = 0.0
    for s in series:
        (line,) = ax.plot(s.x, s.y, "-o", markersize=4, linewidth=1.2,
                          label=s.label)
        line.set_gid(f"series:{s.label}")
        lo = min(lo, min(s.y))
        hi = max(hi, max(s.y))
    ax.set_ylim(lo - 0.5, hi + 0.5)
    ax.margins(x=0.05)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("gap to FEC threshold (dB)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    if out is not None:
        _save(fig, out)
    return fig


def _save(fig: Figure, out: str | Path) -> None:
    path = Path(out)
    kwargs = {"dpi": DPI}
    if path.suffix.lower() == ".png":
        # Drop the version-stamped Software chunk so output bytes depend
        # only on the input data.
        kwargs["metadata"] = {"Software": None}
    fig.savefig(path, **kwargs)


def dump_payload(series: Sequence[Series]) -> dict:
    """JSON-ready copy of exactly what the figure draws."""
    out = []
    for s in series:
        entry: dict = {"label": s.label, "x": list(s.x), "y": list(s.y)}
        if s.lo is not None:
            entry["ci_lo"] = list(s.lo)
            entry["ci_hi"] = list(s.hi)
            entry["censored"] = list(s.censored)
        out.append(entry)
    return {"series": out}
