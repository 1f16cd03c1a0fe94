"""Figure rendering for header CER sweep CSVs and gap-analysis JSON."""

from .figures import (
    DPI,
    FIGSIZE,
    Series,
    cer_series,
    dump_payload,
    gap_series,
    param_axis_label,
    plot_cer,
    plot_gaps,
)
from .io import (
    GAP_KEYS,
    RESULTS_COLUMNS,
    GapRow,
    ResultRow,
    SchemaError,
    load_gaps,
    load_results,
)

__all__ = [
    "DPI",
    "FIGSIZE",
    "GAP_KEYS",
    "GapRow",
    "RESULTS_COLUMNS",
    "ResultRow",
    "SchemaError",
    "Series",
    "cer_series",
    "dump_payload",
    "gap_series",
    "load_gaps",
    "load_results",
    "param_axis_label",
    "plot_cer",
    "plot_gaps",
]
