import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..helper._helper import getLogger
from ..helper.exceptions import EmptyReportError, InvalidTimingError, MissingRecordError, UnwritableDestinationError
from ..perf_metrics import (TimingKind, dc_efficiency, dc_speedup_goal, goal_ratio, p_squared_deviation,
                            p_squared_efficiency, speedup, speedup_multiple_of_p, standard_bound_on_dc_efficiency,
                            standard_efficiency, standard_relative_efficiency_bound, standard_time_bound)
from .experiment import ResultSet

logger = getLogger(__name__)

# Durations below this many timer ticks are flagged unreliable
RELIABLE_TICKS = 100

# column -> (header, style)
COLUMNS: Dict[str, tuple] = {
    "p": ("p", "count"),
    "n": ("n", "count"),
    "local_n": ("n/p", "count"),
    "workers": ("w", "count"),
    "T": ("T(p,n)", "time"),
    "S": ("S(p,n)", "speedup"),
    "S_over_p": ("S/p", "multiple"),
    "p_over_S": ("p/S", "bound"),
    "E_S": ("E_S", "percent"),
    "T_DC": ("T_DC", "time"),
    "S_DC": ("S_DC", "speedup"),
    "E_DC": ("E_DC", "percent"),
    "p2": ("p²", "count"),
    "p2_deviation": ("(p²-S_DC)/p²", "percent"),
    "S_over_p2": ("S/p²", "percent"),
    "S_s": ("S_s", "count"),
    "S_DC_over_p": ("S_DC/p", "speedup"),
    "p_over_S_DC": ("p/S_DC", "bound"),
    "T_s": ("T(1,n)/p", "time"),
    "T_factor": ("T_factor", "time"),
    "T_iterate": ("T_iterate", "time"),
    "unreliable": ("unreliable", "flag"),
}

# One view per published table, plus everything
VIEWS: Dict[str, List[str]] = {
    "speedup": ["p", "n", "T", "S", "S_over_p", "p_over_S"],
    "efficiency": ["p", "n", "T", "S", "E_S"],
    "dc_goal": ["p", "local_n", "T_DC", "S_DC", "p2", "p2_deviation"],
    "dc_framework": ["p", "p2", "T", "S", "T_DC", "S_DC", "E_DC", "S_over_p2"],
    "goal_comparison": ["p", "S_s", "S_DC", "S_DC_over_p", "p_over_S_DC"],
    "standard_bounds": ["p", "T_s", "S_s", "T_DC", "S_DC", "p_over_S_DC"],
    "dc_comparison": ["p", "E_DC", "p_over_S_DC"],
    "full": list(COLUMNS),
}

STANDARD_NOTES = [
    "T(p,n) covers local factorisation, interface iteration and back-substitution; "
    "grid construction and decomposition are excluded.",
    "Each duration is the minimum over the repetitions of its cell.",
    "Speedups are taken against the logical subdomain count p; w is the number of physical workers.",
]


@dataclass
class EfficiencyReport:
    """
    Derived performance figures, one row per ``(p, n)``.

    Attributes
    ----------
    frame : pd.DataFrame
        Raw durations and every derived column of ``COLUMNS``; fractions are
        stored as fractions, NaN where an input timing is missing.
    notes : list of str
        Conventions and warnings printed under the tables.
    """
    frame: pd.DataFrame
    notes: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.frame)

    def row(self, p: int, n: Optional[int] = None) -> pd.Series:
        rows = self.frame[self.frame["p"] == p]
        if n is not None:
            rows = rows[rows["n"] == n]
        if rows.empty:
            raise KeyError(f"No report row for p={p}.")
        return rows.iloc[0]


def _or_nan(func, *args) -> float:
    if any(isinstance(arg, float) and math.isnan(arg) for arg in args):
        return math.nan
    return func(*args)


def _derive_row(p: int, n: int, local_n: int, workers: int, t1: float, tp: float, t_dc: float,
                resolution: Optional[float],
                phases: Tuple[float, float] = (math.nan, math.nan)) -> Dict[str, Any]:
    s = _or_nan(speedup, t1, tp)
    s_dc = _or_nan(dc_speedup_goal, t1, t_dc)
    unreliable = False
    if resolution:
        unreliable = any(t < RELIABLE_TICKS * resolution for t in (t1, tp, t_dc) if not math.isnan(t))

    return {
        "p": p, "n": n, "local_n": local_n, "workers": workers,
        "T": tp, "S": s,
        "S_over_p": _or_nan(speedup_multiple_of_p, s, p),
        "p_over_S": _or_nan(standard_relative_efficiency_bound, p, s),
        "E_S": _or_nan(standard_efficiency, s, p),
        "T_DC": t_dc, "S_DC": s_dc,
        "E_DC": _or_nan(dc_efficiency, s, s_dc),
        "p2": p * p,
        "p2_deviation": _or_nan(p_squared_deviation, p, s_dc),
        "S_over_p2": _or_nan(p_squared_efficiency, s, p),
        "S_s": p,
        "S_DC_over_p": _or_nan(goal_ratio, s_dc, p),
        "p_over_S_DC": _or_nan(standard_bound_on_dc_efficiency, p, s_dc),
        "T_s": standard_time_bound(t1, p),
        "T_factor": phases[0], "T_iterate": phases[1],
        "unreliable": unreliable,
    }


def _phases(runs: pd.DataFrame, kind: TimingKind, p: int, n: int) -> Tuple[float, float]:
    """Factorisation and iteration time of the fastest run of a cell, NaN without run summaries."""
    cell = runs[(runs["kind"] == kind.value) & (runs["p"] == p) & (runs["n"] == n)]
    if cell.empty:
        return math.nan, math.nan
    fastest = cell.loc[cell["seconds"].idxmin()]
    return float(fastest["factor_seconds"]), float(fastest["iterate_seconds"])


def derive_report(rs: ResultSet) -> EfficiencyReport:
    """
    Compute every derived performance column from the aggregated timings.

    The ``p = 1`` row comes from the monolithic timing. A row whose
    single-local timing is missing keeps its speedup columns and gets NaN DC
    columns, and a row whose parallel timing is missing keeps its DC goal.

    Raises
    ------
    MissingRecordError
        If a problem size has no monolithic timing.
    InvalidTimingError
        If one protocol holds timings of two layouts with the same ``p``.
    """
    aggregated = rs.aggregated
    resolution = rs.environment.get("timer_resolution")
    rows, notes = [], list(STANDARD_NOTES)

    sizes = sorted(set(aggregated["n"].astype(int)) | set(rs.raw["n"].dropna().astype(int)))
    if not sizes:
        raise MissingRecordError("The result set holds no timing.")
    for n in sizes:
        cell = aggregated[aggregated["n"] == n]
        monolithic = cell[cell["kind"] == TimingKind.MONOLITHIC.value]
        if monolithic.empty:
            raise MissingRecordError(f"No monolithic timing T(1, n) for n={n}; nothing to derive against.")
        t1 = float(monolithic["seconds"].iloc[0])
        rows.append(_derive_row(1, n, n, 1, t1, t1, t1, resolution,
                                _phases(rs.runs, TimingKind.MONOLITHIC, 1, n)))

        parallel = cell[cell["kind"] == TimingKind.PARALLEL.value].set_index("p")
        local = cell[cell["kind"] == TimingKind.SINGLE_LOCAL.value].set_index("p")
        for kind, table in ((TimingKind.PARALLEL, parallel), (TimingKind.SINGLE_LOCAL, local)):
            duplicated = sorted(set(table.index[table.index.duplicated()]))
            if duplicated:
                raise InvalidTimingError(f"{kind.value} timings at n={n} mix several layouts for "
                                         f"p = {', '.join(str(int(p)) for p in duplicated)}.")
        for p in sorted(set(parallel.index) | set(local.index)):
            if p == 1:
                continue
            tp = float(parallel.at[p, "seconds"]) if p in parallel.index else math.nan
            t_dc = float(local.at[p, "seconds"]) if p in local.index else math.nan
            workers = int(parallel.at[p, "workers"]) if p in parallel.index else 1
            local_n = int(local.at[p, "local_n"]) if p in local.index else int(parallel.at[p, "local_n"])
            if math.isnan(t_dc):
                logger.warning(f"No single-local timing at p={p}, n={n}; DC columns unavailable")
            rows.append(_derive_row(int(p), n, local_n, workers, t1, tp, t_dc, resolution,
                                    _phases(rs.runs, TimingKind.PARALLEL, int(p), n)))

    frame = pd.DataFrame(rows, columns=list(COLUMNS))
    if frame["unreliable"].any():
        flagged = ", ".join(str(p) for p in frame.loc[frame["unreliable"], "p"])
        notes.append(f"Timings at p = {flagged} are below {RELIABLE_TICKS} timer ticks and are unreliable.")
        logger.warning(notes[-1])
    failures = rs.failures
    if not failures.empty:
        cells = ", ".join(f"{kind} p={int(p)}" for kind, p in zip(failures["kind"], failures["p"]))
        notes.append(f"Failed cells, excluded from the report: {cells}.")

    return EfficiencyReport(frame, notes)


def format_value(value: Any, style: str) -> str:
    """Human rendering: times to 2 decimals, speedups to 1, efficiencies as percentages to 1."""
    if style == "flag":
        return "yes" if value else ""
    if value is None or (isinstance(value, (float, np.floating)) and math.isnan(value)):
        return "n/a"
    if style == "count":
        return f"{int(value):,}"
    if style == "time":
        return f"{value:,.2f}"
    if style == "speedup":
        return f"{value:,.1f}"
    if style == "multiple":
        return f"{value:,.2f}p"
    if style == "percent":
        return f"{100 * value:,.1f}%"
    if style == "bound":
        return f"{100 * value:,.2f}%"
    raise ValueError(f"Unknown column style {style!r}.")


def _select(report: EfficiencyReport, view: str, p_values: Optional[Iterable[int]]) -> pd.DataFrame:
    if view not in VIEWS:
        raise ValueError(f"Unknown report view {view!r}; expected one of {list(VIEWS)}.")
    frame = report.frame
    if p_values is not None:
        frame = frame[frame["p"].isin(list(p_values))]
    if frame.empty:
        raise EmptyReportError(f"Nothing to emit in view {view!r}.")
    return frame[VIEWS[view]]


def _render_table(frame: pd.DataFrame, notes: List[str]) -> str:
    headers = [COLUMNS[column][0] for column in frame.columns]
    cells = [[format_value(value, COLUMNS[column][1]) for column, value in zip(frame.columns, row)]
             for row in frame.itertuples(index=False)]
    widths = [max(len(header), *(len(row[i]) for row in cells)) for i, header in enumerate(headers)]

    def line(values):
        return " | ".join(value.rjust(width) if i else value.ljust(width)
                          for i, (value, width) in enumerate(zip(values, widths))).rstrip()

    lines = [line(headers), " | ".join("-" * width for width in widths)]
    lines.extend(line(row) for row in cells)
    if notes:
        lines.append("")
        lines.extend(f"Note: {note}" for note in notes)
    return "\n".join(lines) + "\n"


def _render_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.rename(columns={column: COLUMNS[column][0] for column in frame.columns}) \
        .to_csv(buffer, index=False, na_rep="")
    return buffer.getvalue()


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    return None if math.isnan(value) else value


def _render_json(frame: pd.DataFrame, notes: List[str], view: str) -> str:
    payload = {
        "view": view,
        "columns": [COLUMNS[column][0] for column in frame.columns],
        "rows": [{COLUMNS[column][0]: _json_value(value) for column, value in zip(frame.columns, row)}
                 for row in frame.itertuples(index=False)],
        "notes": notes,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def emit(report: EfficiencyReport, fmt: str = "table", destination: Optional[Union[str, Path]] = None,
         view: str = "full", p_values: Optional[Iterable[int]] = None) -> str:
    """
    Render a report view and optionally write it to a file.

    Parameters
    ----------
    report : EfficiencyReport
    fmt : str
        ``table`` (aligned pipes), ``csv`` (full precision) or ``json``.
    destination : str or Path, optional
        File to write; parent directories are created.
    view : str
        One of ``VIEWS``.
    p_values : iterable of int, optional
        Keep only these rows.

    Returns
    -------
    str
        The rendered text, identical for identical reports.

    Raises
    ------
    EmptyReportError
        If no row is left to emit.
    UnwritableDestinationError
        If the destination cannot be written.
    """
    frame = _select(report, view, p_values)
    if fmt == "table":
        text = _render_table(frame, report.notes)
    elif fmt == "csv":
        text = _render_csv(frame)
    elif fmt == "json":
        text = _render_json(frame, report.notes, view)
    else:
        raise ValueError(f"Unknown output format {fmt!r}; expected table, csv or json.")

    if destination is not None:
        path = Path(destination)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as error:
            raise UnwritableDestinationError(f"Cannot write report to {path}: {error}") from error
        logger.info(f"Wrote {view} report to {path}")

    return text
