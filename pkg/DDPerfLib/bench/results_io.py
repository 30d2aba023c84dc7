import json
import math
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import numpy as np
import pandas as pd

from ..helper._helper import getLogger
from ..helper.exceptions import SchemaError, UnwritableDestinationError
from ..perf_metrics import TimingKind
from .experiment import RAW_COLUMNS, RUN_COLUMNS, ResultSet, empty_raw_frame, empty_run_frame

logger = getLogger(__name__)

CSV_NAME = "timings.csv"
JSON_NAME = "timings.json"

_INTEGER_COLUMNS = {"p": 1, "n": 1, "local_n": 0, "workers": 1, "rep": 0, "iterations": 0}


def _json_safe(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return None if math.isnan(value) else float(value)
    return value


def save_results(rs: ResultSet, directory: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write the raw timings of a result set.

    ``timings.csv`` holds one row per repetition at full precision;
    ``timings.json`` holds the same rows plus the configuration snapshot, the
    environment stamp and the solver summary of every run.

    Returns
    -------
    tuple of Path
        The CSV and JSON paths.

    Raises
    ------
    UnwritableDestinationError
        If the directory or a file cannot be written.
    """
    directory = Path(directory)
    csv_path, json_path = directory / CSV_NAME, directory / JSON_NAME
    payload = {
        "columns": RAW_COLUMNS,
        "rows": [{column: _json_safe(value) for column, value in zip(RAW_COLUMNS, row)}
                 for row in rs.raw[RAW_COLUMNS].itertuples(index=False)],
        "config": rs.config,
        "environment": {key: _json_safe(value) for key, value in rs.environment.items()},
        "runs": [{column: _json_safe(value) for column, value in zip(RUN_COLUMNS, row)}
                 for row in rs.runs[RUN_COLUMNS].itertuples(index=False)],
    }
    try:
        directory.mkdir(parents=True, exist_ok=True)
        rs.raw[RAW_COLUMNS].to_csv(csv_path, index=False, encoding="utf-8")
        json_path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    except OSError as error:
        raise UnwritableDestinationError(f"Cannot write results to {directory}: {error}") from error
    logger.info(f"Saved {len(rs.raw)} timing rows to {directory}")

    return csv_path, json_path


def _validate(raw: pd.DataFrame) -> pd.DataFrame:
    """Check every row of a timings table; line numbers count the header as line 1."""
    kinds = {kind.value for kind in TimingKind}
    for index, row in enumerate(raw.itertuples(index=False)):
        line = index + 2
        values = dict(zip(RAW_COLUMNS, row))
        if values["kind"] not in kinds:
            raise SchemaError(line, f"unknown kind {values['kind']!r}")
        for column, minimum in _INTEGER_COLUMNS.items():
            value = values[column]
            if value is None or (isinstance(value, float) and (math.isnan(value) or not value.is_integer())) \
                    or value < minimum:
                raise SchemaError(line, f"`{column}` should be an integer >= {minimum}, got {value!r}")
        seconds = values["seconds"]
        if seconds is not None and not math.isnan(seconds) and not seconds > 0:
            raise SchemaError(line, f"`seconds` should be positive, got {seconds!r}")
        if values["kind"] == TimingKind.MONOLITHIC.value and values["p"] != 1:
            raise SchemaError(line, "a monolithic row has p = 1")

    raw = raw.copy()
    for column in _INTEGER_COLUMNS:
        raw[column] = raw[column].astype(np.int64)
    raw["seconds"] = raw["seconds"].astype(np.float64)
    raw["residual"] = raw["residual"].astype(np.float64)
    return raw


def _read_runs(payload: Dict[str, Any]) -> pd.DataFrame:
    runs = payload.get("runs") or []
    if not runs:
        return empty_run_frame()
    frame = pd.DataFrame([[run.get(column) for column in RUN_COLUMNS] for run in runs], columns=RUN_COLUMNS)
    try:
        frame[RUN_COLUMNS[1:]] = frame[RUN_COLUMNS[1:]].astype(np.float64)
    except (TypeError, ValueError) as error:
        raise SchemaError(1, f"non-numeric value in the run summaries: {error}") from None
    return frame


def _read_csv(path: Path) -> pd.DataFrame:
    try:
        raw = pd.read_csv(path, float_precision="round_trip", encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise SchemaError(1, "empty file, expected the header " + ",".join(RAW_COLUMNS)) from None
    except (pd.errors.ParserError, UnicodeDecodeError) as error:
        raise SchemaError(1, f"unreadable CSV: {error}") from None
    if list(raw.columns) != RAW_COLUMNS:
        raise SchemaError(1, f"header should be {','.join(RAW_COLUMNS)}, got {','.join(map(str, raw.columns))}")
    for column in RAW_COLUMNS[1:]:
        converted = pd.to_numeric(raw[column], errors="coerce")
        bad = converted.isna() & raw[column].notna()
        if bad.any():
            index = int(np.flatnonzero(bad.to_numpy())[0])
            raise SchemaError(index + 2, f"`{column}` should be numeric, got {raw[column].iloc[index]!r}")
        raw[column] = converted
    return raw


def load_results(path: Union[str, Path]) -> ResultSet:
    """
    Read timings written by :func:`save_results`, or a hand-written CSV in the same schema.

    ``path`` may be a CSV file, a JSON file or a directory holding either. A
    CSV file picks up the configuration and environment of a ``timings.json``
    written next to it.

    Raises
    ------
    SchemaError
        On a schema violation, naming the offending line.
    """
    path = Path(path)
    if path.is_dir():
        path = path / CSV_NAME if (path / CSV_NAME).exists() else path / JSON_NAME

    config: Dict[str, Any] = {}
    environment: Dict[str, Any] = {}
    runs = empty_run_frame()
    if path.suffix.lower() == ".json":
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as error:
            raise SchemaError(error.lineno, f"invalid JSON: {error.msg}") from None
        if payload.get("columns") != RAW_COLUMNS:
            raise SchemaError(1, f"columns should be {RAW_COLUMNS}")
        rows = payload.get("rows", [])
        raw = pd.DataFrame([[row.get(column) for column in RAW_COLUMNS] for row in rows], columns=RAW_COLUMNS) \
            if rows else empty_raw_frame()
        try:
            raw[RAW_COLUMNS[1:]] = raw[RAW_COLUMNS[1:]].astype(np.float64)
        except (TypeError, ValueError) as error:
            raise SchemaError(1, f"non-numeric value in the timing rows: {error}") from None
        config, environment = payload.get("config", {}), payload.get("environment", {})
        runs = _read_runs(payload)
    else:
        raw = _read_csv(path)
        sidecar = path.with_suffix(".json")
        if sidecar.exists():
            payload = json.loads(sidecar.read_text(encoding="utf-8"))
            config, environment = payload.get("config", {}), payload.get("environment", {})
            runs = _read_runs(payload)

    raw = _validate(raw)
    logger.info(f"Loaded {len(raw)} timing rows from {path}")

    return ResultSet(config, raw, environment, runs)
