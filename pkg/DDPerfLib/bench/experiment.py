from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..dd_solver import SolveReport, decompose, solve_dd, solve_monolithic, solve_single_local
from ..helper._helper import getLogger
from ..helper.exceptions import ConfigError, InvalidPartitionError, NonConvergenceError
from ..helper.utils import environment_stamp, random_load, resolve_workers
from ..input import ExperimentConfig
from ..laplace_grid import build_grid, classify_nodes, make_partition
from ..perf_metrics import TimingKind, TimingRecord

logger = getLogger(__name__)

# Exact column order of the raw timings file, one row per repetition
RAW_COLUMNS = ["kind", "p", "n", "local_n", "workers", "rep", "seconds", "iterations", "residual"]

# Per-run solver summaries; kept in the JSON sidecar only
RUN_COLUMNS = ["kind", "p", "n", "local_n", "workers", "rep", "seconds", "factor_seconds", "iterate_seconds",
               "iterations", "residual", "flop_count"]

_KIND_ORDER = {kind.value: order for order, kind in enumerate(TimingKind)}


def empty_raw_frame() -> pd.DataFrame:
    return pd.DataFrame({column: pd.Series(dtype=object if column == "kind" else np.float64)
                         for column in RAW_COLUMNS})


def empty_run_frame() -> pd.DataFrame:
    return pd.DataFrame({column: pd.Series(dtype=object if column == "kind" else np.float64)
                         for column in RUN_COLUMNS})


@dataclass
class ResultSet:
    """
    Raw and aggregated timings of one experiment.

    Attributes
    ----------
    config : dict
        Snapshot of the experiment configuration.
    raw : pd.DataFrame
        One row per repetition with the columns of ``RAW_COLUMNS``; failed
        cells carry a NaN duration.
    environment : dict
        Hardware identifier, timestamp and timer resolution of the run.
    runs : pd.DataFrame
        Solver summary of every successful repetition with the columns of
        ``RUN_COLUMNS``, keeping the factorisation and iteration times apart.
    """
    config: Dict[str, Any] = field(default_factory=dict)
    raw: pd.DataFrame = field(default_factory=empty_raw_frame)
    environment: Dict[str, Any] = field(default_factory=dict)
    runs: pd.DataFrame = field(default_factory=empty_run_frame)

    @property
    def failures(self) -> pd.DataFrame:
        return self.raw[self.raw["seconds"].isna()].reset_index(drop=True)

    @property
    def aggregated(self) -> pd.DataFrame:
        """Minimum duration over the repetitions of every (kind, p, n) cell."""
        succeeded = self.raw[self.raw["seconds"].notna()]
        keys = ["kind", "p", "n", "local_n", "workers"]
        table = (succeeded.groupby(keys, sort=False)
                 .agg(seconds=("seconds", "min"), repetitions=("seconds", "size"),
                      iterations=("iterations", "max"), residual=("residual", "max"))
                 .reset_index())
        table["order"] = table["kind"].map(_KIND_ORDER)

        return table.sort_values(["n", "order", "p"], kind="stable").drop(columns="order").reset_index(drop=True)

    @property
    def records(self) -> List[TimingRecord]:
        return [TimingRecord(int(row.p), int(row.n), float(row.seconds), row.kind, int(row.workers),
                             int(row.repetitions), int(row.local_n))
                for row in self.aggregated.itertuples(index=False)]

    def has_monolithic(self) -> bool:
        return bool((self.raw["kind"] == TimingKind.MONOLITHIC.value).any())


def _row(kind: TimingKind, p: int, n: int, local_n: int, workers: int, rep: int, seconds: float,
         iterations: int = 0, residual: float = 0.0) -> Dict[str, Any]:
    return {"kind": kind.value, "p": p, "n": n, "local_n": local_n, "workers": workers, "rep": rep,
            "seconds": seconds, "iterations": iterations, "residual": residual}


def _run(kind: TimingKind, p: int, n: int, rep: int, report: SolveReport) -> Dict[str, Any]:
    summary = report.summary()
    summary.update(kind=kind.value, p=p, n=n, rep=rep)
    return {column: summary[column] for column in RUN_COLUMNS}


def run_experiment(config: ExperimentConfig, load: Optional[np.ndarray] = None) -> ResultSet:
    """
    Run the timing protocols of a strong-scaling experiment.

    The sequential time ``T(1, n)`` comes from one direct solve of the whole
    problem, ``T(p, n)`` from the decomposed solve on every partition and
    ``T(1, n/p)`` from the sequential solve of the subdomain owning the grid
    centre. Every cell is repeated ``config.reps`` times. The same load vector
    is used throughout, restricted to the owned nodes for the local solves.

    Parameters
    ----------
    config : ExperimentConfig
    load : np.ndarray, optional
        Load vector; a fixed-seed uniform one when omitted.

    Returns
    -------
    ResultSet
        A non-converging or invalid cell becomes a failure row instead of aborting the run.

    Raises
    ------
    ConfigError
        If two partitions give the same subdomain count.
    """
    counts = [px * py for px, py in config.partitions]
    if len(set(counts)) != len(counts):
        raise ConfigError(f"Every partition needs its own subdomain count, got {config.to_dict()['partitions']}.")
    grid = build_grid(config.nx, config.ny)
    f = random_load(grid.n, config.seed) if load is None else np.asarray(load, dtype=np.float64)
    workers = resolve_workers(config.workers)
    rows, runs = [], []

    if TimingKind.MONOLITHIC.value in config.protocols:
        for rep in range(config.reps):
            _, report = solve_monolithic(grid, f)
            rows.append(_row(TimingKind.MONOLITHIC, 1, grid.n, grid.n, 1, rep, report.total_seconds,
                             0, report.final_relative_residual))
            runs.append(_run(TimingKind.MONOLITHIC, 1, grid.n, rep, report))
        logger.info(f"T(1, {grid.n}) measured over {config.reps} repetitions")

    for px, py in config.partitions:
        partition = make_partition(grid, px, py)
        if partition.p == 1:
            # T(p, n) and T(1, n/p) are both the monolithic time at p = 1
            continue
        center = partition.center_subdomain()
        local_n = partition.local_size(center)

        if TimingKind.PARALLEL.value in config.protocols:
            ds = decompose(grid, partition, classify_nodes(grid, partition))
            for rep in range(config.reps):
                try:
                    _, report = solve_dd(ds, f, tol=config.tol, workers=workers)
                except NonConvergenceError as error:
                    logger.warning(f"Decomposed solve at p={partition.p} did not converge: {error}")
                    rows.append(_row(TimingKind.PARALLEL, partition.p, grid.n, local_n, workers, rep, np.nan,
                                     error.iterations, error.residual_history[-1]))
                    break
                rows.append(_row(TimingKind.PARALLEL, partition.p, grid.n, local_n, workers, rep,
                                 report.total_seconds, report.iterations, report.final_relative_residual))
                runs.append(_run(TimingKind.PARALLEL, partition.p, grid.n, rep, report))

        if TimingKind.SINGLE_LOCAL.value in config.protocols:
            f_local = f[partition.owned_nodes(center)]
            for rep in range(config.reps):
                try:
                    _, report = solve_single_local(grid, partition, center, f_local)
                except InvalidPartitionError as error:
                    logger.warning(f"Local solve at p={partition.p} skipped: {error}")
                    rows.append(_row(TimingKind.SINGLE_LOCAL, partition.p, grid.n, local_n, 1, rep,
                                     np.nan, 0, np.nan))
                    break
                rows.append(_row(TimingKind.SINGLE_LOCAL, partition.p, grid.n, local_n, 1, rep,
                                 report.total_seconds, 0, report.final_relative_residual))
                runs.append(_run(TimingKind.SINGLE_LOCAL, partition.p, grid.n, rep, report))
        logger.info(f"Partition {px}x{py} done")

    raw = pd.DataFrame(rows, columns=RAW_COLUMNS) if rows else empty_raw_frame()

    runs = pd.DataFrame(runs, columns=RUN_COLUMNS) if runs else empty_run_frame()

    return ResultSet(config.to_dict(), raw, environment_stamp(workers), runs)
