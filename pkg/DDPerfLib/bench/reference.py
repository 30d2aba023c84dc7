"""
Published strong-scaling measurements of a non-overlapping domain
decomposition solver on a problem of one million unknowns.

The raw columns are the parallel time ``T(p, n)`` and the time ``T(1, n/p)``
of one local problem solved alone. Every derived figure is recomputed from
them; the printed DC speedup goals are kept only to flag where they disagree.
"""
from typing import Dict

import pandas as pd

from ..perf_metrics import TimingKind, dc_speedup_goal
from .experiment import RAW_COLUMNS, ResultSet

REFERENCE_N = 1_000_000

# p -> T(p, n) in seconds
PARALLEL_SECONDS: Dict[int, float] = {1: 29278.0, 16: 178.0, 25: 78.0, 64: 16.0, 256: 2.0, 400: 1.0}

# p -> (n/p, T(1, n/p)) in seconds
LOCAL_SECONDS: Dict[int, tuple] = {
    1: (1_000_000, 29278.0),
    16: (62_500, 125.15),
    25: (40_000, 51.45),
    64: (15_625, 7.90),
    256: (4_096, 0.55),
    400: (2_500, 0.2),
}

# p -> S_DC(p, n) as printed alongside the measurements
PRINTED_DC_SPEEDUP: Dict[int, float] = {1: 1.0, 16: 233.9, 25: 596.1, 64: 3706.0, 256: 53233.0, 400: 146390.0}

# Relative gap between a printed and a recomputed goal beyond print rounding
DISCREPANCY_TOLERANCE = 1e-3


def reference_result_set() -> ResultSet:
    """The published measurements as a ResultSet, one repetition per cell."""
    rows = [{"kind": TimingKind.MONOLITHIC.value, "p": 1, "n": REFERENCE_N, "local_n": REFERENCE_N,
             "workers": 1, "rep": 0, "seconds": PARALLEL_SECONDS[1], "iterations": 0, "residual": 0.0}]
    for p in sorted(PARALLEL_SECONDS):
        if p == 1:
            continue
        local_n, local_seconds = LOCAL_SECONDS[p]
        rows.append({"kind": TimingKind.PARALLEL.value, "p": p, "n": REFERENCE_N, "local_n": local_n,
                     "workers": p, "rep": 0, "seconds": PARALLEL_SECONDS[p], "iterations": 0, "residual": 0.0})
        rows.append({"kind": TimingKind.SINGLE_LOCAL.value, "p": p, "n": REFERENCE_N, "local_n": local_n,
                     "workers": 1, "rep": 0, "seconds": local_seconds, "iterations": 0, "residual": 0.0})

    config = {"nx": 1000, "ny": 1000, "partitions": "4x4,5x5,8x8,16x16,20x20", "reps": 1,
              "source": "published measurements"}
    environment = {"hardware": "published cluster, one processor per subdomain", "timer_resolution": None}

    return ResultSet(config, pd.DataFrame(rows, columns=RAW_COLUMNS), environment)


def printed_goal_discrepancies(tolerance: float = DISCREPANCY_TOLERANCE) -> pd.DataFrame:
    """
    Printed DC speedup goals that disagree with ``T(1, n) / T(1, n/p)``.

    Returns
    -------
    pd.DataFrame
        Columns ``p``, ``printed``, ``recomputed`` and ``relative_gap``; only p = 25 is expected.
    """
    t1 = PARALLEL_SECONDS[1]
    rows = []
    for p, printed in sorted(PRINTED_DC_SPEEDUP.items()):
        recomputed = dc_speedup_goal(t1, LOCAL_SECONDS[p][1])
        gap = abs(printed - recomputed) / recomputed
        if gap > tolerance:
            rows.append({"p": p, "printed": printed, "recomputed": recomputed, "relative_gap": gap})

    return pd.DataFrame(rows, columns=["p", "printed", "recomputed", "relative_gap"])
