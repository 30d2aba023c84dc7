import os
import platform
import time
from datetime import datetime, timezone
from typing import Dict, Optional

import numpy as np

__all__ = ["DEFAULT_SEED", "random_load", "resolve_workers", "timer_resolution", "Stopwatch", "environment_stamp"]

DEFAULT_SEED = 20140101


def random_load(n: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """
    Fixed-seed load vector with entries uniform in [-1, 1].

    Parameters
    ----------
    n : int
        Number of unknowns.
    seed : int, optional
        Seed of the generator, by default ``DEFAULT_SEED``.

    Returns
    -------
    np.ndarray
        The load vector of length ``n``.
    """
    rng = np.random.default_rng(seed)

    return rng.uniform(-1.0, 1.0, size=n)


def resolve_workers(workers: int) -> int:
    """Map a requested worker count to an actual one, 0 meaning every available core."""
    if workers < 0:
        raise ValueError("`workers` should be a non-negative integer.")
    if workers == 0:
        return os.cpu_count() or 1

    return workers


def timer_resolution() -> float:
    """Resolution in seconds of the clock behind :class:`Stopwatch`."""
    return time.get_clock_info("perf_counter").resolution


class Stopwatch:
    """
    Monotonic wall-clock timer usable as a context manager.

    Examples
    --------
    >>> with Stopwatch() as watch:
    ...     do_work()
    >>> watch.seconds
    """

    def __init__(self):
        self.start: Optional[float] = None
        self.seconds: float = 0.0

    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = time.perf_counter() - self.start


def environment_stamp(workers: Optional[int] = None) -> Dict[str, object]:
    """
    Describe the machine a measurement was taken on.

    Parameters
    ----------
    workers : int, optional
        Physical worker count used by the run, recorded alongside the core count.

    Returns
    -------
    dict
        hardware identifier, python version, UTC timestamp and timer resolution.
    """
    processor = platform.processor() or platform.machine()
    stamp = {
        "hardware": f"{platform.system()} {platform.machine()} {processor} cpus={os.cpu_count()}",
        "python": platform.python_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "timer_resolution": timer_resolution(),
    }
    if workers is not None:
        stamp["workers"] = workers

    return stamp
