from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from ..helper._helper import getLogger
from ..helper.utils import resolve_workers

logger = getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Pool of ``w`` threads over which the ``p`` independent subdomain tasks are multiplexed.

    The band kernels release the GIL, so local factorisations and triangular
    solves of different subdomains run concurrently. :meth:`map` returns
    results in task order whatever the number of workers, and every call is a
    barrier. With one worker the tasks run inline. The threads start on the
    first :meth:`map` and stop on :meth:`close` or when a ``with`` block exits.

    Parameters
    ----------
    workers : int
        Worker count, 0 meaning every available core.
    """

    def __init__(self, workers: int = 1):
        self.workers = resolve_workers(workers)
        self._executor: Optional[ThreadPoolExecutor] = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def map(self, func: Callable[[T], R], tasks: Iterable[T]) -> List[R]:
        if self.workers == 1:
            return [func(task) for task in tasks]
        if self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="ddperf")
            logger.debug(f"Started a pool of {self.workers} workers")
        return list(self._executor.map(func, tasks))
