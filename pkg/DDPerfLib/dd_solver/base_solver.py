from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from ..helper.exceptions import DimensionMismatchError
from ..helper.utils import resolve_workers
from ..laplace_grid import GridSpec


@dataclass
class SolveReport:
    """
    Timings and convergence data of one solve.

    Attributes
    ----------
    iterations : int
        Conjugate gradient iterations, 0 for direct solves.
    final_relative_residual : float
        ``||A u - f|| / ||f||`` on the monolithic system (0 when ``f = 0``).
    factor_seconds : float
        Time spent in band factorisations.
    iterate_seconds : float
        Time spent in the interface iteration, or the triangular solves of a direct solve.
    total_seconds : float
        Wall-clock time of the measured section, ``T(p, n)``.
    p_logical : int
        Number of subdomains.
    workers : int
        Number of concurrent workers.
    n : int
        Unknowns of the problem actually solved.
    local_n : int
        Largest local problem size (``n`` for a direct solve).
    flop_count : int
        Flops charged by the band factorisations.
    residual_history : list of float
        Relative residual of every CG iteration.
    """
    iterations: int = 0
    final_relative_residual: float = 0.0
    factor_seconds: float = 0.0
    iterate_seconds: float = 0.0
    total_seconds: float = 0.0
    p_logical: int = 1
    workers: int = 1
    n: int = 0
    local_n: int = 0
    flop_count: int = 0
    residual_history: List[float] = field(default_factory=list)

    def summary(self) -> Dict[str, Any]:
        """Flat record without the residual history."""
        return {"iterations": self.iterations, "residual": self.final_relative_residual,
                "factor_seconds": self.factor_seconds, "iterate_seconds": self.iterate_seconds,
                "seconds": self.total_seconds, "p": self.p_logical, "workers": self.workers,
                "n": self.n, "local_n": self.local_n, "flop_count": self.flop_count}


def relative_residual(apply, u: np.ndarray, f: np.ndarray) -> float:
    norm = float(np.linalg.norm(f))
    if norm == 0.0:
        return float(np.linalg.norm(apply(u)))
    return float(np.linalg.norm(apply(u) - f)) / norm


class LaplaceSolver(ABC):
    """
    Base class for the solvers of the five-point Dirichlet problem.

    Subclasses build whatever they need once in :meth:`setup_solver` (outside
    the timed section) and time only the work done in :meth:`solve`.
    """

    def __init__(self, grid: GridSpec, workers: int = 1, **kwargs: Dict[str, Any]):
        """
        Parameters
        ----------
        grid : GridSpec
            The grid whose system is solved.
        workers : int
            Concurrent workers, 0 meaning every available core.
        kwargs : dict
            Additional keyword arguments.
        """
        self.grid = grid
        self.workers = resolve_workers(workers)
        self.kwargs = kwargs

    @property
    def n(self) -> int:
        """Unknowns of the system this solver handles."""
        return self.grid.n

    def check_load(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=np.float64)
        if f.shape != (self.n,):
            raise DimensionMismatchError(f"Load vector of shape {f.shape} does not match {self.n} unknowns.")
        return f

    @abstractmethod
    def setup_solver(self) -> None:
        """
        Build the matrices used by :meth:`solve`; not part of the measured time.
        """

        pass

    @abstractmethod
    def apply(self, u: np.ndarray) -> np.ndarray:
        """
        Product of the system matrix with ``u``, used to measure residuals.
        """

        pass

    @abstractmethod
    def solve(self, f: np.ndarray) -> Tuple[np.ndarray, SolveReport]:
        """
        Solve for the load ``f`` and report the timings.
        """

        pass
