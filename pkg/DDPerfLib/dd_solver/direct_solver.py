from typing import Optional, Tuple

import numpy as np

from ..band_lu import BandedMatrix, factor, solve
from ..helper._helper import getLogger
from ..helper.exceptions import InvalidPartitionError
from ..helper.utils import DEFAULT_SEED, Stopwatch, random_load
from ..laplace_grid import GridSpec, Partition, assemble_monolithic, build_grid
from .base_solver import LaplaceSolver, SolveReport, relative_residual

logger = getLogger(__name__)


class MonolithicSolver(LaplaceSolver):
    """
    Direct banded LU solve of the whole five-point system, the ``T(1, n)`` path.
    """

    def __init__(self, grid: GridSpec, **kwargs):
        LaplaceSolver.__init__(self, grid, workers=1, **kwargs)
        self.matrix: Optional[BandedMatrix] = None
        self.p_logical = 1

    def setup_solver(self) -> None:
        if self.matrix is None:
            self.matrix = assemble_monolithic(self.grid)

    def apply(self, u: np.ndarray) -> np.ndarray:
        self.setup_solver()
        return self.matrix.dot(u)

    def solve(self, f: np.ndarray) -> Tuple[np.ndarray, SolveReport]:
        f = self.check_load(f)
        self.setup_solver()

        with Stopwatch() as total:
            with Stopwatch() as factor_watch:
                lu = factor(self.matrix)
            with Stopwatch() as solve_watch:
                u = solve(lu, f)

        report = SolveReport(final_relative_residual=relative_residual(self.apply, u, f),
                             factor_seconds=factor_watch.seconds, iterate_seconds=solve_watch.seconds,
                             total_seconds=total.seconds, p_logical=self.p_logical, workers=1,
                             n=self.n, local_n=self.n, flop_count=lu.flop_count)
        logger.info(f"Direct solve of {self.n} unknowns in {total.seconds:.4f} s")

        return u, report


class LocalDirichletSolver(MonolithicSolver):
    """
    Sequential solve of one subdomain's Dirichlet problem, the ``T(1, n/p)`` path.

    The local problem is the five-point problem on the block of nodes the
    subdomain owns, a grid of its own with about ``n / p`` unknowns.
    """

    def __init__(self, grid: GridSpec, partition: Partition, subdomain: int, **kwargs):
        partition.check_subdomain(subdomain)
        mx, my = partition.local_shape(subdomain)
        if mx == 0 or my == 0:
            raise InvalidPartitionError(f"Subdomain {subdomain} owns no node.")
        MonolithicSolver.__init__(self, build_grid(mx, my, grid.h), **kwargs)
        self.partition = partition
        self.subdomain = subdomain
        self.p_logical = partition.p


def solve_monolithic(grid: GridSpec, f: np.ndarray) -> Tuple[np.ndarray, SolveReport]:
    """
    Solve the five-point system of ``grid`` directly by banded LU.

    Parameters
    ----------
    grid : GridSpec
    f : np.ndarray
        Load vector of length ``grid.n``.

    Returns
    -------
    u : np.ndarray
        The solution.
    report : SolveReport
        Factor and triangular-solve timings; the total is ``T(1, n)``.
    """
    return MonolithicSolver(grid).solve(f)


def solve_single_local(grid: GridSpec, partition: Partition, subdomain: int,
                       f_local: Optional[np.ndarray] = None,
                       seed: int = DEFAULT_SEED) -> Tuple[np.ndarray, SolveReport]:
    """
    Solve the Dirichlet problem of one subdomain alone; its time is ``T(1, n/p)``.

    Parameters
    ----------
    grid : GridSpec
    partition : Partition
    subdomain : int
        Subdomain id.
    f_local : np.ndarray, optional
        Load on the nodes owned by the subdomain, lexicographic; a fixed-seed
        random load when omitted.
    seed : int
        Seed of the random load.

    Returns
    -------
    u : np.ndarray
        Solution on the owned nodes.
    report : SolveReport
        Timings of the local solve; ``n`` and ``local_n`` are the owned node count
        and ``p_logical`` is the subdomain count of ``partition``.

    Raises
    ------
    InvalidPartitionError
        If the subdomain id is unknown or owns no node.
    """
    solver = LocalDirichletSolver(grid, partition, subdomain)
    if f_local is None:
        f_local = random_load(solver.n, seed)
    return solver.solve(f_local)
