from typing import Callable, Optional, Tuple

import numpy as np

from ..helper._helper import getLogger
from ..helper.utils import Stopwatch
from ..laplace_grid import GridSpec, Partition, classify_nodes
from .base_solver import LaplaceSolver, SolveReport, relative_residual
from .conjugate_gradient import conjugate_gradient
from .derived_system import (DerivedSystem, back_substitute, condense_load, decompose, factor_internals,
                             schur_apply)
from .worker_pool import WorkerPool

logger = getLogger(__name__)


def default_max_iterations(interface_dimension: int) -> int:
    return int(10 * np.sqrt(interface_dimension)) + 100


class SchurComplementSolver(LaplaceSolver):
    """
    Non-overlapping domain decomposition solver.

    Internal unknowns are eliminated subdomain by subdomain with banded LU,
    the assembled interface Schur complement is solved by Jacobi-preconditioned
    conjugate gradients, and the internal unknowns are recovered by
    back-substitution. Factorisation, condensation, iteration and
    back-substitution are timed; decomposition is done once in
    :meth:`setup_solver` and is not.

    Parameters
    ----------
    grid : GridSpec
    partition : Partition
    tol : float
        Relative residual tolerance of the interface iteration, in ``(0, 1)``.
    workers : int
        Concurrent workers, 0 meaning every available core.
    max_iterations : int, optional
        CG budget, ``10 * sqrt(interface dimension) + 100`` by default.
    system : DerivedSystem, optional
        A decomposition already built for ``grid`` and ``partition``.
    """

    def __init__(self, grid: GridSpec, partition: Partition, tol: float = 1e-8, workers: int = 1,
                 max_iterations: Optional[int] = None, system: Optional[DerivedSystem] = None, **kwargs):
        LaplaceSolver.__init__(self, grid, workers=workers, **kwargs)
        if not 0.0 < tol < 1.0:
            raise ValueError(f"`tol` should lie in (0, 1), got {tol}.")
        self.partition = partition
        self.tol = tol
        self.max_iterations = max_iterations
        self.system = system

    def setup_solver(self) -> None:
        if self.system is None:
            self.system = decompose(self.grid, self.partition, classify_nodes(self.grid, self.partition))

    def apply(self, u: np.ndarray) -> np.ndarray:
        self.setup_solver()
        return self.system.apply(u)

    def solve(self, f: np.ndarray, callback: Optional[Callable[[np.ndarray], None]] = None) \
            -> Tuple[np.ndarray, SolveReport]:
        f = self.check_load(f)
        self.setup_solver()
        ds = self.system
        max_iterations = self.max_iterations or default_max_iterations(ds.interface_dimension)

        with WorkerPool(self.workers) as pool:
            with Stopwatch() as total:
                with Stopwatch() as factor_watch:
                    factored = factor_internals(ds, pool)
                with Stopwatch() as iterate_watch:
                    g = condense_load(factored, f, pool)
                    u_interface, history = conjugate_gradient(
                        lambda x: schur_apply(factored, x, pool), g,
                        diag_precond=factored.interface_diagonal, tol=self.tol,
                        max_iterations=max_iterations, reference_norm=float(np.linalg.norm(f)),
                        callback=callback)
                    u = back_substitute(factored, f, u_interface, pool)

        report = SolveReport(iterations=len(history) - 1,
                             final_relative_residual=relative_residual(ds.apply, u, f),
                             factor_seconds=factor_watch.seconds, iterate_seconds=iterate_watch.seconds,
                             total_seconds=total.seconds, p_logical=ds.p, workers=self.workers, n=self.n,
                             local_n=max(local.size for local in ds.local_systems),
                             flop_count=factored.flop_count, residual_history=history)
        logger.info(f"Schur solve with p={ds.p}, w={self.workers}: {report.iterations} iterations, "
                    f"{total.seconds:.4f} s")

        return u, report


def solve_dd(ds: DerivedSystem, f: np.ndarray, tol: float = 1e-8, workers: int = 1,
             max_iterations: Optional[int] = None,
             callback: Optional[Callable[[np.ndarray], None]] = None) -> Tuple[np.ndarray, SolveReport]:
    """
    Solve the five-point system through its decomposition.

    Parameters
    ----------
    ds : DerivedSystem
        Output of :func:`decompose`.
    f : np.ndarray
        Load vector of length ``n``.
    tol : float
        Relative residual tolerance in ``(0, 1)``, 1e-8 by default.
    workers : int
        Concurrent workers; results do not depend on it.
    max_iterations : int, optional
        CG budget.
    callback : callable, optional
        Called with the interface iterate after every CG iteration.

    Returns
    -------
    u : np.ndarray
        The solution.
    report : SolveReport
        Timings, iteration count and residual; the total is ``T(p, n)``.

    Raises
    ------
    NonConvergenceError
        If CG exhausts its budget; carries the residual history.
    """
    solver = SchurComplementSolver(ds.grid, ds.partition, tol=tol, workers=workers,
                                   max_iterations=max_iterations, system=ds)
    return solver.solve(f, callback=callback)
