from .worker_pool import WorkerPool
from .derived_system import DerivedSystem, LocalSystem, decompose, factor_internals, schur_apply, \
    condense_load, back_substitute
from .conjugate_gradient import conjugate_gradient
from .base_solver import LaplaceSolver, SolveReport
from .direct_solver import MonolithicSolver, LocalDirichletSolver, solve_monolithic, solve_single_local
from .schur_solver import SchurComplementSolver, solve_dd, default_max_iterations
