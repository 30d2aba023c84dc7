from .version import __version__
from .helper import _helper, utils
from .helper.exceptions import DDPerfError
from .laplace_grid import GridSpec, Partition, NodeClassification, build_grid, assemble_monolithic, \
    make_partition, classify_nodes
from .band_lu import BandedMatrix, BandedLU, factor, solve, flop_model
from .dd_solver import DerivedSystem, SolveReport, decompose, factor_internals, schur_apply, solve_dd, \
    solve_monolithic, solve_single_local
from .perf_metrics import TimingRecord, GoalSpec, speedup, standard_efficiency, relative_efficiency, \
    relative_efficiency_from_time, dualize_goal, dc_speedup_goal, dc_efficiency, standard_bound_on_dc_efficiency, \
    p_squared_deviation, speedup_multiple_of_p, fit_complexity
from .input import ExperimentConfig, ExperimentConfigProcessor, CheckExperimentConfig
from .bench import ResultSet, EfficiencyReport, run_experiment, derive_report, emit, save_results, load_results
