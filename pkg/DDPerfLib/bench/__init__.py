from .experiment import ResultSet, run_experiment, RAW_COLUMNS, RUN_COLUMNS
from .report import EfficiencyReport, derive_report, emit, format_value, VIEWS, COLUMNS
from .results_io import save_results, load_results
from .reference import reference_result_set, printed_goal_discrepancies
