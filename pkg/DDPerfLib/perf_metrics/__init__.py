from .records import TimingKind, GoalKind, TimingRecord, GoalSpec
from .efficiency import speedup, standard_efficiency, speedup_multiple_of_p, relative_efficiency, \
    relative_efficiency_from_time, exceeds_goal, dc_speedup_goal, dc_efficiency, standard_bound_on_dc_efficiency, \
    standard_relative_efficiency_bound, standard_time_bound, p_squared_deviation, p_squared_efficiency, goal_ratio
from .goals import dualize_goal, standard_goal, dc_goal, absolute_goal, p_squared_goal, DUALITY_TOLERANCE
from .complexity import fit_complexity
