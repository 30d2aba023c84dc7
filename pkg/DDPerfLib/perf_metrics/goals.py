from typing import Dict, Iterable, Mapping, Union

from ..helper.exceptions import InconsistentGoalError
from .efficiency import _check_time
from .records import GoalKey, GoalKind, GoalSpec

# Relative tolerance on T_G * S_G = T(1, n) when both sides are given
DUALITY_TOLERANCE = 1e-9


def _sequential_time(t1: Union[float, Mapping[int, float]], n: int) -> float:
    value = t1[n] if isinstance(t1, Mapping) else t1
    _check_time("t1", value)
    return value


def dualize_goal(t1: Union[float, Mapping[int, float]], goal: GoalSpec) -> GoalSpec:
    """
    Fill the missing side of a goal from ``T_G(p, n) * S_G(p, n) = T(1, n)``.

    Parameters
    ----------
    t1 : float or mapping
        Sequential time ``T(1, n)``, or a mapping from ``n`` to it.
    goal : GoalSpec
        Goal with speedups, times or both.

    Returns
    -------
    GoalSpec
        The same goal with both sides populated for every key.

    Raises
    ------
    InconsistentGoalError
        If an entry has both sides and their product is off ``T(1, n)`` by more than 1e-9 relative.
    """
    speedups: Dict[GoalKey, float] = {}
    times: Dict[GoalKey, float] = {}
    for key in sorted(set(goal.speedup) | set(goal.time)):
        sequential = _sequential_time(t1, key[1])
        s_goal, t_goal = goal.speedup.get(key), goal.time.get(key)
        if s_goal is not None and t_goal is not None:
            if abs(s_goal * t_goal - sequential) > DUALITY_TOLERANCE * sequential:
                raise InconsistentGoalError(f"Goal '{goal.name}' at {key}: S_G * T_G = {s_goal * t_goal} "
                                            f"differs from T(1, n) = {sequential}.")
        elif s_goal is not None:
            t_goal = sequential / s_goal
        else:
            s_goal = sequential / t_goal
        speedups[key], times[key] = s_goal, t_goal

    return GoalSpec(goal.name, goal.kind, speedups, times)


def standard_goal(p_values: Iterable[int], n: int) -> GoalSpec:
    """The standard goal ``S_s = p``."""
    return GoalSpec("standard", GoalKind.STANDARD, {(p, n): float(p) for p in p_values})


def dc_goal(t1: float, local_times: Mapping[GoalKey, float]) -> GoalSpec:
    """
    Divide-and-conquer goal: ``T_DC(p, n) = T(1, n/p)`` and ``S_DC = T(1, n) / T_DC``.

    Parameters
    ----------
    t1 : float
        Sequential time of the whole problem.
    local_times : mapping
        ``{(p, n): T(1, n/p)}``.
    """
    for value in local_times.values():
        _check_time("local time", value)

    return dualize_goal(t1, GoalSpec("divide-and-conquer", GoalKind.DIVIDE_AND_CONQUER, time=dict(local_times)))


def absolute_goal(values: Mapping[GoalKey, float], name: str = "absolute") -> GoalSpec:
    """A user-supplied speedup goal ``S_A``; no default values exist."""
    return GoalSpec(name, GoalKind.ABSOLUTE, dict(values))


def p_squared_goal(p_values: Iterable[int], n: int) -> GoalSpec:
    """The DC goal approximated by ``p ** 2``, exact for a sequential solver of quadratic complexity."""
    return GoalSpec("p-squared", GoalKind.DIVIDE_AND_CONQUER, {(p, n): float(p * p) for p in p_values})
