import math
import numbers
from typing import Optional, Union

from ..helper.exceptions import InvalidTimingError
from .records import GoalSpec


def _check_time(name: str, value: float) -> None:
    if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
        raise InvalidTimingError(f"`{name}` should be a positive duration, got {value}.")


def _check_count(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"`{name}` should be at least 1, got {value}.")


def _check_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"`{name}` should be positive, got {value}.")


def speedup(t1: float, tp: float) -> float:
    """
    Speedup ``S(p, n) = T(1, n) / T(p, n)``.

    Raises
    ------
    InvalidTimingError
        If either time is not positive.
    """
    _check_time("t1", t1)
    _check_time("tp", tp)

    return t1 / tp


def standard_efficiency(s: float, p: int) -> float:
    """
    Standard efficiency ``E_S = S / p``, as a fraction.

    Values above 1 are superlinear.
    """
    _check_positive("s", s)
    _check_count("p", p)

    return s / p


def speedup_multiple_of_p(s: float, p: int) -> float:
    """The speedup expressed as a multiple of ``p``."""
    _check_count("p", p)

    return s / p


def relative_efficiency(s: float, goal: Union[float, GoalSpec], p: Optional[int] = None,
                        n: Optional[int] = None) -> float:
    """
    Efficiency relative to a speedup goal, ``E_G = S / S_G``.

    Parameters
    ----------
    s : float
        Measured speedup.
    goal : float or GoalSpec
        The goal speedup, or a goal looked up at ``(p, n)``.
    p, n : int, optional
        Key of the goal entry when ``goal`` is a GoalSpec.

    Returns
    -------
    float
        ``S / S_G``; above 1 when the goal was exceeded.

    Raises
    ------
    MissingGoalError
        If the goal has no speedup entry for ``(p, n)``.
    """
    if isinstance(goal, GoalSpec):
        goal = goal.speedup_goal(p, n)
    _check_positive("s", s)
    _check_positive("goal", goal)

    return s / goal


def relative_efficiency_from_time(t_goal: float, t: float) -> float:
    """Efficiency relative to an execution-time goal, ``E_G = T_G / T``."""
    _check_time("t_goal", t_goal)
    _check_time("t", t)

    return t_goal / t


def exceeds_goal(s: float, goal: Union[float, GoalSpec], p: Optional[int] = None, n: Optional[int] = None) -> bool:
    """Whether a measured speedup is above its goal (relative efficiency above 1)."""
    return relative_efficiency(s, goal, p, n) > 1.0


def dc_speedup_goal(t1_n: float, t1_n_over_p: float) -> float:
    """
    Divide-and-conquer speedup goal ``S_DC = T(1, n) / T(1, n/p)``.

    ``T(1, n/p)`` is the sequential time of one local problem; for a solver of
    quadratic complexity ``S_DC`` is close to ``p ** 2``.
    """
    _check_time("t1_n", t1_n)
    _check_time("t1_n_over_p", t1_n_over_p)

    return t1_n / t1_n_over_p


def dc_efficiency(s: float, s_dc: float) -> float:
    """DC-efficiency ``E_DC = S / S_DC``, equal to ``T_DC / T(p, n)``."""
    _check_positive("s", s)
    _check_positive("s_dc", s_dc)

    return s / s_dc


def standard_bound_on_dc_efficiency(p: int, s_dc: float) -> float:
    """
    Ceiling ``p / S_DC`` on the DC-efficiency of any software whose speedup never exceeds ``p``.
    """
    _check_positive("s_dc", s_dc)

    return p / s_dc


def standard_relative_efficiency_bound(p: int, s_goal: float) -> float:
    """Ceiling ``p / S_G`` on the efficiency of standard software relative to any speedup goal."""
    _check_positive("s_goal", s_goal)

    return p / s_goal


def standard_time_bound(t1: float, p: int) -> float:
    """Shortest time ``T(1, n) / p`` reachable by software whose speedup never exceeds ``p``."""
    _check_time("t1", t1)
    _check_count("p", p)

    return t1 / p


def p_squared_deviation(p: int, s_dc: float) -> float:
    """``(p**2 - S_DC) / p**2``; negative when the DC goal beats ``p**2``."""
    _check_count("p", p)
    _check_positive("s_dc", s_dc)

    return (p * p - s_dc) / (p * p)


def p_squared_efficiency(s: float, p: int) -> float:
    """DC-efficiency with ``S_DC`` approximated by ``p**2``."""
    _check_count("p", p)

    return s / (p * p)


def goal_ratio(s_dc: float, p: int) -> float:
    """How many times the DC speedup goal exceeds the standard goal ``p``."""
    _check_count("p", p)

    return s_dc / p
