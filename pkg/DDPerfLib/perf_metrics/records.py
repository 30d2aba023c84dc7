import math
import numbers
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ..helper.exceptions import InvalidTimingError, MissingGoalError

GoalKey = Tuple[int, int]


class TimingKind(str, Enum):
    """Measurement protocol of a timing."""
    MONOLITHIC = "monolithic"
    PARALLEL = "parallel"
    SINGLE_LOCAL = "single-local"


class GoalKind(str, Enum):
    STANDARD = "standard"
    DIVIDE_AND_CONQUER = "divide-and-conquer"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class TimingRecord:
    """
    One aggregated wall-clock measurement.

    Attributes
    ----------
    p : int
        Logical processor (subdomain) count.
    n : int
        Problem size in degrees of freedom.
    seconds : float
        Wall-clock duration.
    kind : TimingKind
        ``monolithic`` for T(1, n), ``parallel`` for T(p, n), ``single-local`` for T(1, n/p).
    workers : int
        Physical worker count.
    repetitions : int
        Runs the duration was aggregated over.
    local_n : int, optional
        Size of the local problem actually solved, defaults to ``n``.
    """
    p: int
    n: int
    seconds: float
    kind: TimingKind
    workers: int = 1
    repetitions: int = 1
    local_n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TimingKind(self.kind))
        if self.local_n is None:
            object.__setattr__(self, "local_n", self.n)
        if not (isinstance(self.seconds, numbers.Real) and math.isfinite(self.seconds) and self.seconds > 0):
            raise InvalidTimingError(f"Timing should be a positive number of seconds, got {self.seconds}.")
        if self.p < 1 or self.n < 1:
            raise InvalidTimingError(f"p and n should be at least 1, got p={self.p}, n={self.n}.")
        if self.local_n < 0:
            raise InvalidTimingError(f"local_n should be non-negative, got {self.local_n}.")
        if self.workers < 1 or self.repetitions < 1:
            raise InvalidTimingError("workers and repetitions should be at least 1.")
        if self.kind is TimingKind.MONOLITHIC and self.p != 1:
            raise InvalidTimingError(f"A monolithic timing has p = 1, got p = {self.p}.")

    @property
    def key(self) -> GoalKey:
        return self.p, self.n


@dataclass(frozen=True)
class GoalSpec:
    """
    A performance goal per ``(p, n)``, given as speedups, execution times or both.

    When only one side is stored the other follows from ``T_G * S_G = T(1, n)``
    (see :func:`dualize_goal`).

    Attributes
    ----------
    name : str
        Label used in reports.
    kind : GoalKind
    speedup : dict
        ``{(p, n): S_G}``.
    time : dict
        ``{(p, n): T_G}`` in seconds.
    """
    name: str
    kind: GoalKind
    speedup: Dict[GoalKey, float] = field(default_factory=dict)
    time: Dict[GoalKey, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", GoalKind(self.kind))
        for side, values in (("speedup", self.speedup), ("time", self.time)):
            for key, value in values.items():
                if not value > 0:
                    raise ValueError(f"{side} goal at {key} should be positive, got {value}.")

    def speedup_goal(self, p: int, n: int) -> float:
        try:
            return self.speedup[(p, n)]
        except KeyError:
            raise MissingGoalError(f"Goal '{self.name}' has no speedup entry for p={p}, n={n}.") from None

    def time_goal(self, p: int, n: int) -> float:
        try:
            return self.time[(p, n)]
        except KeyError:
            raise MissingGoalError(f"Goal '{self.name}' has no time entry for p={p}, n={n}.") from None
