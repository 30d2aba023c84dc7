from typing import List, Optional, Sequence


class DDPerfError(Exception):
    """Base class of every error raised by DDPerfLib."""


class InvalidGridError(DDPerfError, ValueError):
    pass


class InvalidPartitionError(DDPerfError, ValueError):
    pass


class DimensionMismatchError(DDPerfError, ValueError):
    pass


class SingularMatrixError(DDPerfError, ValueError):
    """
    Raised when a band factorisation meets a pivot below the singularity threshold.

    Attributes
    ----------
    index : int
        Row of the offending pivot.
    pivot : float
        Value of the pivot.
    subdomain : int or None
        Subdomain whose internal block failed, when raised from a decomposed system.
    """

    def __init__(self, index: int, pivot: float, subdomain: Optional[int] = None):
        self.index = index
        self.pivot = pivot
        self.subdomain = subdomain
        where = f" in subdomain {subdomain}" if subdomain is not None else ""
        super().__init__(f"Matrix is not SPD or is singular{where}: pivot {pivot:.3e} at index {index}.")

    def __reduce__(self):
        return self.__class__, (self.index, self.pivot, self.subdomain)


class NonConvergenceError(DDPerfError, ValueError):
    """
    Raised when conjugate gradients exhaust their iteration budget.

    Attributes
    ----------
    iterations : int
        Iterations performed.
    residual_history : list of float
        Relative residual after every iteration, starting with the initial one.
    """

    def __init__(self, iterations: int, residual_history: Sequence[float]):
        self.iterations = iterations
        self.residual_history: List[float] = list(residual_history)
        last = self.residual_history[-1] if self.residual_history else float("nan")
        super().__init__(f"Conjugate gradients did not converge in {iterations} iterations "
                         f"(relative residual {last:.3e}).")


class InvalidTimingError(DDPerfError, ValueError):
    pass


class InconsistentGoalError(DDPerfError, ValueError):
    pass


class MissingGoalError(DDPerfError, KeyError):
    pass


class InsufficientDataError(DDPerfError, ValueError):
    pass


class SchemaError(DDPerfError, ValueError):
    """
    Raised when a timings file does not follow the CSV/JSON schema.

    Attributes
    ----------
    line : int
        1-based line number of the offending row (1 is the header).
    """

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MissingRecordError(DDPerfError, ValueError):
    pass


class EmptyReportError(DDPerfError, ValueError):
    pass


class UnwritableDestinationError(DDPerfError, OSError):
    pass


class ConfigError(DDPerfError, ValueError):
    pass
