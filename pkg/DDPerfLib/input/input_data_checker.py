from typing import Any, Dict

from ..helper.exceptions import ConfigError

PROTOCOLS = ("monolithic", "parallel", "single-local")
FORMATS = ("table", "csv", "json")
VIEWS = ("speedup", "efficiency", "dc_goal", "dc_framework", "goal_comparison", "standard_bounds",
         "dc_comparison", "full")


class CheckExperimentConfig:
    """
    A class used to check the settings of a timing experiment.

    ...

    Attributes
    ----------
    values : dict
        Experiment settings keyed like the command-line flags.

    Methods
    -------
    check_grid():
        Checks the grid dimensions are positive integers.
    check_partitions():
        Checks every partition is a pair of counts valid for the grid.
    check_solver_settings():
        Checks repetitions, tolerance, workers and seed.
    check_outputs():
        Checks protocols, formats and report view.
    check_input_data():
        Runs every check.
    """

    def __init__(self, values: Dict[str, Any]):
        self.values = values

    @staticmethod
    def _is_int(value) -> bool:
        return isinstance(value, int) and not isinstance(value, bool)

    def check_grid(self):
        for key in ("nx", "ny"):
            if not self._is_int(self.values[key]) or self.values[key] < 1:
                raise ConfigError(f"`{key}` should be a positive integer, got {self.values[key]!r}.")

    def check_partitions(self):
        partitions = self.values["partitions"]
        if len(partitions) == 0:
            raise ConfigError("At least one partition is needed.")
        # p -> layout; T(p, n) and T(1, n/p) must come from one partition
        seen = {}
        for pair in partitions:
            if len(pair) != 2 or not all(self._is_int(count) for count in pair):
                raise ConfigError(f"Partition {pair!r} should be a pair of integers.")
            px, py = pair
            if not (1 <= px <= self.values["nx"] + 1 and 1 <= py <= self.values["ny"] + 1):
                raise ConfigError(f"Partition {px}x{py} is not valid for a "
                                  f"{self.values['nx']}x{self.values['ny']} grid.")
            if px * py in seen:
                raise ConfigError(f"Partitions {seen[px * py]} and {px}x{py} both give p = {px * py}; "
                                  f"keep one layout per subdomain count.")
            seen[px * py] = f"{px}x{py}"

    def check_solver_settings(self):
        if not self._is_int(self.values["reps"]) or self.values["reps"] < 1:
            raise ConfigError(f"`reps` should be at least 1, got {self.values['reps']!r}.")
        if not 0.0 < self.values["tol"] < 1.0:
            raise ConfigError(f"`tol` should lie in (0, 1), got {self.values['tol']!r}.")
        if not self._is_int(self.values["workers"]) or self.values["workers"] < 0:
            raise ConfigError(f"`workers` should be a non-negative integer, got {self.values['workers']!r}.")
        if not self._is_int(self.values["seed"]) or self.values["seed"] < 0:
            raise ConfigError(f"`seed` should be a non-negative integer, got {self.values['seed']!r}.")

    def check_outputs(self):
        protocols = self.values["protocols"]
        if len(protocols) == 0:
            raise ConfigError("At least one protocol is needed.")
        for name, allowed in (("protocols", PROTOCOLS), ("format", FORMATS)):
            unknown = set(self.values[name]) - set(allowed)
            if unknown:
                raise ConfigError(f"Unknown {name} {sorted(unknown)}; expected a subset of {list(allowed)}.")
        if self.values["view"] not in VIEWS:
            raise ConfigError(f"Unknown report view {self.values['view']!r}; expected one of {list(VIEWS)}.")

    def check_input_data(self):
        """
        Check all the experiment settings
        """
        self.check_grid()
        self.check_partitions()
        self.check_solver_settings()
        self.check_outputs()
