from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

from ..helper._helper import getLogger
from ..helper.exceptions import ConfigError
from ..helper.utils import DEFAULT_SEED
from .input_data_checker import PROTOCOLS, CheckExperimentConfig

logger = getLogger(__name__)


def parse_partitions(text: str) -> Tuple[Tuple[int, int], ...]:
    """Parse a comma list like ``2x2,4x4`` into ``((2, 2), (4, 4))``."""
    partitions = []
    for item in text.split(","):
        item = item.strip().lower()
        if not item:
            continue
        try:
            px, py = item.split("x")
            partitions.append((int(px), int(py)))
        except ValueError:
            raise ConfigError(f"Partition {item!r} should read like 4x4.") from None
    return tuple(partitions)


def parse_names(text: str) -> Tuple[str, ...]:
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"Expected an integer, got {text!r}.") from None


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"Expected a number, got {text!r}.") from None


# Config-file keys, identical to the command-line flags, and their parsers
PARSERS: Dict[str, Callable[[str], Any]] = {
    "nx": _parse_int,
    "ny": _parse_int,
    "partitions": parse_partitions,
    "reps": _parse_int,
    "tol": _parse_float,
    "workers": _parse_int,
    "protocols": parse_names,
    "out": str,
    "format": parse_names,
    "seed": _parse_int,
    "view": str,
    "verbose": _parse_int,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Settings of a strong-scaling timing experiment.

    Attributes
    ----------
    nx, ny : int
        Interior nodes along x and y.
    partitions : tuple of (int, int)
        Subdomain layouts ``(px, py)`` to measure.
    workers : int
        Concurrent workers of the parallel protocol, 0 meaning every core.
    reps : int
        Repetitions per cell; the minimum is reported.
    tol : float
        Relative residual tolerance of the interface iteration.
    protocols : tuple of str
        Subset of ``monolithic``, ``parallel`` and ``single-local``.
    out : str
        Output directory.
    formats : tuple of str
        Subset of ``table``, ``csv`` and ``json``.
    seed : int
        Seed of the random load vector.
    view : str
        Report view emitted.
    verbose : int
        Console log verbosity.
    """
    nx: int = 64
    ny: int = 64
    partitions: Tuple[Tuple[int, int], ...] = ((2, 2), (4, 4))
    workers: int = 1
    reps: int = 3
    tol: float = 1e-8
    protocols: Tuple[str, ...] = PROTOCOLS
    out: str = "results"
    formats: Tuple[str, ...] = ("table",)
    seed: int = DEFAULT_SEED
    view: str = "full"
    verbose: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Snapshot with the config-file keys, stored next to the timings."""
        values = asdict(self)
        values["format"] = list(values.pop("formats"))
        values["partitions"] = ",".join(f"{px}x{py}" for px, py in self.partitions)
        values["protocols"] = list(self.protocols)
        return values


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a flat ``key = value`` experiment file.

    Blank lines and ``#`` comments are ignored; keys are the command-line flags
    without dashes.

    Raises
    ------
    ConfigError
        On a malformed line or an unknown key, naming the line.
    """
    values = {}
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ConfigError(f"{path}:{number}: expected `key = value`, got {line!r}.")
            if key not in PARSERS:
                raise ConfigError(f"{path}:{number}: unknown key {key!r}.")
            try:
                values[key] = PARSERS[key](value.strip())
            except ConfigError as error:
                raise ConfigError(f"{path}:{number}: {error}") from None

    return values


class ExperimentConfigProcessor(CheckExperimentConfig):

    def __init__(self, config_file: Optional[Union[str, Path]] = None,
                 overrides: Optional[Dict[str, Any]] = None) -> None:
        """
        Constructs all the necessary attributes for the ExperimentConfigProcessor object.

        Parameters
        ----------
        config_file : str or Path, optional
            Path of a ``key = value`` file.
        overrides : dict, optional
            Values given on the command line; ``None`` entries are ignored.
        """
        self.config_file = config_file
        self.overrides = overrides or {}
        super().__init__(self._merge())

    def _merge(self) -> Dict[str, Any]:
        values = ExperimentConfig().to_dict()
        values["partitions"] = ExperimentConfig().partitions
        if self.config_file is not None:
            values.update(read_config_file(self.config_file))
        for key, value in self.overrides.items():
            if value is None:
                continue
            if key not in PARSERS:
                raise ConfigError(f"Unknown setting {key!r}.")
            values[key] = PARSERS[key](value) if isinstance(value, str) and key not in ("out", "view") else value
        return values

    def process_config(self) -> ExperimentConfig:
        self.check_input_data()  # check the settings are valid
        values = dict(self.values)
        values["formats"] = tuple(values.pop("format"))
        values["partitions"] = tuple(tuple(pair) for pair in values["partitions"])
        values["protocols"] = tuple(values["protocols"])
        config = ExperimentConfig(**values)
        logger.debug(f"Experiment configuration: {config}")

        return config
