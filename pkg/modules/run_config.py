# modules/run_config.py

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from .config_loader import DEFAULTS, Tolerances
from .errors import InvalidParameterError


class Command(Enum):
    ENUMERATE = "enumerate"
    BUILD = "build"
    SPECTRUM = "spectrum"
    SWEEP = "sweep"
    JORDAN = "jordan"
    METRIC = "metric"
    PROBE = "probe"
    OEIS_CHECK = "oeis-check"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


@dataclass
class RunConfig:
    """
    One fully resolved command-line invocation.
    Flags left unset fall back to the loaded settings (YAML + environment).
    """

    command: Command
    n: Optional[int] = None
    index: Optional[int] = None
    blocks: Optional[str] = None
    t: Optional[float] = None
    t_grid: Optional[List[float]] = None
    shift: float = 0.0
    tolerances: Tolerances = field(default_factory=Tolerances)
    weights: Optional[List[float]] = None
    epsilons: Optional[List[float]] = None
    seed: int = DEFAULTS["seed"]
    max_n: int = 17
    output_format: OutputFormat = OutputFormat.JSON
    output: Optional[str] = None
    verbose: bool = False
    max_workers: int = DEFAULTS["max_workers"]

    def __post_init__(self):
        if isinstance(self.command, str):
            self.command = _parse_enum(Command, self.command, "command")
        if isinstance(self.output_format, str):
            self.output_format = _parse_enum(OutputFormat, self.output_format, "format")
        if self.index is not None and self.blocks is not None:
            raise InvalidParameterError("Give either --index or --blocks, not both.")

    @classmethod
    def from_args(cls, args, settings: dict) -> "RunConfig":
        """
        Merge parsed arguments over the loaded settings.

        :param args: argparse namespace; absent or None attributes mean "not given".
        :param settings: Dictionary from load_config.
        """

        def pick(name, key=None):
            value = getattr(args, name, None)
            return settings.get(key or name, DEFAULTS.get(key or name)) if value is None else value

        merged = dict(settings)
        for name in ("tol_rank", "cluster_gap", "reality_tol"):
            if getattr(args, name, None) is not None:
                merged[name] = getattr(args, name)
        if getattr(args, "dps", None) is not None:
            merged["extended_dps"] = args.dps

        return cls(
            command=args.command,
            n=getattr(args, "n", None),
            index=getattr(args, "index", None),
            blocks=getattr(args, "blocks", None),
            t=getattr(args, "t", None),
            t_grid=pick("t_grid"),
            shift=float(pick("shift")),
            tolerances=Tolerances.from_config(merged),
            weights=getattr(args, "weights", None),
            epsilons=pick("epsilons", "probe_epsilons"),
            seed=int(pick("seed")),
            max_n=17 if getattr(args, "max_n", None) is None else args.max_n,
            output_format=pick("format", "default_format"),
            output=getattr(args, "output", None),
            verbose=bool(getattr(args, "verbose", False) or settings.get("verbose_mode", False)),
            max_workers=int(settings.get("max_workers", DEFAULTS["max_workers"])),
        )


def _parse_enum(enum_class, value: str, what: str):
    try:
        return enum_class(value)
    except ValueError:
        options = ", ".join(member.value for member in enum_class)
        raise InvalidParameterError(f"Unknown {what} '{value}'. Options: {options}.")
