# modules/config_loader.py

import logging
import os
from dataclasses import dataclass
from typing import Optional

import yaml

from .errors import ValidationError

DEFAULT_CONFIG_PATH = "config/epn_parameters.yaml"

# Environment variables overriding the tolerance keys of the YAML file.
ENVIRONMENT_OVERRIDES = {
    "EPN_TOL_RANK": ("tol_rank", float),
    "EPN_CLUSTER_GAP": ("cluster_gap", float),
    "EPN_REALITY_TOL": ("reality_tol", float),
    "EPN_EXTENDED_DPS": ("extended_dps", int),
    "EPN_EP_DPS": ("ep_dps", int),
}

DEFAULTS = {
    "verbose_mode": False,
    "log_file": None,
    "default_format": "json",
    "shift": 0.0,
    "seed": 2024,
    "tol_rank": None,
    "cluster_gap": 1.0e-6,
    "reality_tol": 1.0e-10,
    "extended_dps": 0,
    "ep_window": 0.02,
    "ep_dps": 100,
    "max_workers": 4,
    "t_grid": [0.0, 0.25, 0.5, 0.75, 0.9, 0.99],
    "probe_epsilons": [1.0e-8, 1.0e-7, 1.0e-6, 1.0e-5, 1.0e-4],
}

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical thresholds shared by the analysis operations.

    tol_rank is relative to the largest singular value; None selects N * 2**-40.
    cluster_gap and reality_tol are relative to (1 + ||H||) and max(||H||, 1) respectively.
    With extended_dps at 0, assembled matrices with |t - 1| <= ep_window still get
    at least ep_dps digits; ep_dps = 0 keeps them in double precision.
    """

    tol_rank: Optional[float] = None
    cluster_gap: float = 1.0e-6
    reality_tol: float = 1.0e-10
    extended_dps: int = 0
    ep_window: float = 0.02
    ep_dps: int = 100

    def rank_threshold(self, n: int) -> float:
        return self.tol_rank if self.tol_rank is not None else n * 2.0 ** -40

    def near_ep_dps(self, t: Optional[float], n: int) -> int:
        """Digits for a matrix at coupling t, 0 when double precision is enough."""
        if t is None or not self.ep_dps or abs(t - 1.0) > self.ep_window:
            return 0
        # an order-n EP splits by about 10**(-dps/n); keep that below 1e-8
        return max(self.ep_dps, 8 * n)

    @classmethod
    def from_config(cls, config: dict) -> "Tolerances":
        return cls(
            tol_rank=config.get("tol_rank", DEFAULTS["tol_rank"]),
            cluster_gap=float(config.get("cluster_gap", DEFAULTS["cluster_gap"])),
            reality_tol=float(config.get("reality_tol", DEFAULTS["reality_tol"])),
            extended_dps=int(config.get("extended_dps", DEFAULTS["extended_dps"]) or 0),
            ep_window=float(config.get("ep_window", DEFAULTS["ep_window"])),
            ep_dps=int(config.get("ep_dps", DEFAULTS["ep_dps"]) or 0),
        )


def load_config(path: Optional[str] = None, environ: Optional[dict] = None) -> dict:
    """
    Load the YAML parameter file, then apply environment overrides.

    :param path: YAML file; None loads DEFAULT_CONFIG_PATH when it exists, else the built-in defaults.
    :param environ: Mapping used instead of os.environ (tests).
    :return: Flat configuration dictionary.
    """
    config = dict(DEFAULTS)
    if path is not None or os.path.exists(DEFAULT_CONFIG_PATH):
        config_path = path or DEFAULT_CONFIG_PATH
        try:
            with open(config_path, "r") as file:
                loaded = yaml.safe_load(file)
        except FileNotFoundError:
            raise ValidationError(f"Configuration file not found: {config_path}")
        except yaml.YAMLError as e:
            raise ValidationError(f"Error parsing configuration file: {e}")
        if loaded is None:
            raise ValidationError("Configuration file is empty.")
        if not isinstance(loaded, dict):
            raise ValidationError("Configuration file must hold a mapping of parameters.")
        config.update(loaded)
        logger.debug(f"Loaded configuration from {config_path}.")

    apply_environment_overrides(config, os.environ if environ is None else environ)
    return config


def apply_environment_overrides(config: dict, environ) -> dict:
    for variable, (key, cast) in ENVIRONMENT_OVERRIDES.items():
        raw = environ.get(variable)
        if raw is None or raw == "":
            continue
        try:
            config[key] = cast(raw)
        except ValueError:
            raise ValidationError(f"Environment variable {variable}={raw!r} is not a valid {cast.__name__}.")
        logger.debug(f"{variable} overrides '{key}' with {config[key]!r}.")
    return config
