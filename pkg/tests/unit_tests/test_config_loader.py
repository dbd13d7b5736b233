from argparse import Namespace
from pathlib import Path

import pytest

from modules.config_loader import DEFAULTS, Tolerances, apply_environment_overrides, load_config
from modules.errors import InvalidParameterError, ValidationError
from modules.run_config import Command, OutputFormat, RunConfig

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


def _write(tmp_path, text, name="params.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_shipped_parameter_files_load():
    config = load_config(str(CONFIG_DIR / "epn_parameters.yaml"), environ={})
    assert config["cluster_gap"] == 1.0e-6
    assert config["tol_rank"] is None
    preset = load_config(str(CONFIG_DIR / "n7_corridor_sweep.yaml"), environ={})
    assert preset["shift"] == 7.0
    assert preset["default_format"] == "csv"


def test_yaml_values_override_defaults(tmp_path):
    config = load_config(_write(tmp_path, "shift: 3.5\nseed: 9\n"), environ={})
    assert config["shift"] == 3.5
    assert config["seed"] == 9
    assert config["reality_tol"] == DEFAULTS["reality_tol"]


def test_environment_overrides_yaml(tmp_path):
    path = _write(tmp_path, "cluster_gap: 1.0e-4\n")
    config = load_config(path, environ={"EPN_CLUSTER_GAP": "1e-3", "EPN_EXTENDED_DPS": "50", "EPN_TOL_RANK": ""})
    assert config["cluster_gap"] == 1e-3
    assert config["extended_dps"] == 50
    assert config["tol_rank"] is None


def test_bad_environment_value():
    with pytest.raises(ValidationError):
        apply_environment_overrides({}, {"EPN_REALITY_TOL": "tiny"})


@pytest.mark.parametrize("text", ["", "shift: [1, 2\n", "- 1\n- 2\n"])
def test_bad_files(tmp_path, text):
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, text), environ={})


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError):
        load_config(str(tmp_path / "absent.yaml"), environ={})


def test_tolerances():
    tolerances = Tolerances.from_config({"cluster_gap": "1e-5", "extended_dps": None})
    assert tolerances.cluster_gap == 1e-5
    assert tolerances.extended_dps == 0
    assert tolerances.rank_threshold(4) == 4 * 2.0 ** -40
    assert Tolerances(tol_rank=1e-9).rank_threshold(4) == 1e-9


def _namespace(**values):
    return Namespace(**values)


def test_run_config_precedence():
    settings = dict(DEFAULTS, shift=7.0, cluster_gap=1e-4, default_format="csv")
    args = _namespace(command="spectrum", n=7, index=3, t=0.5, cluster_gap=1e-3, dps=None, format=None, shift=None)
    config = RunConfig.from_args(args, settings)
    assert config.command is Command.SPECTRUM
    assert config.shift == 7.0
    assert config.tolerances.cluster_gap == 1e-3
    assert config.output_format is OutputFormat.CSV
    assert config.t_grid == DEFAULTS["t_grid"]

    args = _namespace(command="spectrum", n=7, format="text", shift=0.0, dps=40)
    config = RunConfig.from_args(args, settings)
    assert config.output_format is OutputFormat.TEXT
    assert config.shift == 0.0
    assert config.tolerances.extended_dps == 40


def test_run_config_validation():
    with pytest.raises(InvalidParameterError):
        RunConfig(command="enumerate", index=1, blocks="(7,1)")
    with pytest.raises(InvalidParameterError):
        RunConfig(command="launch")
    with pytest.raises(InvalidParameterError):
        RunConfig(command="build", output_format="xml")


def test_near_ep_precision_window():
    tolerances = Tolerances()
    assert tolerances.near_ep_dps(1.0, 7) == 100
    assert tolerances.near_ep_dps(0.99, 7) == 100
    assert tolerances.near_ep_dps(1.01, 20) == 160
    assert tolerances.near_ep_dps(0.9, 7) == 0
    assert tolerances.near_ep_dps(None, 7) == 0
    assert Tolerances(ep_dps=0).near_ep_dps(1.0, 7) == 0

    config = load_config(str(CONFIG_DIR / "epn_parameters.yaml"), environ={"EPN_EP_DPS": "0"})
    assert Tolerances.from_config(config).ep_dps == 0
    assert Tolerances.from_config({}).ep_window == DEFAULTS["ep_window"]
