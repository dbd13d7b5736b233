# scripts/validate_config.py

import sys

import yaml

NUMBER = (int, float)

REQUIRED_FIELDS = {
    "verbose_mode": bool,
    "default_format": str,
    "max_workers": int,
    "shift": NUMBER,
    "seed": int,
    "cluster_gap": NUMBER,
    "reality_tol": NUMBER,
    "extended_dps": int,
    "t_grid": list,
    "probe_epsilons": list,
}

# Keys that may be null
OPTIONAL_FIELDS = {
    "tol_rank": NUMBER,
    "ep_window": NUMBER,
    "ep_dps": int,
    "log_file": str,
}

FORMATS = ("json", "csv", "text")


def _type_name(field_type) -> str:
    if isinstance(field_type, tuple):
        return " or ".join(t.__name__ for t in field_type)
    return field_type.__name__


def _is_instance(value, field_type) -> bool:
    # YAML booleans are ints to isinstance
    if isinstance(value, bool) and field_type is not bool:
        return False
    return isinstance(value, field_type)


def validate_config(config_path):
    try:
        with open(config_path, 'r') as file:
            config = yaml.safe_load(file)
    except FileNotFoundError:
        print(f"Configuration file not found: {config_path}")
        return False
    except yaml.YAMLError as e:
        print(f"Error parsing YAML file: {e}")
        return False
    if not isinstance(config, dict):
        print("Configuration file must hold a mapping of parameters.")
        return False

    missing_fields = []
    incorrect_types = []
    problems = []

    for field, field_type in REQUIRED_FIELDS.items():
        if field not in config:
            missing_fields.append(field)
        elif not _is_instance(config[field], field_type):
            incorrect_types.append((field, _type_name(field_type), type(config[field]).__name__))
    for field, field_type in OPTIONAL_FIELDS.items():
        value = config.get(field)
        if value is not None and not _is_instance(value, field_type):
            incorrect_types.append((field, _type_name(field_type), type(value).__name__))

    if isinstance(config.get("default_format"), str) and config["default_format"] not in FORMATS:
        problems.append(f"'default_format' must be one of {', '.join(FORMATS)}")
    for field in ("t_grid", "probe_epsilons"):
        values = config.get(field)
        if isinstance(values, list) and not all(_is_instance(v, NUMBER) for v in values):
            problems.append(f"'{field}' must be a list of numbers")
    if isinstance(config.get("t_grid"), list) and any(_is_instance(v, NUMBER) and v < 0 for v in config["t_grid"]):
        problems.append("'t_grid' must not contain negative couplings")

    if missing_fields:
        print(f"Missing required fields: {', '.join(missing_fields)}")
    if incorrect_types:
        for field, expected, actual in incorrect_types:
            print(f"Incorrect type for '{field}': Expected {expected}, got {actual}")
    for problem in problems:
        print(f"Invalid value: {problem}")

    if missing_fields or incorrect_types or problems:
        return False

    print("Configuration file is valid.")
    return True


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print("Usage: python validate_config.py <config_file.yaml>")
        sys.exit(1)
    config_file = sys.argv[1]
    if not validate_config(config_file):
        sys.exit(1)
