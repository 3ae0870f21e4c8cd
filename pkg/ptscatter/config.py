"""
Configuration loading.

Packaged defaults live next to this module in defaults.yaml. A user file
is merged over them key by key, so a file that only sets
``verify.tolerances.oracle_phase`` keeps every other default.
"""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .exceptions import ConfigError

DEFAULTS_PATH = Path(__file__).with_name("defaults.yaml")


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping, got {type(data).__name__}")
    return data


def merge_config(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge override into a copy of base.

    Nested mappings are merged; any other value in override replaces the
    one in base.
    """
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Load packaged defaults, optionally overridden by a user YAML file.

    Args:
        path: Optional user configuration file.

    Returns:
        Merged configuration dictionary.

    Raises:
        ConfigError: If either file is unreadable or not a YAML mapping.
    """
    config = _read_yaml(DEFAULTS_PATH)
    if path is not None:
        config = merge_config(config, _read_yaml(Path(path)))
    return config


def tolerance(config: Dict[str, Any], name: str, default: float) -> float:
    """Look up ``verify.tolerances.<name>`` with a fallback."""
    return float(config.get("verify", {}).get("tolerances", {}).get(name, default))
