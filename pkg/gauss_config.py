#!/usr/bin/env python3
"""
Gauss Sum Configuration
Loads run defaults from config.json (validated against config_schema.json)
and configures logging
"""

import copy
import json
import logging
import sys
from pathlib import Path
from typing import Dict, Optional, Union

from jsonschema import ValidationError, validate

from config_constants import ErrorMessages, EstimatorDefaults, PathConfig
from gausssum.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    "seed": EstimatorDefaults.DEFAULT_SEED,
    "samples": EstimatorDefaults.DEFAULT_SAMPLES,
    "strategy": EstimatorDefaults.DEFAULT_STRATEGY,
    "estimator": "exact",
    "oracle": {
        "mode": "exact",
        "epsilon": EstimatorDefaults.DEFAULT_ORACLE_EPSILON,
        "votes": EstimatorDefaults.DEFAULT_ORACLE_VOTES
    },
    "parallel_components": False,
    "logging": {
        "level": "WARNING",
        "log_path": None
    }
}


def _merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_schema(schema_path: Optional[Union[str, Path]] = None) -> Dict:
    schema_path = Path(schema_path) if schema_path else PathConfig.SCHEMA_PATH
    try:
        with open(schema_path, 'r') as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(ErrorMessages.CONFIG_NOT_FOUND.format(path=schema_path)) from None
    except json.JSONDecodeError:
        raise ConfigError(ErrorMessages.CONFIG_INVALID_JSON.format(path=schema_path)) from None


def load_gauss_config(config_path: Optional[Union[str, Path]] = None,
                      required: bool = False) -> Dict:
    """
    Load configuration from JSON file

    Args:
        config_path: Path to config.json (uses default if None)
        required: Raise ConfigError when the file is missing instead of
            falling back to built-in defaults

    Returns:
        Dict: Validated configuration merged over the built-in defaults
    """
    path = Path(config_path) if config_path else PathConfig.CONFIG_PATH
    if not path.exists():
        if required:
            raise ConfigError(ErrorMessages.CONFIG_NOT_FOUND.format(path=path))
        logger.debug(f"No config at {path}; using built-in defaults")
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        with open(path, 'r') as f:
            loaded = json.load(f)
    except json.JSONDecodeError:
        raise ConfigError(ErrorMessages.CONFIG_INVALID_JSON.format(path=path)) from None

    try:
        validate(instance=loaded, schema=load_schema())
    except ValidationError as e:
        raise ConfigError(f"{ErrorMessages.CONFIG_VALIDATION_FAILED}: {e.message}") from None

    return _merge(DEFAULT_CONFIG, loaded)


def setup_logging(log_path: Optional[Union[str, Path]] = None, level: str = "WARNING"):
    """Configure logging; stdout stays reserved for command output"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_path:
        log_path = Path(log_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True
    )


__all__ = [
    'DEFAULT_CONFIG',
    'load_schema',
    'load_gauss_config',
    'setup_logging'
]
