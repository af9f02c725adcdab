"""
Default configuration and config management
"""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Optional

from engines.numeric_defaults import NUMERIC_DEFAULTS

logger = logging.getLogger(__name__)

TOL_ENV_VAR = "BESSELK_TOL"

# Default configuration
DEFAULT_CONFIG = {
    # Numeric sections (quadrature, bessel, finite_difference, ...)
    **copy.deepcopy(NUMERIC_DEFAULTS),

    # Output settings
    "output": {
        "format": "json",
        "digits": 17,
    },

    # Grid points and j-terms
    "parallel": {
        "workers": 1,
    },
}


def get_config_path() -> Path:
    """Get user config file path"""
    config_dir = Path(__file__).parent
    return config_dir / "user_config.json"


def _deep_merge(base: dict, update: dict) -> dict:
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            base[key] = _deep_merge(base[key], value)
        else:
            base[key] = value
    return base


def load_config(path: Optional[Path] = None) -> dict:
    """Load configuration (user config merged with defaults, then BESSELK_TOL)"""
    config = copy.deepcopy(DEFAULT_CONFIG)

    user_config_path = Path(path) if path else get_config_path()
    if user_config_path.exists():
        try:
            with open(user_config_path, "r", encoding="utf-8") as f:
                user_config = json.load(f)
            if not isinstance(user_config, dict):
                raise ValueError("top level must be an object")
            _deep_merge(config, user_config)
        except Exception as e:
            logger.warning(f"Could not load user config {user_config_path}: {e}")
            config = copy.deepcopy(DEFAULT_CONFIG)

    env_tol = os.environ.get(TOL_ENV_VAR)
    if env_tol:
        try:
            tol = float(env_tol)
            if not tol > 0:
                raise ValueError("must be positive")
            config["quadrature"]["tol"] = tol
        except ValueError as e:
            logger.warning(f"Ignoring {TOL_ENV_VAR}={env_tol!r}: {e}")

    return config


def save_config(config: dict, path: Optional[Path] = None) -> bool:
    """Save user configuration"""
    try:
        user_config_path = Path(path) if path else get_config_path()
        with open(user_config_path, "w", encoding="utf-8") as f:
            json.dump(config, f, ensure_ascii=False, indent=2)
        return True
    except Exception as e:
        logger.error(f"Error saving config: {e}")
        return False
