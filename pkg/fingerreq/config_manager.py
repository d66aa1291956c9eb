"""Configuration Manager.

This module layers environment variables over the defaults in
``fingerreq.config`` and validates the result.
"""

import logging
import os
from typing import Any, Dict, Optional

from fingerreq.config import config as config_classes
from fingerreq.utils.error_handlers import ConfigError

VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _defaults(env: str) -> Dict[str, Any]:
    """Collect the uppercase attributes of the environment class."""
    if env not in config_classes:
        raise ConfigError(
            f"Unknown environment '{env}'",
            details={"available": sorted(config_classes)},
        )
    cls = config_classes[env]
    return {name: getattr(cls, name) for name in dir(cls) if name.isupper()}


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be a number, got '{raw}'") from e


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got '{raw}'") from e


def _get_run_config(defaults: Dict[str, Any]) -> Dict[str, Any]:
    """Get run configuration (output directory, seed, parallelism)."""
    return {
        "OUTPUT_DIR": os.environ.get("FINGERREQ_OUTPUT_DIR", defaults["OUTPUT_DIR"]),
        "SEED": _env_int("FINGERREQ_SEED", defaults["SEED"]),
        "JOBS": _env_int("FINGERREQ_JOBS", defaults["JOBS"]),
        "DATA_DIR": os.environ.get("FINGERREQ_DATA_DIR", defaults["DATA_DIR"]),
    }


def _get_solver_config(defaults: Dict[str, Any]) -> Dict[str, Any]:
    """Get grasp optimizer configuration."""
    return {
        "SOLVER_RESTARTS": _env_int(
            "FINGERREQ_SOLVER_RESTARTS", defaults["SOLVER_RESTARTS"]
        ),
        "SOLVER_MAX_ITER": _env_int(
            "FINGERREQ_SOLVER_MAX_ITER", defaults["SOLVER_MAX_ITER"]
        ),
        "SOLVER_FTOL": _env_float("FINGERREQ_SOLVER_FTOL", defaults["SOLVER_FTOL"]),
        "EQUILIBRIUM_TOL": _env_float(
            "FINGERREQ_EQUILIBRIUM_TOL", defaults["EQUILIBRIUM_TOL"]
        ),
        "CONE_MARGIN": _env_float("FINGERREQ_CONE_MARGIN", defaults["CONE_MARGIN"]),
        "INFEASIBLE_THRESHOLD": _env_float(
            "FINGERREQ_INFEASIBLE_THRESHOLD", defaults["INFEASIBLE_THRESHOLD"]
        ),
    }


def _get_sweep_config(defaults: Dict[str, Any]) -> Dict[str, Any]:
    """Get bandwidth sweep configuration."""
    return {
        "SWEEP_START_HZ": _env_float(
            "FINGERREQ_SWEEP_START_HZ", defaults["SWEEP_START_HZ"]
        ),
        "SWEEP_STOP_HZ": _env_float(
            "FINGERREQ_SWEEP_STOP_HZ", defaults["SWEEP_STOP_HZ"]
        ),
        "SWEEP_STEP_HZ": _env_float(
            "FINGERREQ_SWEEP_STEP_HZ", defaults["SWEEP_STEP_HZ"]
        ),
    }


def _get_logging_config(defaults: Dict[str, Any]) -> Dict[str, Any]:
    """Get logging configuration."""
    structured = os.environ.get("STRUCTURED_LOGGING")
    return {
        "LOG_LEVEL": os.environ.get("LOG_LEVEL", defaults["LOG_LEVEL"]).upper(),
        "LOG_FORMAT": os.environ.get("LOG_FORMAT", defaults["LOG_FORMAT"]),
        "LOG_FILE": os.environ.get("LOG_FILE"),
        "STRUCTURED_LOGGING": (
            structured.lower() == "true"
            if structured
            else defaults["STRUCTURED_LOGGING"]
        ),
    }


class ConfigManager:
    """Configuration manager.

    Starts from the environment's configuration class and overlays
    environment variables on top of it.
    """

    def __init__(self, env: Optional[str] = None):
        """Initialize configuration manager.

        Args:
            env: Environment name (development, testing, production, default)
        """
        self.env = env or os.environ.get("FINGERREQ_ENV", "default")
        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from environment and defaults."""
        defaults = _defaults(self.env)
        config = dict(defaults)
        config["ENV"] = self.env

        config.update(_get_run_config(defaults))
        config.update(_get_solver_config(defaults))
        config.update(_get_sweep_config(defaults))
        config.update(_get_logging_config(defaults))

        return config

    def get_config(self) -> Dict[str, Any]:
        """Get the complete configuration dictionary."""
        return self._config.copy()

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return self._config.get(key, default)

    def validate(self) -> None:
        """Validate value ranges.

        Raises:
            ConfigError: If a value is out of range
        """
        cfg = self._config
        if cfg["LOG_LEVEL"] not in VALID_LOG_LEVELS:
            raise ConfigError(
                f"LOG_LEVEL must be one of {', '.join(VALID_LOG_LEVELS)}",
                details={"value": cfg["LOG_LEVEL"]},
            )
        positive = ("SOLVER_FTOL", "EQUILIBRIUM_TOL", "SWEEP_STEP_HZ", "SWEEP_START_HZ")
        for key in positive:
            if not cfg[key] > 0:
                raise ConfigError(
                    f"{key} must be positive", details={"value": cfg[key]}
                )
        if cfg["SOLVER_RESTARTS"] < 1 or cfg["SOLVER_MAX_ITER"] < 1:
            raise ConfigError("Solver restarts and iterations must be at least 1")
        if cfg["JOBS"] == 0 or cfg["JOBS"] < -1:
            raise ConfigError("FINGERREQ_JOBS must be a positive integer or -1")
        if cfg["SWEEP_STOP_HZ"] < cfg["SWEEP_START_HZ"]:
            raise ConfigError("SWEEP_STOP_HZ must not be below SWEEP_START_HZ")
        if not 0.0 <= cfg["INFEASIBLE_THRESHOLD"] <= 1.0:
            raise ConfigError("INFEASIBLE_THRESHOLD must lie in [0, 1]")
        if self.env == "production" and cfg["JOBS"] == 1:
            logging.getLogger(__name__).warning("Production runs with a single job")


def get_config(env: Optional[str] = None) -> Dict[str, Any]:
    """Get configuration dictionary for the specified environment.

    Args:
        env: Environment name (development, testing, production, default)

    Returns:
        Configuration dictionary
    """
    manager = ConfigManager(env)
    manager.validate()
    return manager.get_config()
