"""Finger Requirements Toolkit.

Derives joint torque and bandwidth requirements for a robotic finger from
tool-use wrench recordings, sizes actuators and transmissions against
them, and checks a design against a requirements profile.

See README.md for the command line and DESIGN.md for the module map.
"""

from typing import Any, Dict, Mapping, Optional, Union

from fingerreq.config_manager import ConfigManager
from fingerreq.utils.logging_config import setup_logging

__version__ = "1.0.0"


def create_runtime(
    config_name: Optional[Union[str, Mapping[str, Any]]] = None,
    configure_logging: bool = True,
) -> Dict[str, Any]:
    """Load, validate and apply the runtime configuration.

    Args:
        config_name: Environment name, or a configuration mapping (tests)
        configure_logging: Set up the root logger from the configuration

    Returns:
        Configuration dictionary

    Example:
        config = create_runtime("production")
    """
    if isinstance(config_name, Mapping):
        config = ConfigManager("testing").get_config()
        config.update(config_name)
    else:
        manager = ConfigManager(config_name)
        manager.validate()
        config = manager.get_config()

    config["VERSION"] = __version__
    if configure_logging:
        setup_logging(config)
    return config
