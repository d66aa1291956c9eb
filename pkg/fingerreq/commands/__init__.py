"""Commands Package.

This package contains the click commands of the ``fingerreq`` command line.
Each module groups the commands of one area and registers them on import.

Command Modules:
- optimize: optimize-task
- bandwidth: bandwidth
- actuator: size-motor, gear-strength, sea-range, size
- sensitivity: sensitivity
- report: report
- suite: run-suite

Usage:
    from fingerreq.commands import register_commands

    # Attach every command to the root click group
    register_commands(cli)
"""

import importlib
import logging
from typing import Dict, List, Optional

import click

logger = logging.getLogger(__name__)

COMMAND_MODULES = (
    "optimize",
    "bandwidth",
    "actuator",
    "sensitivity",
    "report",
    "suite",
)

# Command registry
_COMMAND_REGISTRY: Dict[str, click.Command] = {}


def register_command(
    command: click.Command, name: Optional[str] = None
) -> click.Command:
    """Register a command in the registry.

    Usable as a decorator below ``@click.command``.

    Args:
        command: click Command instance
        name: Optional name override (defaults to command.name)

    Returns:
        The command, unchanged
    """
    command_name = name or command.name
    _COMMAND_REGISTRY[command_name] = command
    logger.debug(f"Registered command: {command_name}")
    return command


def get_command(name: str) -> click.Command:
    """Get a registered command by name.

    Raises:
        KeyError: If the command is not registered
    """
    if name not in _COMMAND_REGISTRY:
        available = list(_COMMAND_REGISTRY.keys())
        raise KeyError(
            f"Command '{name}' not registered. Available commands: {available}"
        )
    return _COMMAND_REGISTRY[name]


def list_commands() -> List[str]:
    """List all registered command names."""
    return list(_COMMAND_REGISTRY.keys())


def register_commands(group: click.Group) -> None:
    """Import every command module and attach its commands to ``group``.

    Args:
        group: Root click group
    """
    for module_name in COMMAND_MODULES:
        importlib.import_module(f"{__name__}.{module_name}")

    for name, command in _COMMAND_REGISTRY.items():
        group.add_command(command, name)

    logger.debug(f"Registered {len(_COMMAND_REGISTRY)} commands")
