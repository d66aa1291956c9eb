"""Error Types and Formatting.

This module provides the exception hierarchy shared by every layer of the
toolkit together with helpers that turn an exception into a structured
diagnostic.

Features:
- Custom exception classes carrying a process exit code
- Structured error payloads
- Error logging with context
- Conversion of marshmallow validation errors

Usage:
    from fingerreq.utils.error_handlers import ParseError

    raise ParseError("non-numeric cell", details={"row": 4, "column": "Fz"})
"""

import logging
from typing import Any, Dict, Optional

from marshmallow import ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_PARTIAL = 2


class FingerReqError(Exception):
    """Base exception class.

    Attributes:
        message: Error message
        exit_code: Process exit code used by the command line
        error_code: Application-specific error code
        details: Additional error details
    """

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_INPUT_ERROR,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """Initialize the FingerReqError instance.

        Args:
            message: Error message
            exit_code: Process exit code (default: 1)
            error_code: Application-specific error code
            details: Additional error details
        """
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or self.__class__.__name__.lower()
        self.details = details or {}


class ConfigError(FingerReqError):
    """Invalid configuration, manifest or spec file."""

    def __init__(
        self, message: str = "Invalid configuration", details: Dict[str, Any] = None
    ):
        super().__init__(message, EXIT_INPUT_ERROR, "config_error", details)


class ParseError(FingerReqError):
    """Malformed trajectory file.

    The details always name the offending row and/or column so that the
    diagnostic can point at the exact cell.
    """

    def __init__(
        self,
        message: str,
        row: Optional[int] = None,
        column: Optional[str] = None,
        path: Optional[str] = None,
    ):
        details = {
            key: value
            for key, value in (("row", row), ("column", column), ("path", path))
            if value is not None
        }
        super().__init__(message, EXIT_INPUT_ERROR, "parse_error", details)


class DomainError(FingerReqError):
    """Input outside the mathematical domain of an operation."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(message, EXIT_INPUT_ERROR, "domain_error", details)


class InfeasibleError(FingerReqError):
    """Geometric target that cannot be reached.

    Attributes:
        distance: Distance from the target to the reachable workspace (m)
    """

    def __init__(self, message: str, distance: float = 0.0):
        super().__init__(
            message, EXIT_INPUT_ERROR, "infeasible", {"distance_m": float(distance)}
        )
        self.distance = float(distance)


class ReportError(FingerReqError):
    """Report could not be assembled (missing metric, empty suite)."""

    def __init__(self, message: str, metric: Optional[str] = None):
        details = {"metric": metric} if metric else {}
        super().__init__(message, EXIT_INPUT_ERROR, "report_error", details)


class PartialResultError(FingerReqError):
    """Outputs were written but too many timesteps were infeasible."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(message, EXIT_PARTIAL, "partial_result", details)


def config_error_from_validation(
    error: ValidationError, source: Optional[str] = None
) -> ConfigError:
    """Convert a marshmallow ValidationError into a ConfigError.

    Args:
        error: ValidationError raised by a schema
        source: Optional file the data came from

    Returns:
        ConfigError carrying the field messages
    """
    details: Dict[str, Any] = {"field_errors": error.messages}
    if source:
        details["path"] = str(source)
    prefix = f"{source}: " if source else ""
    return ConfigError(f"{prefix}validation failed", details=details)


def format_error(error: Exception) -> Dict[str, Any]:
    """Build a structured error payload.

    Args:
        error: Exception to format

    Returns:
        Dictionary with code, message, details and exit code
    """
    if isinstance(error, FingerReqError):
        return {
            "error": {
                "code": error.error_code,
                "message": error.message,
                "details": error.details,
                "exit_code": error.exit_code,
            }
        }
    return {
        "error": {
            "code": "internal_error",
            "message": str(error) or error.__class__.__name__,
            "details": {"type": error.__class__.__name__},
            "exit_code": EXIT_INPUT_ERROR,
        }
    }


def log_error(error: Exception, context: Optional[Dict[str, Any]] = None) -> None:
    """Log an error with its structured payload.

    Args:
        error: Exception to log
        context: Additional context (command name, task, ...)
    """
    payload = format_error(error)["error"]
    if context:
        payload = {**payload, **context}
    level = logging.WARNING if isinstance(error, FingerReqError) else logging.ERROR
    logger.log(
        level,
        f"{payload['code']}: {payload['message']}",
        extra={"context": payload},
        exc_info=not isinstance(error, FingerReqError),
    )


__all__ = [
    "EXIT_OK",
    "EXIT_INPUT_ERROR",
    "EXIT_PARTIAL",
    "FingerReqError",
    "ConfigError",
    "ParseError",
    "DomainError",
    "InfeasibleError",
    "ReportError",
    "PartialResultError",
    "config_error_from_validation",
    "format_error",
    "log_error",
]
