"""Base Schema Classes.

Foundational schema class that all configuration schemas inherit from,
plus the helper that loads a JSON document through a schema.
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

from marshmallow import RAISE, Schema, ValidationError

from fingerreq.utils.error_handlers import ConfigError, config_error_from_validation

logger = logging.getLogger("fingerreq.schemas.base")


class BaseSchema(Schema):
    """Base schema class for all configuration schemas.

    Unknown keys are rejected so that typos in hand-edited files surface
    as errors instead of silently falling back to defaults.

    Example:
        class GearSchema(BaseSchema):
            module = CommonFields.positive_length(required=True)
    """

    class Meta:
        """Schema metadata configuration."""

        unknown = RAISE
        ordered = True

    def handle_error(self, error, data, **kwargs):
        """Log validation errors before they propagate."""
        logger.warning(f"Schema validation error: {error.messages}")
        raise error


def read_json(path: Union[str, Path]) -> Any:
    """Read a JSON file, mapping I/O and syntax problems to ConfigError.

    Args:
        path: File to read

    Returns:
        Parsed JSON (None for an empty file)

    Raises:
        ConfigError: If the file is missing or not valid JSON
    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ConfigError(
            f"File not found: {file_path}", details={"path": str(file_path)}
        ) from e
    except OSError as e:
        raise ConfigError(
            f"Cannot read {file_path}: {e}", details={"path": str(file_path)}
        ) from e
    if not text.strip():
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"{file_path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}",
            details={"path": str(file_path)},
        ) from e


def load_json_document(path: Union[str, Path], schema: Schema) -> Any:
    """Load and validate a JSON document.

    Args:
        path: File to read
        schema: Schema instance used for validation

    Returns:
        Deserialized object

    Raises:
        ConfigError: On I/O, syntax or validation problems
    """
    data = read_json(path)
    if data is None:
        raise ConfigError(f"{path}: file is empty", details={"path": str(path)})
    try:
        return schema.load(data)
    except ValidationError as e:
        raise config_error_from_validation(e, str(path)) from e
