"""Service Helper Utilities.

Simple utilities for service layer operations: argument validation and
atomic output writing.
"""

import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Union

from fingerreq.utils.error_handlers import DomainError

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


def require_positive(**values: float) -> None:
    """Raise DomainError unless every keyword value is finite and > 0.

    Args:
        **values: Named quantities to check

    Raises:
        DomainError: Naming the first offending quantity
    """
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0):
            raise DomainError(
                f"{name} must be positive and finite, got {value!r}",
                details={"field": name, "value": value},
            )


def atomic_write(path: PathLike, content: Union[str, bytes]) -> Path:
    """Write a file via a temporary sibling and rename it into place.

    Args:
        path: Destination path
        content: Text (written as UTF-8 with ``\\n`` newlines) or bytes

    Returns:
        Destination path
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    data = content.encode("utf-8") if isinstance(content, str) else content

    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise

    logger.debug(f"Wrote {target} ({len(data)} bytes)")
    return target
