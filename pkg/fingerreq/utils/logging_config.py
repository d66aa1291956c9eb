"""Logging Configuration.

Diagnostics always go to standard error so that result files and standard
output stay reproducible. Every record carries the active run context (run
id, task, seed, trial), and numerical diagnostics such as infeasible
timesteps go to a dedicated ``diagnostics`` logger.

Usage:
    from fingerreq.utils.logging_config import setup_logging

    setup_logging(config)
"""

import contextvars
import functools
import json
import logging
import logging.handlers
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, Mapping, Optional

_RUN_CONTEXT: contextvars.ContextVar[Dict[str, Any]] = contextvars.ContextVar(
    "fingerreq_run_context", default={}
)

DIAGNOSTICS_LOGGER = "diagnostics"
DEFAULT_FORMAT = "%(levelname)s %(name)s: %(message)s"


class StructuredFormatter(logging.Formatter):
    """Formatter emitting one JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        created = datetime.fromtimestamp(record.created, tz=timezone.utc)
        log_data: Dict[str, Any] = {
            "timestamp": created.strftime("%Y-%m-%dT%H:%M:%S.%fZ"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        run = getattr(record, "run", None)
        if run:
            log_data["run"] = run
        if hasattr(record, "context"):
            log_data["context"] = record.context
        if hasattr(record, "duration"):
            log_data["performance"] = {"duration_ms": record.duration}
        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data, ensure_ascii=False, default=str)


class RunContextFilter(logging.Filter):
    """Copies the active run context onto each record."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run = dict(_RUN_CONTEXT.get())
        return True


@contextmanager
def run_context(**values: Any) -> Iterator[Dict[str, Any]]:
    """Bind values (task, seed, trial) to log records inside the block.

    Args:
        **values: Context entries to add

    Yields:
        The merged context dictionary
    """
    merged = {**_RUN_CONTEXT.get(), **values}
    token = _RUN_CONTEXT.set(merged)
    try:
        yield merged
    finally:
        _RUN_CONTEXT.reset(token)


class PerformanceLogger:
    """Context manager timing one stage of a run."""

    def __init__(self, operation: str, logger: Optional[logging.Logger] = None):
        self.operation = operation
        self.logger = logger or logging.getLogger(__name__)
        self.start_time: Optional[float] = None
        self.duration_ms: Optional[float] = None

    def __enter__(self) -> "PerformanceLogger":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self.start_time is None:
            return
        self.duration_ms = (time.perf_counter() - self.start_time) * 1000.0
        status = "failed" if exc_type else "completed"
        self.logger.info(
            f"Operation {status}: {self.operation}",
            extra={"duration": round(self.duration_ms, 3)},
        )


def setup_logging(config: Mapping[str, Any]) -> None:
    """Configure the root logger from a configuration mapping.

    ``STRUCTURED_LOGGING`` switches standard error to JSON lines; a
    ``LOG_FILE`` always receives JSON lines through a rotating handler.

    Args:
        config: Configuration dictionary (see ConfigManager)
    """
    log_level = getattr(logging, str(config.get("LOG_LEVEL", "INFO")).upper())

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(log_level)

    console_handler = logging.StreamHandler(sys.stderr)
    if config.get("STRUCTURED_LOGGING", False):
        console_handler.setFormatter(StructuredFormatter())
    else:
        console_handler.setFormatter(
            logging.Formatter(config.get("LOG_FORMAT", DEFAULT_FORMAT))
        )
    console_handler.addFilter(RunContextFilter())
    root_logger.addHandler(console_handler)

    log_file = config.get("LOG_FILE")
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            path,
            maxBytes=int(config.get("LOG_MAX_BYTES", 10 * 1024 * 1024)),
            backupCount=int(config.get("LOG_BACKUP_COUNT", 5)),
            encoding="utf-8",
        )
        file_handler.setFormatter(StructuredFormatter())
        file_handler.addFilter(RunContextFilter())
        root_logger.addHandler(file_handler)

    # diagnostics stay visible even under a quiet root level
    logging.getLogger(DIAGNOSTICS_LOGGER).setLevel(min(log_level, logging.WARNING))
    logging.getLogger("joblib").setLevel(max(log_level, logging.WARNING))


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def log_diagnostic_event(
    event_type: str,
    message: str,
    details: Optional[Dict[str, Any]] = None,
    level: int = logging.WARNING,
) -> None:
    """Log a numerical diagnostic (infeasible step, resample, SEA window).

    Args:
        event_type: Type of diagnostic event
        message: Event message
        details: Additional event details
        level: Log level
    """
    context: Dict[str, Any] = {"event_type": event_type, **_RUN_CONTEXT.get()}
    if details:
        context.update(details)
    diagnostics = logging.getLogger(DIAGNOSTICS_LOGGER)
    diagnostics.log(level, message, extra={"context": context})


def log_performance(func: Callable) -> Callable:
    """Decorator logging the wall time of each call at DEBUG level."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger(f"performance.{func.__module__}.{func.__name__}")
        start_time = time.perf_counter()
        status = "error"
        try:
            result = func(*args, **kwargs)
            status = "success"
            return result
        finally:
            duration_ms = round((time.perf_counter() - start_time) * 1000, 2)
            logger.debug(
                f"{func.__name__} finished with {status}",
                extra={"context": {"status": status, "duration_ms": duration_ms}},
            )

    return wrapper


__all__ = [
    "setup_logging",
    "get_logger",
    "run_context",
    "log_diagnostic_event",
    "log_performance",
    "PerformanceLogger",
    "RunContextFilter",
    "StructuredFormatter",
    "DIAGNOSTICS_LOGGER",
]
