"""Decorators for common functionality across the command line surface."""

import functools
import sys
from typing import Any, Callable, Type

import click
from marshmallow import Schema
from marshmallow import ValidationError as MarshmallowValidationError

from fingerreq.utils.error_handlers import (
    EXIT_INPUT_ERROR,
    FingerReqError,
    PartialResultError,
    config_error_from_validation,
    log_error,
)
from fingerreq.utils.logging_config import get_logger

logger = get_logger(__name__)


def _report(error: FingerReqError) -> None:
    click.echo(f"error: {error.message}", err=True)
    for key in sorted(error.details):
        click.echo(f"  {key}: {error.details[key]}", err=True)


def handle_cli_errors(f: Callable) -> Callable:
    """Decorator mapping exceptions raised by a command to exit codes.

    FingerReqError subclasses exit with their own code (1 for input and
    configuration problems, 2 for partial results). Anything else is logged
    with its traceback and exits with 1.
    """

    @functools.wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MarshmallowValidationError as e:
            error = config_error_from_validation(e)
            logger.warning(f"Validation error in {f.__name__}: {e.messages}")
            _report(error)
            sys.exit(error.exit_code)
        except PartialResultError as e:
            logger.warning(f"Partial result in {f.__name__}: {e.message}")
            _report(e)
            sys.exit(e.exit_code)
        except FingerReqError as e:
            log_error(e, {"command": f.__name__})
            _report(e)
            sys.exit(e.exit_code)
        except OSError as e:
            logger.warning(f"I/O error in {f.__name__}: {e}")
            path = getattr(e, "filename", None)
            message = f"{e.strerror or e}: {path}" if path else str(e)
            click.echo(f"error: {message}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as e:
            log_error(e, {"command": f.__name__})
            click.echo(f"error: unexpected failure: {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return decorated_function


def validate_file_input(
    param: str, schema_class: Type[Schema], **schema_kwargs: Any
) -> Callable:
    """Decorator loading a JSON file argument through a marshmallow schema.

    The keyword argument ``param`` (a path) is replaced by the validated,
    deserialized document before the command body runs.

    Args:
        param: Name of the keyword argument holding the path
        schema_class: Schema used to validate the document
        **schema_kwargs: Extra arguments for the schema constructor
    """
    from fingerreq.schemas.base import load_json_document

    def decorator(f: Callable) -> Callable:
        @functools.wraps(f)
        def decorated_function(*args, **kwargs):
            path = kwargs.get(param)
            if path is not None:
                kwargs[param] = load_json_document(path, schema_class(**schema_kwargs))
            return f(*args, **kwargs)

        return decorated_function

    return decorator
