"""Command Line Entry Point.

The ``fingerreq`` console script. Loads ``.env``, builds the runtime
configuration, and dispatches to the registered commands.

Exit codes:
    0  success
    1  input, configuration or usage error
    2  outputs written, but a task exceeded the infeasible-step threshold

Usage:
    fingerreq optimize-task --task-file tasks.json --task "brush teeth"
    fingerreq run-suite --manifest fingerreq/data/manifest.json --jobs 4
"""

import sys
from typing import Optional, Sequence

import click
from dotenv import load_dotenv

from fingerreq import __version__, create_runtime
from fingerreq.commands import register_commands
from fingerreq.utils.error_handlers import EXIT_INPUT_ERROR, EXIT_OK, FingerReqError
from fingerreq.utils.logging_config import get_logger

logger = get_logger(__name__)


class FingerReqGroup(click.Group):
    """Root group mapping usage errors to exit code 1.

    Errors raised while building the configuration are reported the same
    way as errors raised inside a command.
    """

    def main(self, args=None, prog_name=None, complete_var=None, **extra):
        extra.pop("standalone_mode", None)
        try:
            result = super().main(
                args, prog_name, complete_var, standalone_mode=False, **extra
            )
        except click.exceptions.Exit as e:
            sys.exit(e.exit_code)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_INPUT_ERROR)
        except FingerReqError as e:
            click.echo(f"error: {e.message}", err=True)
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        # standalone_mode=False hands back the return code of ``ctx.exit``
        sys.exit(result if isinstance(result, int) else EXIT_OK)


@click.group(cls=FingerReqGroup)
@click.version_option(__version__, prog_name="fingerreq")
@click.option(
    "--env",
    envvar="FINGERREQ_ENV",
    default=None,
    help="Configuration environment (development, testing, production, default)",
)
@click.pass_context
def cli(ctx, env):
    """Robotic finger requirements: torques, bandwidths and actuator sizing."""
    ctx.ensure_object(dict)
    if "config" not in ctx.obj:
        ctx.obj["config"] = create_runtime(env)
    logger.debug(f"fingerreq {__version__} ({ctx.obj['config']['ENV']})")


register_commands(cli)


def main(argv: Optional[Sequence[str]] = None) -> None:
    load_dotenv()
    cli.main(args=list(argv) if argv is not None else None, prog_name="fingerreq")


if __name__ == "__main__":
    main()
