"""Unit tests for command-line decorators."""

import click
import pytest
from click.testing import CliRunner

from fingerreq.schemas import GearSchema
from fingerreq.utils.decorators import handle_cli_errors, validate_file_input
from fingerreq.utils.error_handlers import DomainError, ParseError, PartialResultError
from tests.fixtures.data_fixtures import ACTUATOR_DIR


def command_raising(error):
    @click.command()
    @handle_cli_errors
    def failing():
        raise error

    return failing


@click.command()
@click.option("--gear", type=click.Path())
@handle_cli_errors
@validate_file_input("gear", GearSchema)
def show_gear(gear):
    click.echo(f"module={gear.module}")


@pytest.mark.unit
class TestHandleCliErrors:
    """Test exit-code mapping."""

    def test_parse_error_exits_one(self, runner):
        """Test that input errors exit with 1 and report their details."""
        error = ParseError("bad cell", row=3, column="Fz")
        result = runner.invoke(command_raising(error))

        assert result.exit_code == 1
        assert "error: bad cell" in result.output
        assert "row: 3" in result.output

    def test_partial_result_exits_two(self, runner):
        """Test that partial results exit with 2."""
        error = PartialResultError("1 task over threshold")
        result = runner.invoke(command_raising(error))

        assert result.exit_code == 2

    def test_os_error_exits_one(self, runner):
        """Test that I/O failures name the path."""
        error = FileNotFoundError(2, "No such file or directory", "missing.csv")

        result = runner.invoke(command_raising(error))

        assert result.exit_code == 1
        assert "missing.csv" in result.output

    def test_unexpected_error_exits_one(self, runner):
        """Test that unexpected exceptions still exit with 1."""
        result = runner.invoke(command_raising(RuntimeError("bug")))

        assert result.exit_code == 1
        assert "unexpected failure" in result.output

    def test_success(self, runner):
        """Test that a normal return exits with 0."""

        @click.command()
        @handle_cli_errors
        def fine():
            click.echo("ok")

        assert runner.invoke(fine).exit_code == 0


@pytest.mark.unit
class TestValidateFileInput:
    """Test schema-validated file arguments."""

    def test_valid_file(self, runner):
        """Test that the path is replaced by the loaded object."""
        gear = str(ACTUATOR_DIR / "spur_gear_m05.json")
        result = runner.invoke(show_gear, ["--gear", gear])

        assert result.exit_code == 0
        assert "module=0.0005" in result.output

    def test_invalid_file(self, runner, write_json):
        """Test that schema errors exit with 1."""
        path = write_json("gear.json", {"module": 0.0005})

        result = runner.invoke(show_gear, ["--gear", str(path)])

        assert result.exit_code == 1
        assert "validation failed" in result.output

    def test_domain_error_inside_command(self, runner):
        """Test the mapping for numerical domain errors."""
        result = runner.invoke(command_raising(DomainError("negative bandwidth")))

        assert result.exit_code == 1
