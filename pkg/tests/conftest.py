"""Pytest Configuration and Shared Fixtures.

Essential fixtures for testing the fingerreq toolkit.
"""

import pytest
from click.testing import CliRunner

from fingerreq import create_runtime
from fingerreq.cli import cli
from tests import TEST_CONFIG
from tests.fixtures.data_fixtures import *  # noqa: F401,F403
from tests.fixtures.grasp_fixtures import *  # noqa: F401,F403


@pytest.fixture(scope="session")
def runtime_config():
    """Testing configuration without touching the root logger.

    Returns:
        dict: Configuration dictionary
    """
    return create_runtime(dict(TEST_CONFIG), configure_logging=False)


@pytest.fixture
def runner():
    """Click test runner for the command line."""
    return CliRunner()


@pytest.fixture
def invoke(runner, runtime_config, tmp_path):
    """Invoke the ``fingerreq`` command line with the testing configuration.

    Outputs default to a temporary directory.

    Returns:
        Callable taking the argument list and returning a click Result
    """

    def _invoke(*args):
        config = {**runtime_config, "OUTPUT_DIR": str(tmp_path / "results")}
        return runner.invoke(cli, [str(a) for a in args], obj={"config": config})

    return _invoke


# Pytest configuration


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "performance: mark test as a timing test")
