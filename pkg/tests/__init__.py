"""Test Suite Package.

This package contains all tests for the fingerreq toolkit.
Tests are organized by functionality and follow pytest conventions.

Test Structure:
- conftest.py: Shared test fixtures and configuration
- fixtures/: Grasp, trajectory and file fixtures
- unit/: Unit tests
- integration/: Command line and pipeline tests
- performance/: Timing tests (marked slow)

Usage:
    # Run all tests
    pytest

    # Skip slow tests
    pytest -m "not slow"

    # Run with coverage
    pytest --cov=fingerreq

    # Run specific test category
    pytest -m unit
    pytest -m integration
"""

# Configuration overrides for tests
TEST_CONFIG = {
    "TESTING": True,
    "LOG_LEVEL": "WARNING",
    "SOLVER_RESTARTS": 2,
    "SENSITIVITY_TRIALS": 2,
}

__all__ = [
    "TEST_CONFIG",
]
