"""Central Configuration Module.

Default settings for every environment: solver tolerances, bandwidth
sweep grid, run defaults and logging. Environment variables are layered
on top of these classes by ``fingerreq.config_manager``.
"""

from pathlib import Path

PACKAGE_DIR = Path(__file__).resolve().parent
DATA_DIR = PACKAGE_DIR / "data"


class Config:
    """Base configuration class with common settings.

    Environment Variables (see ConfigManager):
        FINGERREQ_ENV: Environment name
        FINGERREQ_OUTPUT_DIR: Default output directory
        FINGERREQ_SEED: Default run seed
        FINGERREQ_JOBS: Task-level parallelism
        LOG_LEVEL: Logging level

    Example:
        settings = config["production"]
    """

    DEBUG = False
    TESTING = False

    # Run defaults
    OUTPUT_DIR = "results"
    SEED = 0
    JOBS = 1
    DATA_DIR = str(DATA_DIR)

    # Grasp optimizer
    DEFAULT_FRICTION = 0.6
    SOLVER_RESTARTS = 5
    SOLVER_MAX_ITER = 500
    SOLVER_FTOL = 1e-12
    EQUILIBRIUM_TOL = 1e-6
    CONE_TOL = 1e-8
    PRESSURE_TOL = 1e-12
    CONE_MARGIN = 1e-7
    INFEASIBLE_THRESHOLD = 0.10

    # Bandwidth sweep (Hz)
    SWEEP_START_HZ = 0.2
    SWEEP_STOP_HZ = 100.0
    SWEEP_STEP_HZ = 0.2
    PASS_FRACTION = 0.98
    BAND_FRACTION = 0.05

    # Sensitivity studies
    SENSITIVITY_TRIALS = 10
    SENSITIVITY_POS_RADIUS = 0.005
    SENSITIVITY_RADIUS_DELTA = 0.005
    SENSITIVITY_MAX_RESAMPLES = 100

    # Logging
    LOG_LEVEL = "INFO"
    LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
    STRUCTURED_LOGGING = False


class DevelopmentConfig(Config):
    """Development environment configuration.

    Extends base Config with verbose logging.
    """

    DEBUG = True
    LOG_LEVEL = "DEBUG"


class TestingConfig(Config):
    """Testing environment configuration.

    Extends base Config with:
    - Testing mode enabled
    - Quiet logging
    - Fewer sensitivity trials
    """

    TESTING = True
    LOG_LEVEL = "WARNING"
    SENSITIVITY_TRIALS = 3


class ProductionConfig(Config):
    """Batch-run configuration.

    Extends base Config with structured logging and parallel tasks.
    """

    LOG_LEVEL = "WARNING"
    STRUCTURED_LOGGING = True
    JOBS = -1


# Configuration mapping for easy selection
config = {
    "development": DevelopmentConfig,
    "testing": TestingConfig,
    "production": ProductionConfig,
    "default": Config,
}
