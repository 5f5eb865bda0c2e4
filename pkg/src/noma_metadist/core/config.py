"""Configuration management for noma-metadist.

This module holds the numerical defaults shared by every engine and resolves the
runtime settings (seed, worker count, log level) that may come from the environment.
"""

import logging
import os
from typing import Final

# Special functions
DEFAULT_REL_ERR: Final[float] = 1e-10
DEFAULT_MAX_TERMS: Final[int] = 10_000

# Quadrature
DEFAULT_QUAD_REL_TOL: Final[float] = 1e-8
DEFAULT_QUAD_ABS_TOL: Final[float] = 1e-12
DEFAULT_RHO_CUTOFF_QUANTILE: Final[float] = 1.0 - 1e-10
DEFAULT_MAX_SUBDIVISIONS: Final[int] = 200
INNER_TOLERANCE_FACTOR: Final[float] = 10.0

# Monte Carlo
# Doubling the window moves every SCP by less than one standard error of a default run
DEFAULT_WINDOW_FACTOR: Final[float] = 24.0
MIN_WINDOW_FACTOR: Final[float] = 4.0
DEFAULT_REALIZATIONS: Final[int] = 50_000
DEFAULT_SEED: Final[int] = 20_190_417
DEFAULT_WORKERS: Final[int] = 1
DEFAULT_PLACEMENT_ATTEMPTS: Final[int] = 1_000
MIN_RELIABLE_SAMPLES: Final[int] = 1_000

# Meta distribution
DEGENERATE_VARIANCE: Final[float] = 1e-14
MOMENT_SLACK: Final[float] = 1e-12
QUANTILE_XTOL: Final[float] = 1e-10
DEFAULT_ALPHA_POINTS: Final[int] = 101

# Resource allocation
DEFAULT_RA_GRID: Final[int] = 512
DEFAULT_TMR_TOL: Final[float] = 1e-4
SCP_TABLE_LOG10_RANGE: Final[tuple[float, float]] = (-4.0, 4.0)
SCP_TABLE_POINTS: Final[int] = 49
THETA1_DB_RANGE: Final[tuple[float, float]] = (-10.0, 40.0)
THETA1_DB_POINTS: Final[int] = 101

SEED_ENV_VAR: Final[str] = "NOMA_MD_SEED"
WORKERS_ENV_VAR: Final[str] = "NOMA_MD_WORKERS"
LOG_LEVEL_ENV_VAR: Final[str] = "NOMA_MD_LOG_LEVEL"


class Config:
    """Runtime settings for simulations and the command line.

    Attributes:
        seed: Root seed of every counter-based random stream
        workers: Number of worker processes used by the simulator
        log_level: Numeric logging level used by the command line
    """

    def __init__(
        self,
        seed: int | None = None,
        *,
        workers: int | None = None,
        log_level: str | None = None,
    ) -> None:
        """Initialize configuration settings.

        Args:
            seed: Optional root seed. If not provided, read from NOMA_MD_SEED,
                falling back to DEFAULT_SEED.
            workers: Optional worker count. If not provided, read from NOMA_MD_WORKERS,
                falling back to DEFAULT_WORKERS.
            log_level: Optional level name. If not provided, read from NOMA_MD_LOG_LEVEL,
                falling back to WARNING.

        Raises:
            ConfigurationError: If an environment value cannot be interpreted.
        """
        self.seed = self._resolve_int(seed, SEED_ENV_VAR, DEFAULT_SEED, minimum=0)
        self.workers = self._resolve_int(workers, WORKERS_ENV_VAR, DEFAULT_WORKERS, minimum=1)
        self.log_level = self._resolve_log_level(log_level)

    def _resolve_int(self, value: int | None, env_var: str, default: int, *, minimum: int) -> int:
        """Resolve an integer setting.

        Resolution order:
        1. Constructor argument (if provided)
        2. Environment variable
        3. Package default

        Args:
            value: The value provided to the constructor, or None
            env_var: Name of the environment variable to consult
            default: Value used when neither source is available
            minimum: Smallest admissible value

        Returns:
            The resolved integer

        Raises:
            ConfigurationError: If the resolved value is not an integer >= minimum
        """
        # Import here to avoid circular dependency
        from noma_metadist.core.exceptions import ConfigurationError

        if value is not None:
            if value < minimum:
                raise ConfigurationError(env_var, str(value), f"{env_var} must be >= {minimum}")
            return value

        raw = os.environ.get(env_var)
        if raw is None:
            return default

        try:
            parsed = int(raw)
        except ValueError as exc:
            raise ConfigurationError(env_var, raw) from exc
        if parsed < minimum:
            raise ConfigurationError(env_var, raw, f"{env_var} must be >= {minimum}")
        return parsed

    def _resolve_log_level(self, log_level: str | None) -> int:
        """Resolve the logging level from the argument or NOMA_MD_LOG_LEVEL.

        Args:
            log_level: Level name such as "INFO", or None

        Returns:
            The numeric logging level

        Raises:
            ConfigurationError: If the name is not a standard logging level
        """
        from noma_metadist.core.exceptions import ConfigurationError

        name = log_level or os.environ.get(LOG_LEVEL_ENV_VAR) or "WARNING"
        level = logging.getLevelName(name.upper())
        if not isinstance(level, int):
            raise ConfigurationError(LOG_LEVEL_ENV_VAR, name)
        return level
