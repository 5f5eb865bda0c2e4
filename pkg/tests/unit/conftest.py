"""Fixtures for unit tests."""

import pytest

from noma_metadist.core.config import Config
from noma_metadist.models.common import QuadratureConfig


@pytest.fixture
def config() -> Config:
    """Runtime settings pinned to a fixed seed and a single worker."""
    return Config(seed=7, workers=1, log_level="WARNING")


@pytest.fixture
def coarse_quadrature() -> QuadratureConfig:
    """Looser quadrature for tests that only check structure, not digits."""
    return QuadratureConfig(rel_tol=1e-6, abs_tol=1e-9)
