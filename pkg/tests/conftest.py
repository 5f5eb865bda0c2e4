"""Shared pytest fixtures for all tests."""

from collections.abc import Generator
from typing import Any

import pytest

from noma_metadist.core.config import LOG_LEVEL_ENV_VAR, SEED_ENV_VAR, WORKERS_ENV_VAR
from noma_metadist.models.network import Allocation, NetworkParams


def pytest_configure(config: Any) -> None:
    """Register custom markers for pytest."""
    config.addinivalue_line(
        "markers", "integration: Monte Carlo and figure-level runs (minutes, not seconds)"
    )


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Keep runtime settings from the caller's environment out of every test."""
    for variable in (SEED_ENV_VAR, WORKERS_ENV_VAR, LOG_LEVEL_ENV_VAR):
        monkeypatch.delenv(variable, raising=False)
    yield


@pytest.fixture
def params() -> NetworkParams:
    """Default network: lambda=10, eta=4, perfect SIC, two users."""
    return NetworkParams(lam=10.0, eta=4.0, beta_sic=0.0, n_users=2)


@pytest.fixture
def fig1_alloc() -> Allocation:
    """Equal power split with theta = (1, 0.5), the first figure's solid curves."""
    return Allocation(powers=(0.5, 0.5), thresholds=(1.0, 0.5))
