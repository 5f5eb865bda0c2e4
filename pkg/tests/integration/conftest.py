"""Fixtures for integration tests."""

import pytest

from noma_metadist import NomaClient
from noma_metadist.core.config import Config
from noma_metadist.models.common import Scheme
from noma_metadist.models.network import Allocation, NetworkParams
from noma_metadist.models.simulation import SimConfig, SimulationResult
from noma_metadist.simulator import run_simulation

# Import test data fixtures to make them available to all integration tests
from tests.integration.test_data import (  # noqa: F401
    REALIZATIONS,
    cnoma_scp_at_zero_db,
    fig1_ccdf_at_half,
    fig4_cases,
)

_FIG1_ALLOC = Allocation(powers=(0.5, 0.5), thresholds=(1.0, 0.5))


@pytest.fixture(scope="session")
def runtime() -> Config:
    """Runtime settings from the environment; NOMA_MD_WORKERS speeds up the runs."""
    return Config()


@pytest.fixture(scope="session")
def monte_carlo(runtime: Config) -> dict[Scheme, SimulationResult]:
    """50,000 realizations per scheme under the equal power split.

    Session-scoped: every Monte Carlo comparison shares the same two runs.
    """
    sim = SimConfig(n_realizations=REALIZATIONS, rng_seed=runtime.seed)
    return {
        scheme: run_simulation(
            NetworkParams(), _FIG1_ALLOC, scheme, sim, workers=runtime.workers
        )
        for scheme in Scheme
    }


@pytest.fixture
def analytic() -> NomaClient:
    """Analytic client on the default network."""
    return NomaClient(config=Config(workers=1))
