"""Unit tests for the main NomaClient."""

import numpy as np
import pytest

from noma_metadist import NomaClient
from noma_metadist.allocation import AllocationClient
from noma_metadist.cnoma import CnomaClient
from noma_metadist.core.config import Config
from noma_metadist.enoma import EnomaClient
from noma_metadist.metadist import MetaDistClient
from noma_metadist.models.common import MomentMethod, Scheme
from noma_metadist.models.metadist import BetaMD, DegenerateMD
from noma_metadist.models.network import Allocation, NetworkParams
from noma_metadist.models.simulation import SimConfig
from noma_metadist.simulator import SimulatorClient


@pytest.fixture
def infeasible() -> Allocation:
    """Allocation whose second rank has a negative margin."""
    return Allocation(powers=(0.8, 0.2), thresholds=(1.0, 1.0))


class TestNomaClientInitialization:
    """Tests for NomaClient initialization."""

    def test_default_network(self) -> None:
        """Test that the client defaults to lambda=10, eta=4, N=2."""
        client = NomaClient()
        assert client.params == NetworkParams()

    def test_seed_from_config(self) -> None:
        """Test that the simulator is seeded from the runtime Config."""
        client = NomaClient(config=Config(seed=123, workers=1))
        assert client.simulator.simulation.rng_seed == 123

    def test_explicit_simulation_wins(self) -> None:
        """Test that an explicit SimConfig is used as given."""
        simulation = SimConfig(n_realizations=10, rng_seed=5)
        client = NomaClient(simulation=simulation, config=Config(seed=123, workers=1))
        assert client.simulator.simulation == simulation


class TestNomaClientEngineProperties:
    """Tests for the engine client properties."""

    @pytest.mark.parametrize(
        ("name", "kind"),
        [
            ("enoma", EnomaClient),
            ("cnoma", CnomaClient),
            ("metadist", MetaDistClient),
            ("simulator", SimulatorClient),
            ("allocation", AllocationClient),
        ],
    )
    def test_property_type_and_caching(self, name: str, kind: type) -> None:
        """Test that each property returns one cached client of the right type."""
        client = NomaClient(NetworkParams(lam=3.0))
        engine = getattr(client, name)
        assert isinstance(engine, kind)
        assert getattr(client, name) is engine
        assert engine.params.lam == 3.0


class TestNomaClientDispatch:
    """Tests for scheme and method dispatch."""

    def test_enoma_moment(self, fig1_alloc: Allocation) -> None:
        """Test that E-NOMA ignores the exact/approx distinction."""
        client = NomaClient()
        exact = client.moment(Scheme.E_NOMA, fig1_alloc, 1, 2.0)
        approx = client.moment(Scheme.E_NOMA, fig1_alloc, 1, 2.0, MomentMethod.APPROX)
        assert exact == approx == client.enoma.moment(fig1_alloc, 1, 2.0)

    def test_cnoma_approx_moments(self, fig1_alloc: Allocation) -> None:
        """Test that C-NOMA moments come from the C-NOMA engine."""
        client = NomaClient()
        moments = client.moments(Scheme.C_NOMA, fig1_alloc, 2, MomentMethod.APPROX)
        assert moments.scheme is Scheme.C_NOMA
        assert moments.m1 == client.cnoma.moment(fig1_alloc, 2, 1.0, MomentMethod.APPROX)

    def test_meta_distribution(self, fig1_alloc: Allocation) -> None:
        """Test that the meta distribution matches the moments."""
        client = NomaClient()
        md = client.meta_distribution(Scheme.E_NOMA, fig1_alloc, 2)
        moments = client.moments(Scheme.E_NOMA, fig1_alloc, 2)
        assert isinstance(md, BetaMD)
        assert md.m1 == pytest.approx(moments.m1)

    def test_infeasible_meta_distribution(self, infeasible: Allocation) -> None:
        """Test that a zero CCP gives the point mass at zero."""
        client = NomaClient()
        assert client.meta_distribution(Scheme.C_NOMA, infeasible, 1) == (
            DegenerateMD.infeasible()
        )
        assert client.scp(Scheme.E_NOMA, infeasible, 2) == 0.0

    def test_simulated_moment(self, fig1_alloc: Allocation) -> None:
        """Test that SIMULATED runs the configured simulation."""
        client = NomaClient(
            simulation=SimConfig(n_realizations=30, rng_seed=2), config=Config(workers=1)
        )
        m1 = client.moment(Scheme.C_NOMA, fig1_alloc, 1, 1.0, MomentMethod.SIMULATED)
        samples = client.simulator.run(fig1_alloc, Scheme.C_NOMA).samples(1)
        assert m1 == pytest.approx(float(np.mean(samples)))
        moments = client.moments(Scheme.C_NOMA, fig1_alloc, 1, MomentMethod.SIMULATED)
        assert moments.method is MomentMethod.SIMULATED
        assert moments.m1 == pytest.approx(m1)
