"""Main noma-metadist client facade.

This module provides the primary entry point: one object bound to a network that
hands out the engine clients and dispatches moment and meta-distribution queries
by scheme and method.
"""

import logging

from noma_metadist.allocation import AllocationClient
from noma_metadist.cnoma import CnomaClient
from noma_metadist.core.config import Config
from noma_metadist.core.exceptions import InfeasibleAllocationError
from noma_metadist.enoma import EnomaClient
from noma_metadist.metadist import MetaDistClient
from noma_metadist.models.common import MomentMethod, QuadratureConfig, Scheme, Tolerance
from noma_metadist.models.metadist import DegenerateMD, MetaDistribution
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import Allocation, NetworkParams
from noma_metadist.models.simulation import SimConfig
from noma_metadist.simulator import SimulatorClient, empirical_moments

logger = logging.getLogger(__name__)


class NomaClient:
    """Main client for CCP moments and meta distributions of downlink NOMA.

    Attributes:
        _params: Network parameters shared by every sub-client
        _quadrature: Quadrature settings
        _simulation: Monte Carlo settings, seeded from the runtime Config when omitted
        _tolerance: Special-function settings
        _config: Runtime settings

    Example:
        ```python
        from noma_metadist import Allocation, NetworkParams, NomaClient, Scheme

        client = NomaClient(NetworkParams(lam=10.0, eta=4.0))
        alloc = Allocation(powers=(0.5, 0.5), thresholds=(1.0, 0.5))

        scp = client.moment(Scheme.C_NOMA, alloc, i=1)
        md = client.meta_distribution(Scheme.E_NOMA, alloc, i=2)
        share = client.metadist.ccdf(md, 0.5)
        ```
    """

    def __init__(
        self,
        params: NetworkParams | None = None,
        *,
        quadrature: QuadratureConfig | None = None,
        simulation: SimConfig | None = None,
        tolerance: Tolerance | None = None,
        config: Config | None = None,
    ) -> None:
        """Initialize the client.

        Args:
            params: Network parameters; lambda=10, eta=4, beta=0, N=2 when omitted
            quadrature: Quadrature settings, defaults when omitted
            simulation: Monte Carlo settings, seeded from the runtime Config when omitted
            tolerance: Special-function settings, defaults when omitted
            config: Runtime settings, resolved from the environment when omitted

        Raises:
            ConfigurationError: If an environment setting is malformed
        """
        self._params = params or NetworkParams()
        self._quadrature = quadrature or QuadratureConfig()
        self._tolerance = tolerance or Tolerance()
        self._config = config or Config()
        self._simulation = simulation or SimConfig(rng_seed=self._config.seed)

        # Sub-clients are built on first use
        self._enoma_client: EnomaClient | None = None
        self._cnoma_client: CnomaClient | None = None
        self._metadist_client: MetaDistClient | None = None
        self._simulator_client: SimulatorClient | None = None
        self._allocation_client: AllocationClient | None = None

    @property
    def params(self) -> NetworkParams:
        """Network parameters bound to this client."""
        return self._params

    @property
    def enoma(self) -> EnomaClient:
        """Closed-form E-NOMA moments."""
        if self._enoma_client is None:
            self._enoma_client = EnomaClient(
                self._params,
                quadrature=self._quadrature,
                tolerance=self._tolerance,
                config=self._config,
            )
        return self._enoma_client

    @property
    def cnoma(self) -> CnomaClient:
        """Exact and approximate C-NOMA moments."""
        if self._cnoma_client is None:
            self._cnoma_client = CnomaClient(
                self._params,
                quadrature=self._quadrature,
                tolerance=self._tolerance,
                config=self._config,
            )
        return self._cnoma_client

    @property
    def metadist(self) -> MetaDistClient:
        """Beta moment matching and meta-distribution queries."""
        if self._metadist_client is None:
            self._metadist_client = MetaDistClient(self._params, config=self._config)
        return self._metadist_client

    @property
    def simulator(self) -> SimulatorClient:
        """Monte Carlo runs.

        Example:
            ```python
            result = client.simulator.run(alloc, Scheme.C_NOMA)
            moments = result.moment_set(2)
            ```
        """
        if self._simulator_client is None:
            self._simulator_client = SimulatorClient(
                self._params, simulation=self._simulation, config=self._config
            )
        return self._simulator_client

    @property
    def allocation(self) -> AllocationClient:
        """Rates and TMR-constrained resource allocation."""
        if self._allocation_client is None:
            self._allocation_client = AllocationClient(
                self._params,
                quadrature=self._quadrature,
                tolerance=self._tolerance,
                config=self._config,
            )
        return self._allocation_client

    def moment(
        self,
        scheme: Scheme,
        alloc: Allocation,
        i: int,
        b: float = 1.0,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> float:
        """b-th CCP moment of rank i.

        E-NOMA ignores the EXACT/APPROX distinction. SIMULATED runs the configured
        simulation and returns the sample mean of the CCP to the power b.

        Raises:
            InfeasibleAllocationError: If the allocation has a non-positive margin
        """
        if method is MomentMethod.SIMULATED:
            result = self.simulator.run(alloc, scheme)
            return empirical_moments(result.samples(i), b)[0]
        if scheme is Scheme.E_NOMA:
            return self.enoma.moment(alloc, i, b)
        return self.cnoma.moment(alloc, i, b, method)

    def moments(
        self,
        scheme: Scheme,
        alloc: Allocation,
        i: int,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> MomentSet:
        """First and second CCP moments of rank i."""
        if method is MomentMethod.SIMULATED:
            return self.simulator.moments(alloc, scheme, i)
        if scheme is Scheme.E_NOMA:
            return self.enoma.moments(alloc, i)
        return self.cnoma.moments(alloc, i, method)

    def meta_distribution(
        self,
        scheme: Scheme,
        alloc: Allocation,
        i: int,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> MetaDistribution:
        """Moment-matched meta distribution of the CCP of rank i.

        An infeasible allocation has a zero CCP everywhere; its meta distribution is
        the point mass at 0 rather than an error.
        """
        try:
            moments = self.moments(scheme, alloc, i, method)
        except InfeasibleAllocationError as exc:
            logger.info("UE_%d has a zero CCP: %s", i, exc)
            return DegenerateMD.infeasible()
        return self.metadist.from_moments(moments)

    def scp(self, scheme: Scheme, alloc: Allocation, i: int) -> float:
        """SCP of rank i, 0 for an infeasible allocation."""
        try:
            return self.moment(scheme, alloc, i)
        except InfeasibleAllocationError:
            return 0.0

