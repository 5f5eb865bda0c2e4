"""Base class for the engine clients.

Every functional area (E-NOMA moments, C-NOMA moments, meta distributions,
simulation, resource allocation) exposes a small client object that binds the module
functions to one set of network parameters and numerical settings. The shared
plumbing lives here so the area clients only carry their own operations.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from noma_metadist.core.config import Config
from noma_metadist.models.common import QuadratureConfig, Tolerance

if TYPE_CHECKING:
    from noma_metadist.models.network import Allocation, EffectiveAlloc, NetworkParams


class BaseEngineClient:
    """Base class for engine clients.

    Attributes:
        _params: Network parameters shared by every call
        _quadrature: Tolerances of adaptive quadrature
        _tolerance: Tolerances of series-based special functions
        _config: Runtime settings (seed, workers)

    Example:
        ```python
        class EnomaClient(BaseEngineClient):
            def moment(self, alloc: Allocation, i: int, b: float = 1.0) -> float:
                return moment_enoma(self._params, alloc, i, b, tol=self._tolerance)
        ```
    """

    def __init__(
        self,
        params: NetworkParams,
        *,
        quadrature: QuadratureConfig | None = None,
        tolerance: Tolerance | None = None,
        config: Config | None = None,
    ) -> None:
        """Initialize the engine client.

        Args:
            params: Network parameters
            quadrature: Quadrature settings, defaults when omitted
            tolerance: Special-function settings, defaults when omitted
            config: Runtime settings, resolved from the environment when omitted
        """
        self._params = params
        self._quadrature = quadrature or QuadratureConfig()
        self._tolerance = tolerance or Tolerance()
        self._config = config or Config()

    @property
    def params(self) -> NetworkParams:
        """Network parameters bound to this client."""
        return self._params

    def effective(self, alloc: Allocation) -> EffectiveAlloc:
        """Effective margins and thresholds of an allocation under these parameters.

        Raises:
            InfeasibleAllocationError: If any effective margin is non-positive
        """
        from noma_metadist.models.network import effective_alloc

        return effective_alloc(self._params, alloc)
