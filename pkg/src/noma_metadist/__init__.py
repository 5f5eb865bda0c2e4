"""noma-metadist - meta distribution of the coverage probability in downlink NOMA.

This package computes the moments of the conditional coverage probability (CCP) of
every NOMA user in a Poisson cellular network, matches them to a beta meta
distribution, checks the analysis by Monte Carlo simulation and solves the
two-user rate allocation under a minimum-rate constraint.

Example:
    ```python
    from noma_metadist import Allocation, NetworkParams, NomaClient, Scheme

    client = NomaClient(NetworkParams(lam=10.0, eta=4.0, beta_sic=0.0))
    alloc = Allocation.from_db(powers=(0.5, 0.5), thresholds_db=(0.0, -3.0))

    # SCP and meta distribution of the far user under C-NOMA
    moments = client.moments(Scheme.C_NOMA, alloc, i=2)
    md = client.meta_distribution(Scheme.C_NOMA, alloc, i=2)
    print(moments.m1, client.metadist.ccdf(md, 0.9))

    # TMR-constrained allocation
    result = client.allocation.solve_tmr(Scheme.E_NOMA, tmr=0.1)
    print(result.p2, result.theta_2_db, result.total_rate)
    ```
"""

from noma_metadist.client import NomaClient
from noma_metadist.core.config import Config
from noma_metadist.core.exceptions import (
    ConfigurationError,
    DomainError,
    InfeasibleAllocationError,
    InfeasibleTmrError,
    InvalidMomentsError,
    NomaMetaDistError,
    NumericalFailureError,
    ParameterValidationError,
    PlacementError,
)
from noma_metadist.models.allocation import RAProblem, RAResult
from noma_metadist.models.common import (
    MomentMethod,
    QuadratureConfig,
    Scheme,
    TaggedCell,
    Tolerance,
)
from noma_metadist.models.metadist import BetaMD, DegenerateMD, MetaDistribution
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import Allocation, NetworkParams
from noma_metadist.models.simulation import SimConfig, SimulationResult

__version__ = "0.1.0"

__all__ = [
    # Main client
    "NomaClient",
    "Config",
    # Models
    "NetworkParams",
    "Allocation",
    "QuadratureConfig",
    "Tolerance",
    "SimConfig",
    "SimulationResult",
    "MomentSet",
    "BetaMD",
    "DegenerateMD",
    "MetaDistribution",
    "RAProblem",
    "RAResult",
    # Enums
    "Scheme",
    "MomentMethod",
    "TaggedCell",
    # Exceptions
    "NomaMetaDistError",
    "DomainError",
    "ConfigurationError",
    "ParameterValidationError",
    "NumericalFailureError",
    "InfeasibleAllocationError",
    "InvalidMomentsError",
    "InfeasibleTmrError",
    "PlacementError",
]
