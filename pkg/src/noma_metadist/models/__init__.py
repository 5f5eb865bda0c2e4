"""Pydantic models for noma-metadist.

This package contains the parameter, result and configuration models shared by the
analytic engines, the simulator, resource allocation and the command line.
"""

from noma_metadist.models.allocation import RAProblem, RAResult
from noma_metadist.models.common import (
    MomentMethod,
    NomaBaseModel,
    QuadratureConfig,
    Scheme,
    TaggedCell,
    Tolerance,
    validated,
)
from noma_metadist.models.metadist import BetaMD, DegenerateMD, MetaDistribution
from noma_metadist.models.moments import MomentRequest, MomentSet
from noma_metadist.models.network import (
    Allocation,
    EffectiveAlloc,
    NetworkParams,
    db_to_linear,
    effective_alloc,
    linear_to_db,
)
from noma_metadist.models.run import RunConfig, RunMode, SweepSpec, SweepVariable, ThresholdUnit
from noma_metadist.models.simulation import (
    JointEventCheck,
    Network,
    Realization,
    SimConfig,
    SimulationResult,
)

__all__ = [
    # Common
    "NomaBaseModel",
    "MomentMethod",
    "QuadratureConfig",
    "Scheme",
    "TaggedCell",
    "Tolerance",
    "validated",
    # Network
    "NetworkParams",
    "Allocation",
    "EffectiveAlloc",
    "effective_alloc",
    "db_to_linear",
    "linear_to_db",
    # Moments and meta distributions
    "MomentRequest",
    "MomentSet",
    "BetaMD",
    "DegenerateMD",
    "MetaDistribution",
    # Simulation
    "SimConfig",
    "Network",
    "Realization",
    "JointEventCheck",
    "SimulationResult",
    # Resource allocation
    "RAProblem",
    "RAResult",
    # Command line
    "RunConfig",
    "RunMode",
    "SweepSpec",
    "SweepVariable",
    "ThresholdUnit",
]
