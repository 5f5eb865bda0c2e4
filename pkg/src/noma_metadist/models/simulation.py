"""Simulation configuration and result models."""

import math

import numpy as np
from pydantic import ConfigDict, Field

from noma_metadist.core.config import (
    DEFAULT_PLACEMENT_ATTEMPTS,
    DEFAULT_REALIZATIONS,
    DEFAULT_SEED,
    DEFAULT_WINDOW_FACTOR,
    MIN_WINDOW_FACTOR,
)
from noma_metadist.core.exceptions import DomainError
from noma_metadist.models.common import MomentMethod, NomaBaseModel, Scheme, TaggedCell
from noma_metadist.models.moments import MomentSet


def default_tagged_cell(scheme: Scheme) -> TaggedCell:
    """Tagged-cell convention whose link-distance law matches the analysis of a scheme.

    C-NOMA needs the nearest-neighbour distance of the serving BS to follow f_rho,
    which holds for the typical cell. E-NOMA needs Rayleigh link distances, which
    hold for uniform points of the cell covering the origin.
    """
    return TaggedCell.PALM if scheme is Scheme.C_NOMA else TaggedCell.ZERO


class SimConfig(NomaBaseModel):
    """Monte Carlo settings.

    Attributes:
        window_factor: Window radius in units of 1/sqrt(lambda), >= 4
        n_realizations: Number of network realizations
        rng_seed: Root seed of the per-realization random streams
        fading_samples_per_realization: Fading draws per realization in validation mode
        tagged_cell: Tagged-cell convention; the scheme default when omitted
        max_placement_attempts: Rejection batches before a cell is declared unusable
    """

    window_factor: float = Field(default=DEFAULT_WINDOW_FACTOR, ge=MIN_WINDOW_FACTOR)
    n_realizations: int = Field(default=DEFAULT_REALIZATIONS, ge=1)
    rng_seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    fading_samples_per_realization: int = Field(default=0, ge=0)
    tagged_cell: TaggedCell | None = None
    max_placement_attempts: int = Field(default=DEFAULT_PLACEMENT_ATTEMPTS, ge=1)

    def window_radius(self, lam: float) -> float:
        """Window radius window_factor / sqrt(lambda)."""
        return self.window_factor / math.sqrt(lam)

    def tagged_cell_for(self, scheme: Scheme) -> TaggedCell:
        """Configured convention, or the scheme default."""
        return self.tagged_cell or default_tagged_cell(scheme)


class _ArrayModel(NomaBaseModel):
    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        populate_by_name=True,
        arbitrary_types_allowed=True,
    )


class Network(_ArrayModel):
    """One PPP draw seen from the tagged BS.

    Attributes:
        tagged_bs: Position of the serving BS, shape (2,)
        interferers: Positions of all other BSs in the window, shape (K, 2)
        rho: Distance from the tagged BS to its nearest neighbour
        resamples: Windows redrawn because they held too few BSs
    """

    tagged_bs: np.ndarray
    interferers: np.ndarray
    rho: float = Field(gt=0.0)
    resamples: int = Field(default=0, ge=0)


class Realization(_ArrayModel):
    """One sampled network with placed and ordered NOMA UEs.

    Attributes:
        index: Realization index within its run
        tagged_bs: Position of the serving BS, shape (2,)
        interferers: Positions of all other BSs in the window, shape (K, 2)
        rho: Nearest-neighbour distance of the tagged BS
        ue_positions: UE positions ordered by link distance, shape (N, 2)
        ordered_distances: R_1 <= ... <= R_N
        ccp: Product-form CCP per rank, filled in once thresholds are known
        network_resamples: Windows redrawn for this realization
        placement_resamples: Networks redrawn because UE placement failed
    """

    index: int = Field(ge=0)
    tagged_bs: np.ndarray
    interferers: np.ndarray
    rho: float = Field(gt=0.0)
    ue_positions: np.ndarray
    ordered_distances: np.ndarray
    ccp: np.ndarray | None = None
    network_resamples: int = Field(default=0, ge=0)
    placement_resamples: int = Field(default=0, ge=0)


class JointEventCheck(NomaBaseModel):
    """Fading-level check of the joint SIC coverage event of one UE.

    Attributes:
        empirical: Fraction of fading draws in which every required message decodes
        std_err: Binomial standard error of empirical
        ccp: Product-form CCP of the same realization (0 for infeasible allocations)
        n_fading: Number of fading draws
    """

    empirical: float = Field(ge=0.0, le=1.0)
    std_err: float = Field(ge=0.0)
    ccp: float = Field(ge=0.0, le=1.0)
    n_fading: int = Field(ge=1)

    @property
    def deviation(self) -> float:
        """|empirical - ccp| in binomial standard errors of the product-form CCP.

        inf when ccp is 0 or 1 and the empirical frequency differs from it.
        """
        gap = abs(self.empirical - self.ccp)
        spread = math.sqrt(self.ccp * (1.0 - self.ccp) / self.n_fading)
        if spread == 0.0:
            return 0.0 if gap == 0.0 else math.inf
        return gap / spread


class SimulationResult(_ArrayModel):
    """Per-realization CCPs of a Monte Carlo run.

    Attributes:
        scheme: UE placement scheme
        tagged_cell: Tagged-cell convention used
        seed: Root seed
        ccp: CCP matrix, shape (n_realizations, N); column i-1 belongs to rank i
        network_resamples: Total windows redrawn for holding too few BSs
        placement_resamples: Total networks redrawn after failed UE placement
    """

    scheme: Scheme
    tagged_cell: TaggedCell
    seed: int
    ccp: np.ndarray
    network_resamples: int = Field(default=0, ge=0)
    placement_resamples: int = Field(default=0, ge=0)

    @property
    def n_realizations(self) -> int:
        """Number of realizations."""
        return int(self.ccp.shape[0])

    def samples(self, i: int) -> np.ndarray:
        """CCP samples of rank i."""
        if not 1 <= i <= self.ccp.shape[1]:
            raise DomainError(f"rank i={i} is outside 1..{self.ccp.shape[1]}")
        return self.ccp[:, i - 1]

    def moment_set(self, i: int) -> MomentSet:
        """Empirical first and second moments of rank i with standard errors."""
        from noma_metadist.simulator.client import empirical_moments

        m1, se1 = empirical_moments(self.samples(i), 1.0)
        m2, se2 = empirical_moments(self.samples(i), 2.0)
        return MomentSet(
            scheme=self.scheme,
            method=MomentMethod.SIMULATED,
            rank=i,
            m1=m1,
            m2=m2,
            m1_std_err=se1,
            m2_std_err=se2,
        )
