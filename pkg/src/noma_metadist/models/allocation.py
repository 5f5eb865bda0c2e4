"""Resource allocation problem and result models."""

from pydantic import Field, model_validator

from noma_metadist.core.config import DEFAULT_RA_GRID, DEFAULT_TMR_TOL
from noma_metadist.models.common import MomentMethod, NomaBaseModel, Scheme
from noma_metadist.models.network import Allocation, NetworkParams, linear_to_db


class RAProblem(NomaBaseModel):
    """Two-user power and rate allocation under a threshold minimum rate for UE_2.

    Rates are SCP times log(1 + theta) in nats/s/Hz.

    Attributes:
        params: Network parameters; n_users must be 2
        scheme: UE placement scheme
        theta_1: SIR threshold of UE_1 (linear); optimised jointly when omitted
        tmr: Threshold minimum rate of UE_2
        method: Moment evaluation used for C-NOMA (EXACT or APPROX)
        grid: Number of P_2 candidates on (0, 1)
        tmr_tol: Admissible |rate_2 - tmr| of the returned allocation
    """

    params: NetworkParams
    scheme: Scheme
    theta_1: float | None = Field(default=None, gt=0.0)
    tmr: float = Field(gt=0.0)
    method: MomentMethod = MomentMethod.EXACT
    grid: int = Field(default=DEFAULT_RA_GRID, ge=8)
    tmr_tol: float = Field(default=DEFAULT_TMR_TOL, gt=0.0)

    @model_validator(mode="after")
    def check_problem(self) -> "RAProblem":
        """Two users and an analytic moment method."""
        if self.params.n_users != 2:
            raise ValueError(f"the TMR solver handles N = 2 only, got N = {self.params.n_users}")
        if self.method is MomentMethod.SIMULATED:
            raise ValueError("resource allocation needs analytic moments")
        return self


class RAResult(NomaBaseModel):
    """Allocation returned by the TMR solver.

    Attributes:
        p2: Power share of UE_2 (P_1 = 1 - p2)
        theta_1: SIR threshold of UE_1
        theta_2: SIR threshold of UE_2, on the lower branch of the TMR equality
        rate_1: Rate of UE_1 from the true moments
        rate_2: Rate of UE_2 from the true moments, equal to the TMR
        total_rate: rate_1 + rate_2
        grid_rate: Best total rate over the P_2 (and theta_1) grid, tabulated moments
        search_rate: Total rate after refinement, tabulated moments; never below grid_rate
    """

    p2: float = Field(gt=0.0, lt=1.0)
    theta_1: float = Field(gt=0.0)
    theta_2: float = Field(gt=0.0)
    rate_1: float = Field(ge=0.0)
    rate_2: float = Field(ge=0.0)
    total_rate: float = Field(ge=0.0)
    grid_rate: float = Field(ge=0.0)
    search_rate: float = Field(ge=0.0)

    @property
    def allocation(self) -> Allocation:
        """The solved allocation."""
        return Allocation(powers=(1.0 - self.p2, self.p2), thresholds=(self.theta_1, self.theta_2))

    @property
    def theta_2_db(self) -> float:
        """theta_2 in dB."""
        return linear_to_db(self.theta_2)
