"""Command-line run configuration models.

A run is one scheme, one network and one allocation, optionally swept over a single
variable. The resolved RunConfig is written next to every output file, so a run can
be repeated from its manifest alone.
"""

from enum import StrEnum
from pathlib import Path

import numpy as np
from pydantic import Field, model_validator

from noma_metadist.core.config import DEFAULT_REALIZATIONS, DEFAULT_SEED
from noma_metadist.models.common import MomentMethod, NomaBaseModel, Scheme
from noma_metadist.models.network import Allocation, NetworkParams, db_to_linear


class RunMode(StrEnum):
    """Which estimates a run produces.

    Attributes:
        ANALYTIC_EXACT: Closed-form or guard-zone moments
        ANALYTIC_APPROX: Single-integral C-NOMA moments (E-NOMA is unchanged)
        SIMULATE: Monte Carlo estimates only
        BOTH: Exact analytic moments next to Monte Carlo estimates
    """

    ANALYTIC_EXACT = "analytic-exact"
    ANALYTIC_APPROX = "analytic-approx"
    SIMULATE = "simulate"
    BOTH = "both"

    @property
    def analytic_method(self) -> MomentMethod | None:
        """Analytic moment method of this mode, None when nothing analytic is computed."""
        if self is RunMode.SIMULATE:
            return None
        if self is RunMode.ANALYTIC_APPROX:
            return MomentMethod.APPROX
        return MomentMethod.EXACT

    @property
    def simulates(self) -> bool:
        """Whether the mode runs the simulator."""
        return self in (RunMode.SIMULATE, RunMode.BOTH)


class ThresholdUnit(StrEnum):
    """Unit in which thresholds were given on the command line."""

    DB = "db"
    LINEAR = "linear"


class SweepVariable(StrEnum):
    """Quantity varied by a sweep.

    Attributes:
        THETA_DB: Common threshold of every UE, in dB
        THETA1_DB: Threshold of UE_1, in dB
        THETA2_DB: Threshold of UE_2, in dB
        P1: Power share of UE_1; the other shares keep their proportions
        BETA: Residual SIC fraction
        LAMBDA: BS intensity
        ETA: Path-loss exponent
    """

    THETA_DB = "theta_db"
    THETA1_DB = "theta1_db"
    THETA2_DB = "theta2_db"
    P1 = "p1"
    BETA = "beta"
    LAMBDA = "lambda"
    ETA = "eta"


class SweepSpec(NomaBaseModel):
    """A linear sweep of one variable.

    Attributes:
        variable: Swept quantity
        start: First value
        stop: Last value
        steps: Number of values, endpoints included
    """

    variable: SweepVariable
    start: float
    stop: float
    steps: int = Field(ge=1)

    def values(self) -> list[float]:
        """Sweep values, start and stop included."""
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]

    def apply(
        self, params: NetworkParams, alloc: Allocation, value: float
    ) -> tuple[NetworkParams, Allocation]:
        """Network and allocation at one sweep value.

        Raises:
            pydantic.ValidationError: If the value is outside the variable's domain
        """
        var = self.variable
        network_fields = {
            SweepVariable.BETA: "beta_sic",
            SweepVariable.LAMBDA: "lam",
            SweepVariable.ETA: "eta",
        }
        if var in network_fields:
            fields = params.model_dump(exclude={"delta"})
            fields[network_fields[var]] = value
            return NetworkParams.model_validate(fields), alloc

        thresholds = list(alloc.thresholds)
        powers = list(alloc.powers)
        if var is SweepVariable.THETA_DB:
            thresholds = [db_to_linear(value)] * len(thresholds)
        elif var is SweepVariable.THETA1_DB:
            thresholds[0] = db_to_linear(value)
        elif var is SweepVariable.THETA2_DB:
            if len(thresholds) < 2:
                raise ValueError("theta2_db sweeps need at least two users")
            thresholds[1] = db_to_linear(value)
        else:
            rest = sum(powers[1:])
            powers = [value] + [p * (1.0 - value) / rest for p in powers[1:]] if rest else [value]
        return params, Allocation(powers=tuple(powers), thresholds=tuple(thresholds))


class RunConfig(NomaBaseModel):
    """Fully resolved command-line run.

    Attributes:
        command: Subcommand that produced the output
        scheme: UE placement scheme
        params: Network parameters
        allocation: Power shares and linear thresholds
        thresholds_unit: Unit the thresholds were given in
        mode: Estimates to produce
        sweep: Optional one-variable sweep
        ranks: UE ranks to report; every rank when omitted
        orders: Moment orders b
        alphas: Reliability levels of meta-distribution output
        realizations: Monte Carlo realizations
        seed: Root seed of the simulator
        workers: Simulator worker processes
        out: Output CSV path (a directory for reproduce)
        tmr: Threshold minimum rate of UE_2 (allocate only)
        theta1_db: Fixed theta_1 in dB (allocate only); optimised when omitted
    """

    command: str
    scheme: Scheme
    params: NetworkParams
    allocation: Allocation
    thresholds_unit: ThresholdUnit = ThresholdUnit.DB
    mode: RunMode = RunMode.ANALYTIC_EXACT
    sweep: SweepSpec | None = None
    ranks: tuple[int, ...] | None = None
    orders: tuple[float, ...] = (1.0, 2.0)
    alphas: tuple[float, ...] = ()
    realizations: int = Field(default=DEFAULT_REALIZATIONS, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    workers: int = Field(default=1, ge=1)
    out: Path | None = None
    tmr: float | None = Field(default=None, gt=0.0)
    theta1_db: float | None = None

    @model_validator(mode="after")
    def check_run(self) -> "RunConfig":
        """Allocation size matches the network and every order is positive."""
        if self.allocation.n_users != self.params.n_users:
            raise ValueError(
                f"{self.allocation.n_users} powers given for {self.params.n_users} users"
            )
        if any(b <= 0.0 for b in self.orders):
            raise ValueError(f"moment orders must be positive, got {self.orders}")
        if self.ranks is not None and any(not 1 <= i <= self.params.n_users for i in self.ranks):
            raise ValueError(f"ranks must lie in 1..{self.params.n_users}, got {self.ranks}")
        if any(not 0.0 <= a <= 1.0 for a in self.alphas):
            raise ValueError(f"alpha values must lie in [0, 1], got {self.alphas}")
        return self

    def points(self) -> list[tuple[float | None, NetworkParams, Allocation]]:
        """(sweep value, network, allocation) of every point of the run."""
        if self.sweep is None:
            return [(None, self.params, self.allocation)]
        return [
            (value, *self.sweep.apply(self.params, self.allocation, value))
            for value in self.sweep.values()
        ]

    def rank_list(self) -> list[int]:
        """Requested ranks, every rank by default."""
        if self.ranks is None:
            return list(range(1, self.params.n_users + 1))
        return list(self.ranks)
