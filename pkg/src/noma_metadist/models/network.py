"""Network and allocation models.

Houses the PPP/path-loss parameters, the NOMA power and threshold allocation, and
the effective-margin algebra that reduces the joint SIC coverage event of UE_i to a
single threshold M_i.
"""

import math
from collections.abc import Sequence

from pydantic import Field, computed_field, field_validator, model_validator

from noma_metadist.core.exceptions import DomainError, InfeasibleAllocationError
from noma_metadist.models.common import NomaBaseModel

POWER_BUDGET_TOL = 1e-9


def db_to_linear(value_db: float) -> float:
    """Convert a ratio from dB to linear units."""
    return float(10.0 ** (value_db / 10.0))


def linear_to_db(value: float) -> float:
    """Convert a positive linear ratio to dB.

    Raises:
        DomainError: If value is not positive
    """
    if not value > 0.0:
        raise DomainError(f"cannot express {value} in dB")
    return 10.0 * math.log10(value)


class NetworkParams(NomaBaseModel):
    """PPP cellular network with NOMA groups.

    Attributes:
        lam: BS intensity per unit area (alias "lambda")
        eta: Path-loss exponent, > 2
        beta_sic: Fraction of canceled intracell power left as residual interference
        n_users: NOMA group size N
    """

    lam: float = Field(default=10.0, gt=0.0, alias="lambda")
    eta: float = Field(default=4.0, gt=2.0)
    beta_sic: float = Field(default=0.0, ge=0.0, le=1.0)
    n_users: int = Field(default=2, ge=1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def delta(self) -> float:
        """2/eta, always derived."""
        return 2.0 / self.eta


class Allocation(NomaBaseModel):
    """Per-rank power shares and SIR thresholds.

    Rank 1 is the UE nearest to the BS. Thresholds are in linear units.

    Attributes:
        powers: P_1..P_N, positive, summing to the unit power budget
        thresholds: theta_1..theta_N, positive
    """

    powers: tuple[float, ...]
    thresholds: tuple[float, ...]

    @field_validator("powers", "thresholds")
    @classmethod
    def check_positive(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Require a non-empty vector of positive finite entries."""
        if not v:
            raise ValueError("at least one NOMA user is required")
        if any(not (math.isfinite(x) and x > 0.0) for x in v):
            raise ValueError(f"entries must be positive and finite, got {v}")
        return v

    @model_validator(mode="after")
    def check_budget(self) -> "Allocation":
        """Require matching lengths and sum(P_i) = 1."""
        if len(self.powers) != len(self.thresholds):
            raise ValueError(
                f"{len(self.powers)} powers but {len(self.thresholds)} thresholds were given"
            )
        total = math.fsum(self.powers)
        if abs(total - 1.0) > POWER_BUDGET_TOL:
            raise ValueError(f"powers must sum to 1 (power budget), got {total:.12g}")
        return self

    @classmethod
    def from_db(cls, powers: Sequence[float], thresholds_db: Sequence[float]) -> "Allocation":
        """Build an allocation from thresholds given in dB."""
        return cls(
            powers=tuple(float(p) for p in powers),
            thresholds=tuple(db_to_linear(t) for t in thresholds_db),
        )

    @property
    def n_users(self) -> int:
        """Number of NOMA users."""
        return len(self.powers)

    @property
    def thresholds_db(self) -> tuple[float, ...]:
        """Thresholds in dB."""
        return tuple(linear_to_db(t) for t in self.thresholds)


class EffectiveAlloc(NomaBaseModel):
    """Effective power margins and decoding thresholds of a feasible allocation.

    Attributes:
        tilde_p: P~_j = P_j - theta_j (sum_{m<j} P_m + beta * sum_{k>j} P_k)
        m_factors: M_i = max_{i<=j<=N} theta_j / P~_j, nonincreasing in i
    """

    tilde_p: tuple[float, ...]
    m_factors: tuple[float, ...]

    def m_factor(self, i: int) -> float:
        """M_i for the 1-based rank i."""
        check_rank(i, len(self.m_factors))
        return self.m_factors[i - 1]


def check_rank(i: int, n_users: int) -> None:
    """Raise DomainError unless 1 <= i <= n_users."""
    if not 1 <= i <= n_users:
        raise DomainError(f"rank i={i} is outside 1..{n_users}")


def effective_alloc(params: NetworkParams, alloc: Allocation) -> EffectiveAlloc:
    """Reduce the joint SIC event to per-rank thresholds.

    Args:
        params: Network parameters (beta_sic and n_users are used)
        alloc: Power shares and thresholds

    Returns:
        The effective margins P~_j and thresholds M_i

    Raises:
        DomainError: If the allocation size differs from params.n_users
        InfeasibleAllocationError: If any P~_j <= 0 (the CCP is then zero)
    """
    n = params.n_users
    if alloc.n_users != n:
        raise DomainError(f"allocation has {alloc.n_users} users, network expects {n}")

    powers = alloc.powers
    tilde_p = []
    for j in range(n):
        intracell = math.fsum(powers[:j]) + params.beta_sic * math.fsum(powers[j + 1 :])
        tilde_p.append(powers[j] - alloc.thresholds[j] * intracell)

    for j, margin in enumerate(tilde_p, start=1):
        if margin <= 0.0:
            raise InfeasibleAllocationError(j, tilde_p)

    ratios = [theta / margin for theta, margin in zip(alloc.thresholds, tilde_p, strict=True)]
    m_factors = [0.0] * n
    running = 0.0
    for j in reversed(range(n)):
        running = max(running, ratios[j])
        m_factors[j] = running

    return EffectiveAlloc(tilde_p=tuple(tilde_p), m_factors=tuple(m_factors))
