"""Moment request and result models."""

from pydantic import Field, model_validator

from noma_metadist.models.common import MomentMethod, NomaBaseModel, Scheme


class MomentRequest(NomaBaseModel):
    """One CCP moment to evaluate.

    Attributes:
        rank: UE rank i (1 is nearest the BS)
        order: Moment order b, > 0
        scheme: UE placement scheme
        method: Evaluation method
    """

    rank: int = Field(ge=1)
    order: float = Field(default=1.0, gt=0.0)
    scheme: Scheme = Scheme.E_NOMA
    method: MomentMethod = MomentMethod.EXACT


class MomentSet(NomaBaseModel):
    """First two CCP moments of one UE rank.

    Attributes:
        scheme: UE placement scheme
        method: How the moments were obtained
        rank: UE rank i
        m1: First moment (the SCP)
        m2: Second moment
        m1_std_err: Standard error of m1 (simulated moments only)
        m2_std_err: Standard error of m2 (simulated moments only)
    """

    scheme: Scheme
    method: MomentMethod
    rank: int = Field(ge=1)
    m1: float
    m2: float
    m1_std_err: float | None = None
    m2_std_err: float | None = None

    @model_validator(mode="after")
    def check_error_bars(self) -> "MomentSet":
        """Only simulated moments carry standard errors."""
        has_errors = self.m1_std_err is not None or self.m2_std_err is not None
        if has_errors and self.method is not MomentMethod.SIMULATED:
            raise ValueError(f"{self.method.value} moments carry no standard error")
        return self

    @property
    def variance(self) -> float:
        """m2 - m1^2."""
        return self.m2 - self.m1 * self.m1
