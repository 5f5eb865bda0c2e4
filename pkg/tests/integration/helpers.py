"""Integration test helpers.

Shared checks for comparing analytic moments and meta distributions with their
Monte Carlo counterparts.
"""

from noma_metadist.client import NomaClient
from noma_metadist.core.exceptions import InfeasibleAllocationError
from noma_metadist.metadist import variance
from noma_metadist.models.common import MomentMethod, Scheme
from noma_metadist.models.network import Allocation


def assert_within_envelope(
    analytic: float, empirical: float, std_err: float, envelope: float, label: str
) -> None:
    """Assert |analytic - empirical| <= envelope, the measured gap for this quantity.

    Args:
        analytic: Analytic value
        empirical: Monte Carlo estimate
        std_err: Standard error of the estimate, shown on failure
        envelope: Largest gap accepted
        label: Name of the compared quantity, shown on failure

    Raises:
        AssertionError: If the gap exceeds the envelope
    """
    gap = abs(analytic - empirical)
    assert gap <= envelope, (
        f"{label}: analytic {analytic:.5f} vs empirical {empirical:.5f} "
        f"(gap {gap:.5f} > {envelope:.5f}, SE {std_err:.5f})"
    )


def scp_and_variance(
    client: NomaClient, scheme: Scheme, alloc: Allocation, i: int, method: MomentMethod
) -> tuple[float, float]:
    """SCP and CCP variance of rank i, both zero for an infeasible allocation.

    Example:
        ```python
        scp, var = scp_and_variance(client, Scheme.C_NOMA, alloc, 2, MomentMethod.APPROX)
        ```
    """
    try:
        moments = client.moments(scheme, alloc, i, method)
    except InfeasibleAllocationError:
        return 0.0, 0.0
    return moments.m1, variance(moments.m1, moments.m2)
