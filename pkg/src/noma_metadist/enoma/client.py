"""Closed-form CCP moments of E-NOMA.

UEs are uniform over the whole Voronoi cell, so link distances are Rayleigh and the
interference-exclusion region of UE_i is the disk of radius R_i. The b-th moment of
the CCP of rank i is an alternating sum, over the smaller ranks m <= i, of the terms

    C(N-1, m-1) N / (N - m + 2F1(b, -delta; 1-delta; -M_i)).

The same terms come out of the PGFL of the relative distance process, which is
exposed for arbitrary test functions.
"""

import logging
import math
from collections.abc import Callable

from noma_metadist.core.base import BaseEngineClient
from noma_metadist.core.config import MOMENT_SLACK
from noma_metadist.core.exceptions import DomainError, NumericalFailureError
from noma_metadist.core.quadrature import integrate_1d
from noma_metadist.core.specfun import DEFAULT_TOLERANCE, binomial, hyp2f1_cov
from noma_metadist.distances import strong_coefficient
from noma_metadist.models.common import MomentMethod, QuadratureConfig, Scheme, Tolerance
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import Allocation, NetworkParams, check_rank, effective_alloc

logger = logging.getLogger(__name__)

# The PGFL integral needs 1 - f(u) = o(u^2) as u -> 0; a check at a small u rejects test
# functions that stay away from 1 there.
_PGFL_CHECK_POINT = 1e-6


def _check_order(b: float) -> None:
    if not b > 0.0:
        raise DomainError(f"moment order b must be positive, got {b}")


def _strong_term(j: int, n_users: int, denominator: float) -> float:
    return binomial(n_users - 1, j - 1) * n_users / denominator


def mtilde_enoma(
    j: int,
    i: int,
    params: NetworkParams,
    m_factor: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Strong-expansion component j of the b-th moment of rank i.

    Args:
        j: Component rank, 1 <= j <= i
        i: Target rank, i <= N
        params: Network parameters
        m_factor: M_i of the target rank
        b: Moment order, > 0
        tol: Special-function tolerance

    Returns:
        C(N-1, j-1) N / (N - j + 2F1(b, -delta; 1-delta; -M_i))

    Raises:
        DomainError: If j or i is out of range, b <= 0 or m_factor < 0
    """
    n = params.n_users
    check_rank(i, n)
    if not 1 <= j <= i:
        raise DomainError(f"component rank j={j} must satisfy 1 <= j <= i={i}")
    _check_order(b)
    hyp = hyp2f1_cov(b, params.delta, m_factor, tol)
    return _strong_term(j, n, n - j + hyp)


def moment_enoma(
    params: NetworkParams,
    alloc: Allocation,
    i: int,
    b: float = 1.0,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """b-th moment of the CCP of rank i under E-NOMA.

    Args:
        params: Network parameters
        alloc: Power and threshold allocation
        i: UE rank
        b: Moment order, > 0
        tol: Special-function tolerance

    Returns:
        M_{i,b} in [0, 1]

    Raises:
        InfeasibleAllocationError: If the allocation has a non-positive margin
        NumericalFailureError: If cancellation pushes the sum outside [0, 1]
    """
    check_rank(i, params.n_users)
    return moment_enoma_given_m(params, i, effective_alloc(params, alloc).m_factor(i), b, tol)


def moment_enoma_given_m(
    params: NetworkParams,
    i: int,
    m_i: float,
    b: float = 1.0,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """b-th CCP moment of rank i as a function of its threshold factor M_i.

    The allocation enters the moments only through M_i, which lets resource
    allocation tabulate the moments once per rank.

    Raises:
        DomainError: If i is out of range, b <= 0 or m_i < 0
        NumericalFailureError: If cancellation pushes the sum outside [0, 1]
    """
    _check_order(b)
    n = params.n_users
    check_rank(i, n)
    hyp = hyp2f1_cov(b, params.delta, m_i, tol)

    value = math.fsum(
        strong_coefficient(i, m, n) * _strong_term(m, n, n - m + hyp) for m in range(1, i + 1)
    )
    if not -MOMENT_SLACK <= value <= 1.0 + MOMENT_SLACK:
        raise NumericalFailureError(
            "moment_enoma",
            f"alternating sum left [0, 1]: {value:.16g}",
            {"i": i, "b": b, "m_factor": m_i, "hyp2f1": hyp},
        )
    logger.debug("E-NOMA M_{%d,%g} = %.12g (M_i=%.6g)", i, b, value, m_i)
    return value


def pgfl_integral(f: Callable[[float], float], quad: QuadratureConfig) -> float:
    """Return int_1^inf (1 - f(1/y)) y dy, computed as int_0^1 (1 - f(u)) u^-3 du.

    Raises:
        NumericalFailureError: If the integral diverges or does not converge
    """
    if 1.0 - f(_PGFL_CHECK_POINT) > _PGFL_CHECK_POINT:
        raise NumericalFailureError(
            "pgfl_integral",
            "test function does not approach 1 at the origin; the PGFL integral diverges",
            {"u": _PGFL_CHECK_POINT, "f(u)": f(_PGFL_CHECK_POINT)},
        )

    def integrand(u: float) -> float:
        if u == 0.0:
            return 0.0
        return (1.0 - f(u)) / (u * u * u)

    return integrate_1d(integrand, 0.0, 1.0, quad=quad, routine="pgfl_integral")


def pgfl_enoma(
    i: int,
    params: NetworkParams,
    f: Callable[[float], float],
    quad: QuadratureConfig | None = None,
) -> float:
    """PGFL of the relative distance process of rank i under E-NOMA.

    Args:
        i: UE rank
        params: Network parameters
        f: Test function on (0, 1] with 0 <= f <= 1 and f(u) -> 1 fast enough as u -> 0
        quad: Quadrature settings for the inner integral

    Returns:
        E[prod_{y in R_i} f(y)]

    Raises:
        NumericalFailureError: If the inner integral diverges or fails to converge
    """
    n = params.n_users
    check_rank(i, n)
    quad = quad or QuadratureConfig()
    inner = pgfl_integral(f, quad.inner())
    return math.fsum(
        strong_coefficient(i, m, n) * _strong_term(m, n, n - m + 1.0 + 2.0 * inner)
        for m in range(1, i + 1)
    )


def moment_kernel(params: NetworkParams, m_factor: float, b: float) -> Callable[[float], float]:
    """Test function (1 + M_i y^eta)^-b whose PGFL is the b-th CCP moment."""
    eta = params.eta
    return lambda y: float((1.0 + m_factor * y**eta) ** (-b))


class EnomaClient(BaseEngineClient):
    """Client for E-NOMA moments.

    Example:
        ```python
        client = EnomaClient(NetworkParams())
        alloc = Allocation(powers=(0.5, 0.5), thresholds=(1.0, 0.5))
        scp = client.moment(alloc, i=1)
        pair = client.moments(alloc, i=2)
        ```
    """

    def moment(self, alloc: Allocation, i: int, b: float = 1.0) -> float:
        """b-th CCP moment of rank i."""
        return moment_enoma(self._params, alloc, i, b, self._tolerance)

    def moments(self, alloc: Allocation, i: int) -> MomentSet:
        """First and second CCP moments of rank i."""
        return MomentSet(
            scheme=Scheme.E_NOMA,
            method=MomentMethod.EXACT,
            rank=i,
            m1=self.moment(alloc, i, 1.0),
            m2=self.moment(alloc, i, 2.0),
        )

    def pgfl(self, i: int, f: Callable[[float], float]) -> float:
        """PGFL of the relative distance process of rank i."""
        return pgfl_enoma(i, self._params, f, self._quadrature)
