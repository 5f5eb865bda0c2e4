"""CCP moments of C-NOMA.

UEs are uniform in the in-disk of radius rho/2, where rho is the distance from the
serving BS to its nearest neighbour. Two evaluations are offered.

Exact (guard-zone) moments condition every UE on an interferer at distance rho and
clear the disk of radius rho - R_i around the UE of all other interferers. The
radial interference integral has the same hypergeometric closed form as in E-NOMA,
which leaves a double integral over (rho, R_i). With R_i = rho s / 2 the
hypergeometric argument M_i (s / (2 - s))^eta no longer depends on rho, so its
values are cached across the outer nodes.

Approximate moments replace the guard radius by R_i and drop the dedicated
interferer. The link-distance expectation then has a closed form in terms of the
lower incomplete gamma function and a single integral over rho remains.
"""

import logging
import math
from collections.abc import Callable
from functools import lru_cache

from noma_metadist.core.base import BaseEngineClient
from noma_metadist.core.exceptions import DomainError, NumericalFailureError
from noma_metadist.core.quadrature import integrate_1d
from noma_metadist.core.specfun import (
    DEFAULT_TOLERANCE,
    binomial,
    hyp2f1_cov,
    lower_inc_gamma_scaled,
)
from noma_metadist.distances import (
    nn_distance_pdf,
    nn_distance_quantile,
    ordered_pdf_cnoma,
    weak_coefficient,
)
from noma_metadist.enoma.client import pgfl_integral
from noma_metadist.models.common import MomentMethod, QuadratureConfig, Scheme, Tolerance
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import Allocation, NetworkParams, check_rank, effective_alloc

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureConfig()

# rho = 2 puts the in-disk on the unit interval, so the C-NOMA ordered density at
# r = s is the weight of the scaled link distance s = 2 R_i / rho.
_UNIT_DISK_RHO = 2.0


def _check_order(b: float) -> None:
    if not b > 0.0:
        raise DomainError(f"moment order b must be positive, got {b}")


def _certify(value: float, quad: QuadratureConfig, routine: str, detail: dict[str, float]) -> float:
    """Clip a quadrature moment into [0, 1] when it overshoots by less than the tolerance."""
    slack = 10.0 * max(quad.rel_tol, quad.abs_tol)
    if not -slack <= value <= 1.0 + slack:
        raise NumericalFailureError(routine, f"moment left [0, 1]: {value:.16g}", detail)
    return min(1.0, max(0.0, value))


def rho_cutoff(params: NetworkParams, quad: QuadratureConfig) -> float:
    """Upper limit of the truncated rho integral."""
    return nn_distance_quantile(params, quad.rho_cutoff_quantile)


def guard_zone_integral(
    m: float,
    r_link: float,
    guard: float,
    b: float,
    delta: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Closed form of int_guard^inf (1 - (1 + m r_link^eta / r^eta)^-b) r dr.

    Args:
        m: Threshold factor M_i, >= 0
        r_link: Link distance R_i, >= 0
        guard: Radius of the interference-free disk around the UE, > 0
        b: Moment order, > 0
        delta: 2/eta

    Returns:
        (guard^2 / 2) (2F1(b, -delta; 1-delta; -m (r_link/guard)^eta) - 1)
    """
    if not guard > 0.0:
        raise DomainError(f"guard radius must be positive, got {guard}")
    if not r_link >= 0.0:
        raise DomainError(f"link distance must be nonnegative, got {r_link}")
    if not m >= 0.0:
        raise DomainError(f"threshold factor must be nonnegative, got {m}")
    eta = 2.0 / delta
    x = m * (r_link / guard) ** eta
    return 0.5 * guard * guard * (hyp2f1_cov(b, delta, x, tol) - 1.0)


def moment_cnoma_exact(
    params: NetworkParams,
    alloc: Allocation,
    i: int,
    b: float = 1.0,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """b-th CCP moment of rank i under C-NOMA with the guard-zone interference model.

    Args:
        params: Network parameters
        alloc: Power and threshold allocation
        i: UE rank
        b: Moment order, > 0
        quad: Quadrature settings of the outer rho integral; the inner one is tighter
        tol: Special-function tolerance

    Returns:
        M_{i,b} in [0, 1]

    Raises:
        InfeasibleAllocationError: If the allocation has a non-positive margin
        NumericalFailureError: If either quadrature fails to converge
    """
    check_rank(i, params.n_users)
    m_i = effective_alloc(params, alloc).m_factor(i)
    return moment_cnoma_exact_given_m(params, i, m_i, b, quad, tol)


def moment_cnoma_exact_given_m(
    params: NetworkParams,
    i: int,
    m_i: float,
    b: float = 1.0,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Guard-zone b-th CCP moment of rank i as a function of its threshold factor M_i."""
    _check_order(b)
    n = params.n_users
    check_rank(i, n)
    if not m_i >= 0.0:
        raise DomainError(f"threshold factor must be nonnegative, got {m_i}")
    eta, delta = params.eta, params.delta
    scale = math.pi * params.lam

    @lru_cache(maxsize=4096)
    def link_terms(s: float) -> tuple[float, float]:
        # (ordered weight times nearest-interferer factor, guard-zone exponent per pi lambda rho^2)
        weight = ordered_pdf_cnoma(i, n, _UNIT_DISK_RHO, s)
        nearest = (1.0 + m_i * (0.5 * s) ** eta) ** (-b)
        guard_share = 1.0 - 0.5 * s
        hyp = hyp2f1_cov(b, delta, m_i * (s / (2.0 - s)) ** eta, tol)
        return weight * nearest, guard_share * guard_share * (hyp - 1.0)

    inner_quad = quad.inner()

    def given_rho(rho: float) -> float:
        exponent_scale = scale * rho * rho

        def integrand(s: float) -> float:
            factor, exponent = link_terms(s)
            return factor * math.exp(-exponent_scale * exponent)

        return integrate_1d(integrand, 0.0, 1.0, quad=inner_quad, routine="moment_cnoma_exact[s]")

    value = integrate_1d(
        lambda rho: nn_distance_pdf(params, rho) * given_rho(rho),
        0.0,
        rho_cutoff(params, quad),
        quad=quad,
        routine="moment_cnoma_exact[rho]",
    )
    logger.debug(
        "C-NOMA exact M_{%d,%g} = %.12g (M_i=%.6g, %d cached link terms)",
        i,
        b,
        value,
        m_i,
        link_terms.cache_info().currsize,
    )
    return _certify(value, quad, "moment_cnoma_exact", {"i": i, "b": b, "m_factor": m_i})


def _weak_term(j: int, n_users: int, x: float) -> float:
    return binomial(n_users - 1, j - 1) * n_users * lower_inc_gamma_scaled(j, x)


def _weak_sum(i: int, n_users: int, x: float) -> float:
    return math.fsum(
        weak_coefficient(i, m) * _weak_term(m, n_users, x) for m in range(i, n_users + 1)
    )


def _approx_rate(params: NetworkParams, m_factor: float, b: float, tol: Tolerance) -> float:
    """Coefficient c of rho^2 in the gamma argument, pi lambda (2F1 - 1) / 4."""
    return 0.25 * math.pi * params.lam * (hyp2f1_cov(b, params.delta, m_factor, tol) - 1.0)


def moment_cnoma_approx_given_rho(
    params: NetworkParams,
    alloc: Allocation,
    i: int,
    rho: float,
    b: float = 1.0,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Approximate b-th CCP moment of rank i conditioned on the nearest-neighbour distance."""
    _check_order(b)
    check_rank(i, params.n_users)
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    m_i = effective_alloc(params, alloc).m_factor(i)
    c = _approx_rate(params, m_i, b, tol)
    return _weak_sum(i, params.n_users, c * rho * rho)


def moment_cnoma_approx(
    params: NetworkParams,
    alloc: Allocation,
    i: int,
    b: float = 1.0,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """b-th CCP moment of rank i under C-NOMA with the single-integral approximation.

    Args:
        params: Network parameters
        alloc: Power and threshold allocation
        i: UE rank
        b: Moment order, > 0
        quad: Quadrature settings of the rho integral
        tol: Special-function tolerance

    Returns:
        Approximate M_{i,b} in [0, 1]

    Raises:
        InfeasibleAllocationError: If the allocation has a non-positive margin
        NumericalFailureError: If the quadrature fails to converge
    """
    check_rank(i, params.n_users)
    m_i = effective_alloc(params, alloc).m_factor(i)
    return moment_cnoma_approx_given_m(params, i, m_i, b, quad, tol)


def moment_cnoma_approx_given_m(
    params: NetworkParams,
    i: int,
    m_i: float,
    b: float = 1.0,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Approximate b-th CCP moment of rank i as a function of its threshold factor M_i."""
    _check_order(b)
    n = params.n_users
    check_rank(i, n)
    c = _approx_rate(params, m_i, b, tol)

    def integrand(rho: float) -> float:
        return nn_distance_pdf(params, rho) * _weak_sum(i, n, c * rho * rho)

    value = integrate_1d(
        integrand, 0.0, rho_cutoff(params, quad), quad=quad, routine="moment_cnoma_approx"
    )
    logger.debug("C-NOMA approx M_{%d,%g} = %.12g (M_i=%.6g)", i, b, value, m_i)
    return _certify(value, quad, "moment_cnoma_approx", {"i": i, "b": b, "m_factor": m_i})


def pgfl_cnoma_given_rho(
    i: int,
    params: NetworkParams,
    rho: float,
    f: Callable[[float], float],
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """PGFL of the relative distance process of rank i given rho, approximate model.

    Args:
        i: UE rank
        params: Network parameters
        rho: Nearest-neighbour distance of the serving BS, > 0
        f: Test function on (0, 1] with 0 <= f <= 1 and f(u) -> 1 fast enough as u -> 0
        quad: Quadrature settings of the inner integral

    Returns:
        E[prod_{y in R_i} f(y) | rho]
    """
    n = params.n_users
    check_rank(i, n)
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    inner = pgfl_integral(f, quad.inner())
    return _weak_sum(i, n, 0.5 * math.pi * params.lam * rho * rho * inner)


class CnomaClient(BaseEngineClient):
    """Client for C-NOMA moments.

    Example:
        ```python
        client = CnomaClient(NetworkParams())
        alloc = Allocation(powers=(1 / 3, 2 / 3), thresholds=(1.0, 1.0))
        exact = client.moment(alloc, i=2)
        approx = client.moment(alloc, i=2, method=MomentMethod.APPROX)
        ```
    """

    def moment(
        self,
        alloc: Allocation,
        i: int,
        b: float = 1.0,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> float:
        """b-th CCP moment of rank i.

        Raises:
            DomainError: If method is SIMULATED (use the simulator client)
        """
        if method is MomentMethod.EXACT:
            return moment_cnoma_exact(self._params, alloc, i, b, self._quadrature, self._tolerance)
        if method is MomentMethod.APPROX:
            return moment_cnoma_approx(self._params, alloc, i, b, self._quadrature, self._tolerance)
        raise DomainError(f"C-NOMA analytic moments cannot use method {method.value!r}")

    def moments(
        self, alloc: Allocation, i: int, method: MomentMethod = MomentMethod.EXACT
    ) -> MomentSet:
        """First and second CCP moments of rank i."""
        return MomentSet(
            scheme=Scheme.C_NOMA,
            method=method,
            rank=i,
            m1=self.moment(alloc, i, 1.0, method),
            m2=self.moment(alloc, i, 2.0, method),
        )

    def pgfl_given_rho(self, i: int, rho: float, f: Callable[[float], float]) -> float:
        """PGFL of the relative distance process of rank i given rho."""
        return pgfl_cnoma_given_rho(i, self._params, rho, f, self._quadrature)
