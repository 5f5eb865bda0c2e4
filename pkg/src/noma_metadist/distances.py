"""Link-distance and nearest-neighbour distance laws.

Unordered laws of a UE's link distance under both placement schemes, the law of the
distance from a BS to its nearest neighbour, and the order statistics built from
them. The ordered density of rank i has three equivalent forms:

* the direct form ``C(N-1, i-1) N f F^(i-1) (1-F)^(N-i)``,
* a weak expansion over the components ``C(N-1, j-1) N f F^(j-1)`` for j >= i,
* a strong expansion over the components ``C(N-1, j-1) N f (1-F)^(N-j)`` for j <= i.

The moment formulas of both schemes are assembled from the expansion coefficients
defined here.
"""

import math
from collections.abc import Callable

from pydantic import Field

from noma_metadist.core.exceptions import DomainError
from noma_metadist.core.specfun import binomial
from noma_metadist.models.common import NomaBaseModel
from noma_metadist.models.network import NetworkParams, check_rank


class DistanceLaw(NomaBaseModel):
    """A pdf/cdf pair of a nonnegative distance.

    Attributes:
        name: Short label used in logs
        pdf: Density function
        cdf: Distribution function
        support: Upper end of the support (math.inf when unbounded)
    """

    name: str
    pdf: Callable[[float], float]
    cdf: Callable[[float], float]
    support: float = Field(default=math.inf, gt=0.0)


def _check_distance(r: float, what: str = "distance") -> None:
    if not r >= 0.0:
        raise DomainError(f"{what} must be nonnegative, got {r}")


def unordered_pdf_enoma(params: NetworkParams, r: float) -> float:
    """Rayleigh link-distance density 2 pi lambda r exp(-pi lambda r^2)."""
    _check_distance(r)
    scale = math.pi * params.lam
    return 2.0 * scale * r * math.exp(-scale * r * r)


def unordered_cdf_enoma(params: NetworkParams, r: float) -> float:
    """Rayleigh link-distance distribution 1 - exp(-pi lambda r^2)."""
    _check_distance(r)
    return -math.expm1(-math.pi * params.lam * r * r)


def nn_distance_pdf(params: NetworkParams, x: float) -> float:
    """Density of the distance from a BS to its nearest neighbouring BS.

    Same Rayleigh law as the E-NOMA link distance; E[rho] = 1/(2 sqrt(lambda)).
    """
    _check_distance(x, "nearest-neighbour distance")
    return unordered_pdf_enoma(params, x)


def nn_distance_cdf(params: NetworkParams, x: float) -> float:
    """Distribution function of the nearest-neighbour BS distance."""
    _check_distance(x, "nearest-neighbour distance")
    return unordered_cdf_enoma(params, x)


def nn_distance_quantile(params: NetworkParams, q: float) -> float:
    """Analytic inverse of nn_distance_cdf.

    Args:
        params: Network parameters
        q: Probability in [0, 1)

    Returns:
        The distance x with nn_distance_cdf(x) = q

    Raises:
        DomainError: If q is outside [0, 1)
    """
    if not 0.0 <= q < 1.0:
        raise DomainError(f"quantile level must lie in [0, 1), got {q}")
    return math.sqrt(-math.log1p(-q) / (math.pi * params.lam))


def unordered_pdf_cnoma(rho: float, r: float) -> float:
    """Link-distance density of a UE uniform in the in-disk, 8 r / rho^2 on [0, rho/2]."""
    _check_cnoma_args(rho, r)
    if r > rho / 2.0:
        return 0.0
    return 8.0 * r / (rho * rho)


def unordered_cdf_cnoma(rho: float, r: float) -> float:
    """Conditional link-distance distribution 4 r^2 / rho^2, capped at 1."""
    _check_cnoma_args(rho, r)
    return min(1.0, 4.0 * r * r / (rho * rho))


def _check_cnoma_args(rho: float, r: float) -> None:
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    _check_distance(r)


def enoma_law(params: NetworkParams) -> DistanceLaw:
    """Unordered link-distance law of E-NOMA."""
    return DistanceLaw(
        name="e-noma",
        pdf=lambda r: unordered_pdf_enoma(params, r),
        cdf=lambda r: unordered_cdf_enoma(params, r),
    )


def cnoma_law(rho: float) -> DistanceLaw:
    """Unordered link-distance law of C-NOMA given the nearest-neighbour distance rho."""
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    return DistanceLaw(
        name="c-noma",
        pdf=lambda r: unordered_pdf_cnoma(rho, r),
        cdf=lambda r: unordered_cdf_cnoma(rho, r),
        support=rho / 2.0,
    )


def ordered_pdf(i: int, n_users: int, law: DistanceLaw, r: float) -> float:
    """Density of the i-th smallest of n_users i.i.d. distances.

    Args:
        i: Rank, 1 <= i <= n_users
        n_users: Group size N
        law: Unordered distance law
        r: Evaluation point, >= 0

    Returns:
        C(N-1, i-1) N f(r) F(r)^(i-1) (1 - F(r))^(N-i)

    Raises:
        DomainError: If i is out of range or r < 0
    """
    check_rank(i, n_users)
    _check_distance(r)
    if r > law.support:
        return 0.0
    f = law.pdf(r)
    big_f = law.cdf(r)
    return binomial(n_users - 1, i - 1) * n_users * f * big_f ** (i - 1) * (1.0 - big_f) ** (
        n_users - i
    )


def weak_component_pdf(j: int, n_users: int, law: DistanceLaw, r: float) -> float:
    """Component C(N-1, j-1) N f F^(j-1) of the weak expansion."""
    check_rank(j, n_users)
    _check_distance(r)
    if r > law.support:
        return 0.0
    return binomial(n_users - 1, j - 1) * n_users * law.pdf(r) * law.cdf(r) ** (j - 1)


def strong_component_pdf(j: int, n_users: int, law: DistanceLaw, r: float) -> float:
    """Component C(N-1, j-1) N f (1-F)^(N-j) of the strong expansion."""
    check_rank(j, n_users)
    _check_distance(r)
    if r > law.support:
        return 0.0
    return binomial(n_users - 1, j - 1) * n_users * law.pdf(r) * (1.0 - law.cdf(r)) ** (n_users - j)


def weak_coefficient(i: int, m: int) -> int:
    """Weight (-1)^(m-i) C(m-1, i-1) of component m >= i in the weak expansion of rank i."""
    return (-1) ** (m - i) * binomial(m - 1, i - 1)


def strong_coefficient(i: int, m: int, n_users: int) -> int:
    """Weight (-1)^(i-m) (N-m)! / ((N-i)! (i-m)!) of component m <= i in the strong expansion.

    The weight is the integer C(N-m, i-m) with alternating sign.
    """
    return (-1) ** (i - m) * binomial(n_users - m, i - m)


def ordered_pdf_weak_expansion(i: int, n_users: int, law: DistanceLaw, r: float) -> float:
    """Ordered density of rank i written over the components of ranks i..N."""
    check_rank(i, n_users)
    return math.fsum(
        weak_coefficient(i, m) * weak_component_pdf(m, n_users, law, r)
        for m in range(i, n_users + 1)
    )


def ordered_pdf_strong_expansion(i: int, n_users: int, law: DistanceLaw, r: float) -> float:
    """Ordered density of rank i written over the components of ranks 1..i."""
    check_rank(i, n_users)
    return math.fsum(
        strong_coefficient(i, m, n_users) * strong_component_pdf(m, n_users, law, r)
        for m in range(1, i + 1)
    )


def ordered_pdf_cnoma(i: int, n_users: int, rho: float, r: float) -> float:
    """Ordered link-distance density of C-NOMA given rho, zero outside [0, rho/2]."""
    _check_cnoma_args(rho, r)
    return ordered_pdf(i, n_users, cnoma_law(rho), r)


def ordered_law(i: int, n_users: int, law: DistanceLaw) -> Callable[[float], float]:
    """Density function of rank i, convenient as a quadrature integrand."""
    check_rank(i, n_users)
    return lambda r: ordered_pdf(i, n_users, law, r)
