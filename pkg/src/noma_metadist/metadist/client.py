"""Beta moment-matched meta distributions.

The meta distribution of UE_i is the complementary cdf of its CCP,
P(P_Ci > alpha), i.e. the fraction of UE_i in the network that reach coverage
probability alpha. It is approximated by the beta distribution sharing its first
two moments.
"""

import logging
import math
from collections.abc import Sequence

from scipy import optimize, special

from noma_metadist.core.base import BaseEngineClient
from noma_metadist.core.config import DEGENERATE_VARIANCE, MOMENT_SLACK, QUANTILE_XTOL
from noma_metadist.core.exceptions import DomainError, InvalidMomentsError
from noma_metadist.core.specfun import reg_inc_beta
from noma_metadist.models.metadist import BetaMD, DegenerateMD, MetaDistribution
from noma_metadist.models.moments import MomentSet

logger = logging.getLogger(__name__)


def _check_moments(m1: float, m2: float) -> tuple[float, float]:
    """Validate a moment pair up to MOMENT_SLACK and clip it onto the admissible set."""
    admissible = (
        -MOMENT_SLACK <= m1 <= 1.0 + MOMENT_SLACK
        and m2 <= m1 + MOMENT_SLACK
        and m2 >= m1 * m1 - MOMENT_SLACK
    )
    if not admissible or math.isnan(m1) or math.isnan(m2):
        raise InvalidMomentsError(m1, m2)
    m1 = min(1.0, max(0.0, m1))
    m2 = min(m1, max(m1 * m1, m2))
    return m1, m2


def build_md(m1: float, m2: float) -> MetaDistribution:
    """Match a meta distribution to the first two CCP moments.

    Args:
        m1: First moment M_{i,1}
        m2: Second moment M_{i,2}

    Returns:
        A BetaMD with mean m1 and second moment m2, or a DegenerateMD when the
        variance is below DEGENERATE_VARIANCE (point mass at m1) or m2 = m1 (atoms
        at 0 and 1)

    Raises:
        InvalidMomentsError: If m1^2 <= m2 <= m1 <= 1 fails beyond MOMENT_SLACK
    """
    m1, m2 = _check_moments(m1, m2)
    var = m2 - m1 * m1
    if var < DEGENERATE_VARIANCE:
        logger.debug("zero variance at m1=%.12g, using a point mass", m1)
        return DegenerateMD.point(m1)
    if m1 - m2 <= MOMENT_SLACK:
        logger.debug("m2 = m1 = %.12g, using the two-point law", m1)
        return DegenerateMD(atoms=(0.0, 1.0), weights=(1.0 - m1, m1))
    return BetaMD(m1=m1, m2=m2)


def md_ccdf(md: MetaDistribution, alpha: float) -> float:
    """Fraction of UEs whose CCP exceeds alpha.

    Args:
        md: Meta distribution
        alpha: Reliability level in [0, 1]

    Returns:
        P(P_C > alpha); for a BetaMD this is 1 - I_alpha(shape_a, shape_b)
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if isinstance(md, DegenerateMD):
        above = math.fsum(w for x, w in zip(md.atoms, md.weights, strict=True) if x > alpha)
        return min(1.0, above)
    return 1.0 - reg_inc_beta(alpha, md.shape_a, md.shape_b)


def md_cdf(md: MetaDistribution, alpha: float) -> float:
    """P(P_C <= alpha)."""
    return 1.0 - md_ccdf(md, alpha)


def md_moment(md: MetaDistribution, b: float) -> float:
    """b-th moment of the meta distribution in closed form.

    For a beta law this is B(a + b, shape_b) / B(a, shape_b); it reproduces m1 and m2
    at b = 1 and b = 2.
    """
    if not b > 0.0:
        raise DomainError(f"moment order b must be positive, got {b}")
    if isinstance(md, DegenerateMD):
        return math.fsum(w * x**b for x, w in zip(md.atoms, md.weights, strict=True))
    a, shape_b = md.shape_a, md.shape_b
    return float(math.exp(special.betaln(a + b, shape_b) - special.betaln(a, shape_b)))


def md_inverse_ccdf(md: MetaDistribution, fraction: float) -> float:
    """Reliability level reached by the given fraction of UEs.

    Args:
        md: Meta distribution
        fraction: Target value of the ccdf, in [0, 1]

    Returns:
        alpha with md_ccdf(md, alpha) = fraction, to QUANTILE_XTOL; for atoms, the
        smallest alpha whose ccdf does not exceed fraction
    """
    if not 0.0 <= fraction <= 1.0:
        raise DomainError(f"fraction must lie in [0, 1], got {fraction}")
    if isinstance(md, DegenerateMD):
        above = 1.0
        for x, w in zip(md.atoms, md.weights, strict=True):
            above -= w
            if above <= fraction + MOMENT_SLACK:
                return x
        return md.atoms[-1]
    if fraction >= 1.0:
        return 0.0
    if fraction <= 0.0:
        return 1.0
    return float(
        optimize.bisect(lambda a: md_ccdf(md, a) - fraction, 0.0, 1.0, xtol=QUANTILE_XTOL)
    )


def md_percentile(md: MetaDistribution, percent: float) -> float:
    """CP level achieved by percent % of the UEs (e.g. 95 for the 5th-percentile user)."""
    if not 0.0 <= percent <= 100.0:
        raise DomainError(f"percent must lie in [0, 100], got {percent}")
    return md_inverse_ccdf(md, percent / 100.0)


def variance(m1: float, m2: float) -> float:
    """Variance of the CCP, m2 - m1^2.

    Raises:
        InvalidMomentsError: If the result is below -MOMENT_SLACK
    """
    value = m2 - m1 * m1
    if value < -MOMENT_SLACK:
        raise InvalidMomentsError(m1, m2)
    return max(0.0, value)


def scp(m1: float) -> float:
    """Spatially averaged coverage probability, the first CCP moment."""
    return float(m1)


class MetaDistClient(BaseEngineClient):
    """Client for meta-distribution queries.

    Example:
        ```python
        client = MetaDistClient(NetworkParams())
        md = client.from_moments(moment_set)
        share = client.ccdf(md, 0.5)
        ```
    """

    def from_moments(self, moments: MomentSet) -> MetaDistribution:
        """Match a meta distribution to a moment set."""
        return build_md(moments.m1, moments.m2)

    def ccdf(self, md: MetaDistribution, alpha: float) -> float:
        """Fraction of UEs whose CCP exceeds alpha."""
        return md_ccdf(md, alpha)

    def ccdf_curve(self, md: MetaDistribution, alphas: Sequence[float]) -> list[float]:
        """md_ccdf over a grid of reliability levels."""
        if not alphas:
            raise DomainError("the alpha grid is empty")
        return [md_ccdf(md, a) for a in alphas]

    def inverse_ccdf(self, md: MetaDistribution, fraction: float) -> float:
        """Reliability level reached by the given fraction of UEs."""
        return md_inverse_ccdf(md, fraction)
