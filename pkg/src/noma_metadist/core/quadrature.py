"""Adaptive Gauss-Kronrod quadrature with certified failure reporting.

Thin layer over ``scipy.integrate.quad`` that turns QUADPACK diagnostics into
``NumericalFailureError`` instead of warnings, so a value is only returned when its
error estimate meets the requested tolerance.
"""

import logging
import math
from collections.abc import Callable, Sequence

from scipy import integrate

from noma_metadist.core.exceptions import NumericalFailureError
from noma_metadist.models.common import QuadratureConfig

logger = logging.getLogger(__name__)

# QUADPACK may flag round-off while still meeting a tolerance this many times looser.
_ACCEPTANCE_SLACK = 10.0


def integrate_1d(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    *,
    quad: QuadratureConfig,
    routine: str,
    points: Sequence[float] | None = None,
) -> float:
    """Integrate a scalar function over a finite or semi-infinite interval.

    Args:
        func: The integrand
        lower: Lower limit (finite)
        upper: Upper limit (may be math.inf)
        quad: Tolerances and subdivision limit
        routine: Name reported in errors and debug logs
        points: Optional interior breakpoints (finite intervals only)

    Returns:
        The integral

    Raises:
        NumericalFailureError: If the integral or its error estimate is not finite, or
            QUADPACK stops short of the requested tolerance
    """
    if upper <= lower:
        return 0.0

    kwargs: dict[str, object] = {
        "epsabs": quad.abs_tol,
        "epsrel": quad.rel_tol,
        "limit": quad.max_subdivisions,
        "full_output": 1,
    }
    if points and math.isfinite(upper):
        inside = sorted(p for p in points if lower < p < upper)
        if inside:
            kwargs["points"] = inside

    result = integrate.quad(func, lower, upper, **kwargs)
    value, abserr = float(result[0]), float(result[1])
    message = result[3] if len(result) > 3 else None

    if not (math.isfinite(value) and math.isfinite(abserr)):
        raise NumericalFailureError(
            routine,
            f"integral over [{lower:.6g}, {upper:.6g}] is not finite",
            {"value": value, "abserr": abserr, "quadpack": message},
        )

    target = max(quad.abs_tol, quad.rel_tol * abs(value))
    if message is not None and abserr > _ACCEPTANCE_SLACK * target:
        raise NumericalFailureError(
            routine,
            f"adaptive quadrature did not converge: {message}",
            {"value": value, "abserr": abserr, "target": target},
        )

    logger.debug("%s: %.12g (abserr %.2e)", routine, value, abserr)
    return value
