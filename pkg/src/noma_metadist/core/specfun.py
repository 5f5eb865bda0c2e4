"""Special-function kernel.

Gauss hypergeometric function in the coverage pattern 2F1(b, -delta; 1 - delta; -x),
incomplete gamma functions of integer order, the regularized incomplete beta
function and binomial helpers. All functions are pure and thread-safe.
"""

import logging
import math

from scipy import special

from noma_metadist.core.exceptions import DomainError, NumericalFailureError
from noma_metadist.core.quadrature import integrate_1d
from noma_metadist.models.common import QuadratureConfig, Tolerance

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = Tolerance()

# Beyond this transformed argument the Gauss series needs too many terms and the
# integral representation takes over.
_SERIES_MAX_ARG = 0.9
_EXACT_BINOMIAL_MAX_N = 20
# The series tail is held this far below rel_err so quantities built from the pattern
# stay within rel_err too.
_SERIES_TAIL_FRACTION = 1e-2


def hyp2f1_cov(b: float, delta: float, x: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Evaluate 2F1(b, -delta; 1 - delta; -x) for x >= 0.

    This is the coverage pattern 1 + 2 * int_1^inf (1 - (1 + x y^-eta)^-b) y dy with
    delta = 2/eta. The negative argument is mapped into [0, 1) by the Pfaff
    transformation

        2F1(b, -d; 1-d; -x) = (1+x)^d * 2F1(1-d-b, -d; 1-d; x/(1+x))

    and the Gauss series is summed there. When x/(1+x) is close to 1 the equivalent
    representation 1 + delta/(1-delta) * int_0^1 g(v^(1/(1-delta))) dv with
    g(u) = (1 - (1+xu)^-b)/u is integrated adaptively instead.

    Args:
        b: Moment order, b > 0
        delta: 2/eta, in (0, 1)
        x: Nonnegative argument (M_i in the moment formulas)
        tol: Relative error target and series cap

    Returns:
        The function value, >= 1

    Raises:
        DomainError: If an argument is outside its domain
        NumericalFailureError: If the evaluation does not reach tol.rel_err
    """
    if not b > 0.0:
        raise DomainError(f"hyp2f1_cov requires b > 0, got {b}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"hyp2f1_cov requires delta in (0, 1), got {delta}")
    if not x >= 0.0 or math.isnan(x):
        raise DomainError(f"hyp2f1_cov requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return math.inf

    w = x / (1.0 + x)
    if w <= _SERIES_MAX_ARG:
        return (1.0 + x) ** delta * _gauss_series(1.0 - delta - b, -delta, 1.0 - delta, w, tol)
    return _hyp2f1_cov_integral(b, delta, x, tol)


def _gauss_series(a: float, b: float, c: float, w: float, tol: Tolerance) -> float:
    """Sum the Gauss series 2F1(a, b; c; w) for 0 <= w < 1."""
    terms = [1.0]
    term = 1.0
    for n in range(tol.max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w
        if term == 0.0:
            return math.fsum(terms)
        terms.append(term)
        # Once a + n > 0 every later term ratio is below w, so the tail is geometric.
        tail = abs(term) * w / (1.0 - w)
        if a + n > 0.0 and tail <= _SERIES_TAIL_FRACTION * tol.rel_err * abs(math.fsum(terms)):
            logger.debug("gauss series converged after %d terms (w=%.6g)", n + 1, w)
            return math.fsum(terms)

    raise NumericalFailureError(
        "hyp2f1_cov",
        f"Gauss series did not converge within {tol.max_terms} terms",
        {"a": a, "b": b, "c": c, "w": w, "last_term": term},
    )


def _hyp2f1_cov_integral(b: float, delta: float, x: float, tol: Tolerance) -> float:
    """Integral representation of the coverage pattern for large x."""
    exponent = 1.0 / (1.0 - delta)

    def integrand(v: float) -> float:
        u = v**exponent
        if u == 0.0:
            return b * x
        return float(-math.expm1(-b * math.log1p(x * u)) / u)

    knee = (1.0 / x) ** (1.0 - delta)
    quad = QuadratureConfig(
        rel_tol=tol.rel_err,
        abs_tol=tol.rel_err * 1e-3,
        max_subdivisions=max(200, min(tol.max_terms, 2000)),
    )
    area = integrate_1d(
        integrand,
        0.0,
        1.0,
        quad=quad,
        routine="hyp2f1_cov",
        points=(knee, min(1.0, 10.0 * knee)),
    )
    return 1.0 + delta * exponent * area


def upper_inc_gamma(j: int, x: float) -> float:
    """Upper incomplete gamma function of integer order.

    Gamma(j, x) = (j-1)! * e^-x * sum_{k=0}^{j-1} x^k / k!

    Args:
        j: Positive integer order
        x: Nonnegative argument

    Returns:
        Gamma(j, x)

    Raises:
        DomainError: If j < 1 or x < 0
    """
    _check_gamma_args(j, x)
    term = 1.0
    terms = [term]
    for k in range(1, j):
        term *= x / k
        terms.append(term)
    return math.factorial(j - 1) * math.exp(-x) * math.fsum(terms)


def lower_inc_gamma_scaled(j: int, x: float) -> float:
    """Return gamma(j, x) / x^j for integer j, accurate as x -> 0.

    Uses the series e^-x * sum_k x^k / (j (j+1) ... (j+k)) below x = j + 1 and the
    complement (j-1)! - Gamma(j, x) above it. The limit at x = 0 is 1/j.

    Args:
        j: Positive integer order
        x: Nonnegative argument

    Returns:
        gamma(j, x) / x^j
    """
    _check_gamma_args(j, x)
    if x >= j + 1.0:
        return (math.factorial(j - 1) - upper_inc_gamma(j, x)) / x**j

    term = 1.0 / j
    terms = [term]
    k = 0
    while abs(term) > 1e-17 * terms[0]:
        k += 1
        term *= x / (j + k)
        terms.append(term)
    return math.exp(-x) * math.fsum(terms)


def lower_inc_gamma(j: int, x: float) -> float:
    """Lower incomplete gamma function gamma(j, x) = Gamma(j) - Gamma(j, x)."""
    _check_gamma_args(j, x)
    if x == 0.0:
        return 0.0
    return lower_inc_gamma_scaled(j, x) * x**j


def _check_gamma_args(j: int, x: float) -> None:
    if j < 1:
        raise DomainError(f"incomplete gamma requires integer order j >= 1, got {j}")
    if not x >= 0.0:
        raise DomainError(f"incomplete gamma requires x >= 0, got {x}")


def reg_inc_beta(alpha: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_alpha(a, b).

    Args:
        alpha: Upper limit in [0, 1]
        a: First shape parameter, > 0
        b: Second shape parameter, > 0

    Returns:
        I_alpha(a, b) in [0, 1]

    Raises:
        DomainError: If an argument is outside its domain
        NumericalFailureError: If the continued fraction does not converge
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"reg_inc_beta requires alpha in [0, 1], got {alpha}")
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"reg_inc_beta requires a, b > 0, got a={a}, b={b}")
    if alpha == 0.0:
        return 0.0
    if alpha == 1.0:
        return 1.0

    value = float(special.betainc(a, b, alpha))
    if not math.isfinite(value):
        raise NumericalFailureError(
            "reg_inc_beta",
            "incomplete beta continued fraction did not converge",
            {"alpha": alpha, "a": a, "b": b},
        )
    return min(1.0, max(0.0, value))


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k).

    Raises:
        DomainError: If k > n or either argument is negative
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def log_binomial(n: int, k: int) -> float:
    """Natural logarithm of C(n, k).

    Exact integer arithmetic up to n = 20, log-gamma above.

    Raises:
        DomainError: If k > n or either argument is negative
    """
    if n <= _EXACT_BINOMIAL_MAX_N:
        return math.log(binomial(n, k))
    if k < 0 or k > n:
        raise DomainError(f"log_binomial requires 0 <= k <= n, got n={n}, k={k}")
    return float(special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1))

