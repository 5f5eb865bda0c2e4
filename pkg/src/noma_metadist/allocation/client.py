"""Rates and TMR-constrained power and rate allocation for two NOMA users.

The rate of UE_i is its SCP times log(1 + theta_i), in nats/s/Hz. The moments depend
on the allocation only through the threshold factor M_i, so the SCP of each rank is
tabulated once on a logarithmic M grid and interpolated with a monotone cubic.

For a fixed P_2 the rate of UE_2 rises from zero, peaks, and falls back to zero as
theta_2 approaches P_2 / P_1. The TMR equality is solved on the rising branch, where
M_2 (and with it M_1) is smallest. The total rate is maximised over a P_2 grid, and
over a theta_1 grid when theta_1 is free, refined by bounded scalar search and
re-evaluated with the true moments.
"""

import logging
import math
from collections.abc import Callable
from typing import NamedTuple

import numpy as np
from scipy import optimize
from scipy.interpolate import PchipInterpolator

from noma_metadist.cnoma.client import (
    DEFAULT_QUADRATURE,
    moment_cnoma_approx_given_m,
    moment_cnoma_exact_given_m,
)
from noma_metadist.core.base import BaseEngineClient
from noma_metadist.core.config import (
    SCP_TABLE_LOG10_RANGE,
    SCP_TABLE_POINTS,
    THETA1_DB_POINTS,
    THETA1_DB_RANGE,
)
from noma_metadist.core.exceptions import (
    DomainError,
    InfeasibleAllocationError,
    InfeasibleTmrError,
    NumericalFailureError,
)
from noma_metadist.core.specfun import DEFAULT_TOLERANCE
from noma_metadist.enoma.client import moment_enoma_given_m
from noma_metadist.models.allocation import RAProblem, RAResult
from noma_metadist.models.common import (
    MomentMethod,
    QuadratureConfig,
    Scheme,
    Tolerance,
    validated,
)
from noma_metadist.models.network import (
    Allocation,
    NetworkParams,
    check_rank,
    db_to_linear,
    effective_alloc,
)

logger = logging.getLogger(__name__)

_ROOT_XTOL = 1e-14
_PEAK_REL_XTOL = 1e-9


def scp_given_m(
    params: NetworkParams,
    scheme: Scheme,
    i: int,
    m_i: float,
    method: MomentMethod = MomentMethod.EXACT,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """SCP of rank i as a function of its threshold factor M_i.

    E-NOMA has one closed form, so method only selects between the C-NOMA models.

    Raises:
        DomainError: If method is SIMULATED
    """
    if method is MomentMethod.SIMULATED:
        raise DomainError("rates need analytic moments, not simulated ones")
    if scheme is Scheme.E_NOMA:
        return moment_enoma_given_m(params, i, m_i, 1.0, tol)
    if method is MomentMethod.EXACT:
        return moment_cnoma_exact_given_m(params, i, m_i, 1.0, quad, tol)
    return moment_cnoma_approx_given_m(params, i, m_i, 1.0, quad, tol)


def ue_rate(
    params: NetworkParams,
    alloc: Allocation,
    scheme: Scheme,
    i: int,
    method: MomentMethod = MomentMethod.EXACT,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Rate of UE_i, SCP times log(1 + theta_i) in nats/s/Hz.

    Args:
        params: Network parameters
        alloc: Power and threshold allocation
        scheme: UE placement scheme
        i: UE rank
        method: Moment evaluation for C-NOMA
        quad: Quadrature settings
        tol: Special-function tolerance

    Returns:
        The rate, 0 for an infeasible allocation (its CCP is zero)
    """
    check_rank(i, params.n_users)
    try:
        m_i = effective_alloc(params, alloc).m_factor(i)
    except InfeasibleAllocationError as exc:
        logger.debug("rate of UE_%d is zero: %s", i, exc)
        return 0.0
    return scp_given_m(params, scheme, i, m_i, method, quad, tol) * math.log1p(
        alloc.thresholds[i - 1]
    )


class ScpTable:
    """SCP of one rank tabulated against M_i on a logarithmic grid.

    Inside the grid the SCP is a PCHIP interpolant in log M. Below it the SCP is
    interpolated linearly towards SCP(0) = 1; above it the tail is continued as a
    power law with the log-log slope of the last grid interval.

    Example:
        ```python
        table = ScpTable(lambda m: scp_given_m(params, Scheme.E_NOMA, 2, m))
        table.value(1.5)
        ```
    """

    def __init__(
        self,
        scp: Callable[[float], float],
        *,
        log10_range: tuple[float, float] = SCP_TABLE_LOG10_RANGE,
        points: int = SCP_TABLE_POINTS,
    ) -> None:
        """Tabulate scp.

        Args:
            scp: SCP as a function of M_i
            log10_range: Grid limits in log10 M
            points: Number of grid points, >= 4

        Raises:
            DomainError: If the grid is empty or reversed
        """
        low, high = log10_range
        if points < 4 or not low < high:
            raise DomainError(f"invalid SCP grid: {points} points over 10^{low}..10^{high}")
        self._log_m = np.linspace(low, high, points) * math.log(10.0)
        self._values = np.array([scp(math.exp(x)) for x in self._log_m])
        self._curve = PchipInterpolator(self._log_m, self._values, extrapolate=False)
        self._m_min = math.exp(self._log_m[0])
        self._m_max = math.exp(self._log_m[-1])

        last, before = self._values[-1], self._values[-2]
        if last > 0.0 and before > 0.0:
            self._tail_slope = (math.log(last) - math.log(before)) / (
                self._log_m[-1] - self._log_m[-2]
            )
        else:
            self._tail_slope = -math.inf

    @property
    def grid(self) -> np.ndarray:
        """Tabulated M values."""
        return np.exp(self._log_m)

    @property
    def values(self) -> np.ndarray:
        """Tabulated SCP values."""
        return self._values.copy()

    def __call__(self, m: np.ndarray) -> np.ndarray:
        """Interpolated SCP at nonnegative M values."""
        m = np.atleast_1d(np.asarray(m, dtype=float))
        out = np.empty_like(m)
        low = m < self._m_min
        high = m > self._m_max
        inside = ~(low | high)
        out[low] = 1.0 - (1.0 - self._values[0]) * m[low] / self._m_min
        if math.isinf(self._tail_slope):
            out[high] = 0.0
        else:
            with np.errstate(divide="ignore", over="ignore"):
                out[high] = self._values[-1] * (m[high] / self._m_max) ** self._tail_slope
        log_m = np.clip(np.log(m[inside]), self._log_m[0], self._log_m[-1])
        out[inside] = self._curve(log_m)
        return np.clip(out, 0.0, 1.0)

    def value(self, m: float) -> float:
        """Interpolated SCP at one M value."""
        return float(self(np.array([m]))[0])


def scp_table(
    params: NetworkParams,
    scheme: Scheme,
    i: int,
    method: MomentMethod = MomentMethod.EXACT,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ScpTable:
    """Tabulate the SCP of rank i against M_i."""
    check_rank(i, params.n_users)
    logger.info("tabulating the %s SCP of UE_%d (%s moments)", scheme.value, i, method.value)
    return ScpTable(lambda m: scp_given_m(params, scheme, i, m, method, quad, tol))


class _Branch(NamedTuple):
    """Solution of the TMR equality at one P_2; theta_2 is nan when the peak misses the TMR."""

    theta_2: float
    m_2: float
    theta_peak: float
    peak_rate: float

    @property
    def feasible(self) -> bool:
        return not math.isnan(self.theta_2)


def _rate_2(scp: Callable[[float], float], p2: float, theta_2: float) -> float:
    margin = p2 - theta_2 * (1.0 - p2)
    if theta_2 <= 0.0 or margin <= 0.0:
        return 0.0
    return scp(theta_2 / margin) * math.log1p(theta_2)


def _rate_2_peak(scp: Callable[[float], float], p2: float) -> tuple[float, float]:
    """(theta_2, rate_2) at the peak of the UE_2 rate for a fixed P_2."""
    upper = p2 / (1.0 - p2)
    peak = optimize.minimize_scalar(
        lambda t: -_rate_2(scp, p2, t),
        bounds=(0.0, upper),
        method="bounded",
        options={"xatol": _PEAK_REL_XTOL * upper},
    )
    return float(peak.x), -float(peak.fun)


def _lower_branch(scp: Callable[[float], float], p2: float, tmr: float) -> _Branch:
    theta_peak, peak_rate = _rate_2_peak(scp, p2)
    if peak_rate < tmr:
        return _Branch(math.nan, math.nan, theta_peak, peak_rate)
    theta_2 = float(
        optimize.brentq(lambda t: _rate_2(scp, p2, t) - tmr, 0.0, theta_peak, xtol=_ROOT_XTOL)
    )
    m_2 = theta_2 / (p2 - theta_2 * (1.0 - p2))
    return _Branch(theta_2, m_2, theta_peak, peak_rate)


def _rate_1(
    table: ScpTable,
    params: NetworkParams,
    theta_1: float,
    p2: np.ndarray,
    m_2: np.ndarray,
) -> np.ndarray:
    """UE_1 rate per P_2 candidate, -inf where the candidate is infeasible."""
    rates = np.full(p2.shape, -np.inf)
    margin = (1.0 - p2) - theta_1 * params.beta_sic * p2
    usable = (margin > 0.0) & np.isfinite(m_2)
    m_1 = np.maximum(theta_1 / margin[usable], m_2[usable])
    rates[usable] = table(m_1) * math.log1p(theta_1)
    return rates


def _bracket(grid: np.ndarray, k: int, low: float, high: float) -> tuple[float, float]:
    return (
        float(grid[k - 1]) if k > 0 else low,
        float(grid[k + 1]) if k + 1 < grid.size else high,
    )


def solve_tmr(
    problem: RAProblem,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> RAResult:
    """Maximise the total rate subject to rate_2 = TMR.

    Args:
        problem: Network, scheme, TMR and optionally a fixed theta_1
        quad: Quadrature settings of the C-NOMA moments
        tol: Special-function tolerance

    Returns:
        The solved allocation; its UE_2 rate, from the true moments, is within
        problem.tmr_tol of the TMR

    Raises:
        InfeasibleTmrError: If no P_2 on the grid lets UE_2 reach the TMR
        NumericalFailureError: If the final TMR equality misses problem.tmr_tol
    """
    params, scheme, tmr = problem.params, problem.scheme, problem.tmr
    table_1 = scp_table(params, scheme, 1, problem.method, quad, tol)
    table_2 = scp_table(params, scheme, 2, problem.method, quad, tol)

    p2_grid = np.linspace(0.0, 1.0, problem.grid + 2)[1:-1]
    branches = [_lower_branch(table_2.value, float(p2), tmr) for p2 in p2_grid]
    best_peak = max(branch.peak_rate for branch in branches)
    if not any(branch.feasible for branch in branches):
        raise InfeasibleTmrError(tmr, scheme.value, best_peak)
    m_2 = np.array([branch.m_2 for branch in branches])
    logger.debug(
        "%d of %d P_2 candidates reach TMR %.4g",
        sum(branch.feasible for branch in branches),
        p2_grid.size,
        tmr,
    )

    if problem.theta_1 is None:
        theta_db_grid = np.linspace(*THETA1_DB_RANGE, THETA1_DB_POINTS)
    else:
        theta_db_grid = np.array([10.0 * math.log10(problem.theta_1)])
    rates = np.vstack(
        [_rate_1(table_1, params, db_to_linear(float(t)), p2_grid, m_2) for t in theta_db_grid]
    )
    if not np.any(np.isfinite(rates)):
        raise InfeasibleTmrError(tmr, scheme.value, best_peak)
    row, col = np.unravel_index(int(np.argmax(rates)), rates.shape)
    grid_rate = float(rates[row, col]) + tmr

    def search_total(p2: float, theta_1: float) -> float:
        if not 0.0 < p2 < 1.0:
            return 0.0
        branch = _lower_branch(table_2.value, p2, tmr)
        if not branch.feasible:
            return 0.0
        rate = _rate_1(table_1, params, theta_1, np.array([p2]), np.array([branch.m_2]))[0]
        return float(rate) + tmr if math.isfinite(rate) else 0.0

    p2 = float(p2_grid[col])
    theta_1 = problem.theta_1 or db_to_linear(float(theta_db_grid[row]))
    search_rate = grid_rate

    if problem.theta_1 is None:
        low, high = _bracket(theta_db_grid, int(row), *THETA1_DB_RANGE)
        found = optimize.minimize_scalar(
            lambda t: -search_total(p2, db_to_linear(t)), bounds=(low, high), method="bounded"
        )
        if -found.fun > search_rate:
            theta_1, search_rate = db_to_linear(float(found.x)), -float(found.fun)

    low, high = _bracket(p2_grid, int(col), 0.0, 1.0)
    found = optimize.minimize_scalar(
        lambda p: -search_total(p, theta_1), bounds=(low, high), method="bounded"
    )
    if -found.fun > search_rate:
        p2, search_rate = float(found.x), -float(found.fun)
    logger.debug(
        "search optimum P_2=%.6g theta_1=%.6g: total %.6g (grid %.6g)",
        p2,
        theta_1,
        search_rate,
        grid_rate,
    )

    theta_2, rate_2 = _polish_theta_2(problem, p2, table_2, quad, tol)
    alloc = Allocation(powers=(1.0 - p2, p2), thresholds=(theta_1, theta_2))
    rate_1 = ue_rate(params, alloc, scheme, 1, problem.method, quad, tol)
    logger.info(
        "%s TMR %.4g: P_2=%.4f theta_2=%.3f dB theta_1=%.3f dB, total rate %.6g",
        scheme.value,
        tmr,
        p2,
        10.0 * math.log10(theta_2),
        10.0 * math.log10(theta_1),
        rate_1 + rate_2,
    )
    return RAResult(
        p2=p2,
        theta_1=theta_1,
        theta_2=theta_2,
        rate_1=rate_1,
        rate_2=rate_2,
        total_rate=rate_1 + rate_2,
        grid_rate=grid_rate,
        search_rate=search_rate,
    )


def _polish_theta_2(
    problem: RAProblem,
    p2: float,
    table: ScpTable,
    quad: QuadratureConfig,
    tol: Tolerance,
) -> tuple[float, float]:
    """Solve the TMR equality at P_2 with the true UE_2 moments."""
    params, scheme, tmr = problem.params, problem.scheme, problem.tmr

    def true_scp(m: float) -> float:
        return scp_given_m(params, scheme, 2, m, problem.method, quad, tol)

    theta_peak, _ = _rate_2_peak(table.value, p2)
    peak_rate = _rate_2(true_scp, p2, theta_peak)
    if peak_rate < tmr:
        theta_peak, peak_rate = _rate_2_peak(true_scp, p2)
        if peak_rate < tmr - problem.tmr_tol:
            raise InfeasibleTmrError(tmr, scheme.value, peak_rate)
        if peak_rate < tmr:
            # P_2 on the feasibility edge: the peak meets the TMR within tolerance
            return theta_peak, peak_rate

    theta_2 = float(
        optimize.brentq(
            lambda t: _rate_2(true_scp, p2, t) - tmr, 0.0, theta_peak, xtol=_ROOT_XTOL
        )
    )
    rate_2 = _rate_2(true_scp, p2, theta_2)
    if abs(rate_2 - tmr) > problem.tmr_tol:
        raise NumericalFailureError(
            "solve_tmr",
            f"UE_2 rate {rate_2:.8g} misses the TMR {tmr:.8g}",
            {"p2": p2, "theta_2": theta_2, "tmr_tol": problem.tmr_tol},
        )
    return theta_2, rate_2


class AllocationClient(BaseEngineClient):
    """Client for rates and TMR-constrained resource allocation.

    Example:
        ```python
        client = AllocationClient(NetworkParams())
        result = client.solve_tmr(Scheme.C_NOMA, tmr=0.1)
        print(result.p2, result.theta_2_db, result.total_rate)
        ```
    """

    def rate(
        self,
        alloc: Allocation,
        scheme: Scheme,
        i: int,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> float:
        """Rate of UE_i in nats/s/Hz."""
        return ue_rate(self._params, alloc, scheme, i, method, self._quadrature, self._tolerance)

    def solve_tmr(
        self,
        scheme: Scheme,
        tmr: float,
        *,
        theta_1: float | None = None,
        method: MomentMethod = MomentMethod.EXACT,
    ) -> RAResult:
        """Maximise the total rate with UE_2 held at the TMR.

        Raises:
            ParameterValidationError: If the problem is malformed (e.g. N != 2)
            InfeasibleTmrError: If UE_2 cannot reach the TMR
        """
        problem = validated(
            RAProblem, params=self._params, scheme=scheme, theta_1=theta_1, tmr=tmr, method=method
        )
        return solve_tmr(problem, self._quadrature, self._tolerance)
