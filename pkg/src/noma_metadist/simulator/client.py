"""Monte Carlo oracle for the CCP and its meta distribution.

Each realization draws a PPP of BSs in a disk window, picks the tagged BS, places
the NOMA UEs of its cell and evaluates the CCP of every rank in product form,

    P_Ci = prod_{y} 1 / (1 + R_i^eta M_i |y - u_i|^-eta),

which is exact given the BS positions. Fading is only drawn by
validate_joint_event, which checks the product form against the full SIC event.
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy import stats

from noma_metadist.core.base import BaseEngineClient
from noma_metadist.core.config import MIN_RELIABLE_SAMPLES, Config
from noma_metadist.core.exceptions import (
    DomainError,
    InfeasibleAllocationError,
    NumericalFailureError,
    PlacementError,
)
from noma_metadist.models.common import QuadratureConfig, Scheme, TaggedCell, Tolerance
from noma_metadist.models.metadist import DegenerateMD, MetaDistribution
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import (
    Allocation,
    EffectiveAlloc,
    NetworkParams,
    check_rank,
    effective_alloc,
)
from noma_metadist.models.simulation import (
    JointEventCheck,
    Network,
    Realization,
    SimConfig,
    SimulationResult,
)
from noma_metadist.simulator.placement import place_ues_cnoma, place_ues_enoma, uniform_in_disk
from noma_metadist.simulator.rng import Stream, realization_rng

logger = logging.getLogger(__name__)

MAX_RESAMPLES = 1_000
MIN_JOINT_FADING = 10_000
CHUNK_SIZE = 1_000

_ORIGIN = np.zeros(2)


def gen_network(
    params: NetworkParams,
    sim: SimConfig,
    realization_index: int,
    *,
    tagged_cell: TaggedCell = TaggedCell.PALM,
    rng: np.random.Generator | None = None,
) -> Network:
    """Draw the BS process of one realization.

    Args:
        params: Network parameters
        sim: Simulation settings
        realization_index: Index of the realization; keys the random stream
        tagged_cell: PALM adds a BS at the window centre and tags it; ZERO tags the
            BS nearest to the centre
        rng: Stream to draw from; a fresh (seed, index) stream when omitted

    Returns:
        Tagged BS, interferers and rho. Windows without enough BSs to define rho are
        redrawn and counted in Network.resamples.

    Raises:
        NumericalFailureError: If MAX_RESAMPLES windows in a row are unusable
    """
    rng = rng or realization_rng(sim.rng_seed, realization_index)
    radius = sim.window_radius(params.lam)
    mean_count = params.lam * math.pi * radius * radius

    for resamples in range(MAX_RESAMPLES):
        points = uniform_in_disk(rng, _ORIGIN, radius, int(rng.poisson(mean_count)))
        if tagged_cell is TaggedCell.PALM:
            tagged, interferers = _ORIGIN.copy(), points
        else:
            if points.shape[0] < 2:
                continue
            nearest = int(np.argmin(np.hypot(points[:, 0], points[:, 1])))
            tagged, interferers = points[nearest], np.delete(points, nearest, axis=0)
        if interferers.shape[0] == 0:
            continue
        offsets = interferers - tagged
        rho = float(np.min(np.hypot(offsets[:, 0], offsets[:, 1])))
        return Network(tagged_bs=tagged, interferers=interferers, rho=rho, resamples=resamples)

    raise NumericalFailureError(
        "gen_network",
        f"{MAX_RESAMPLES} windows in a row held too few BSs",
        {"mean_count": mean_count, "index": realization_index},
    )


def simulate_realization(
    params: NetworkParams,
    scheme: Scheme,
    sim: SimConfig,
    realization_index: int,
) -> Realization:
    """Draw a network and place ordered UEs in the tagged cell.

    Networks whose tagged cell cannot be sampled are redrawn from the same stream and
    counted in Realization.placement_resamples.
    """
    rng = realization_rng(sim.rng_seed, realization_index)
    tagged_cell = sim.tagged_cell_for(scheme)
    radius = sim.window_radius(params.lam)
    network_resamples = 0

    for placement_resamples in range(MAX_RESAMPLES):
        network = gen_network(params, sim, realization_index, tagged_cell=tagged_cell, rng=rng)
        network_resamples += network.resamples
        try:
            if scheme is Scheme.E_NOMA:
                positions = place_ues_enoma(
                    network,
                    params.n_users,
                    rng,
                    window_radius=radius,
                    max_attempts=sim.max_placement_attempts,
                )
            else:
                positions = place_ues_cnoma(network, params.n_users, rng)
        except PlacementError as exc:
            logger.debug("realization %d: %s; redrawing", realization_index, exc)
            continue

        offsets = positions - network.tagged_bs
        distances = np.hypot(offsets[:, 0], offsets[:, 1])
        order = np.argsort(distances, kind="stable")
        return Realization(
            index=realization_index,
            tagged_bs=network.tagged_bs,
            interferers=network.interferers,
            rho=network.rho,
            ue_positions=positions[order],
            ordered_distances=distances[order],
            network_resamples=network_resamples,
            placement_resamples=placement_resamples,
        )

    raise NumericalFailureError(
        "simulate_realization",
        f"UE placement failed in {MAX_RESAMPLES} networks in a row",
        {"index": realization_index, "scheme": scheme.value},
    )


def ccp_given_network(
    realization: Realization,
    effective: EffectiveAlloc,
    i: int,
    params: NetworkParams,
) -> float:
    """Product-form CCP of rank i given the BS and UE positions.

    Args:
        realization: Sampled network with ordered UEs
        effective: Effective thresholds M_i
        i: UE rank
        params: Network parameters (eta is used)

    Returns:
        prod over interferers of 1 / (1 + R_i^eta M_i |y - u_i|^-eta), in (0, 1]
    """
    check_rank(i, realization.ordered_distances.shape[0])
    if realization.interferers.shape[0] == 0:
        return 1.0
    position = realization.ue_positions[i - 1]
    link = float(realization.ordered_distances[i - 1])
    gaps = realization.interferers - position
    squared = np.sum(gaps * gaps, axis=1)
    ratio = effective.m_factor(i) * (link * link / squared) ** (0.5 * params.eta)
    return float(np.exp(-np.sum(np.log1p(ratio))))


def realization_ccp(
    realization: Realization, effective: EffectiveAlloc, params: NetworkParams
) -> Realization:
    """Return the realization with the CCP of every rank filled in."""
    n = realization.ordered_distances.shape[0]
    values = np.array(
        [ccp_given_network(realization, effective, i, params) for i in range(1, n + 1)]
    )
    return realization.model_copy(update={"ccp": values})


def validate_joint_event(
    realization: Realization,
    alloc: Allocation,
    params: NetworkParams,
    i: int,
    n_fading: int,
    rng: np.random.Generator,
) -> JointEventCheck:
    """Estimate the joint SIC coverage probability of rank i by drawing fading.

    UE_i is covered when, for every j >= i, the message of UE_j reaches SIR above
    theta_j with the stronger messages as noise and a fraction beta_sic of the
    canceled weaker messages left over. The estimate is returned next to the
    product-form CCP, which is 0 for infeasible allocations.

    Raises:
        DomainError: If n_fading < MIN_JOINT_FADING or i is out of range
    """
    if n_fading < MIN_JOINT_FADING:
        raise DomainError(f"joint-event validation needs n_fading >= {MIN_JOINT_FADING}")
    n = realization.ordered_distances.shape[0]
    check_rank(i, n)

    link = float(realization.ordered_distances[i - 1])
    gaps = realization.interferers - realization.ue_positions[i - 1]
    path_gain = np.sum(gaps * gaps, axis=1) ** (-0.5 * params.eta)
    signal = rng.exponential(size=n_fading) * link ** (-params.eta)
    interference = rng.exponential(size=(n_fading, path_gain.shape[0])) @ path_gain

    powers, thresholds = alloc.powers, alloc.thresholds
    covered = np.ones(n_fading, dtype=bool)
    for j in range(i, n + 1):
        intracell = math.fsum(powers[: j - 1]) + params.beta_sic * math.fsum(powers[j:])
        with np.errstate(divide="ignore", invalid="ignore"):
            sir = powers[j - 1] * signal / (signal * intracell + interference)
        covered &= sir > thresholds[j - 1]

    empirical = float(np.mean(covered))
    try:
        ccp = ccp_given_network(realization, effective_alloc(params, alloc), i, params)
    except InfeasibleAllocationError:
        ccp = 0.0
    return JointEventCheck(
        empirical=empirical,
        std_err=math.sqrt(empirical * (1.0 - empirical) / n_fading),
        ccp=ccp,
        n_fading=n_fading,
    )


def _as_samples(ccp_samples: Sequence[float] | np.ndarray) -> np.ndarray:
    samples = np.asarray(ccp_samples, dtype=float)
    if samples.size == 0:
        raise DomainError("no CCP samples were given")
    if samples.size < MIN_RELIABLE_SAMPLES:
        logger.warning(
            "only %d CCP samples; estimates below %d samples are unreliable",
            samples.size,
            MIN_RELIABLE_SAMPLES,
        )
    return samples


def empirical_moments(ccp_samples: Sequence[float] | np.ndarray, b: float) -> tuple[float, float]:
    """Sample mean of ccp^b with its standard error.

    Raises:
        DomainError: If there are no samples or b <= 0
    """
    if not b > 0.0:
        raise DomainError(f"moment order b must be positive, got {b}")
    values = _as_samples(ccp_samples) ** b
    if values.size == 1:
        return float(values[0]), math.inf
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(values.size))


def empirical_md(
    ccp_samples: Sequence[float] | np.ndarray, alpha_grid: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Fraction of samples above each alpha, with binomial standard errors.

    Raises:
        DomainError: If there are no samples or the grid is empty
    """
    samples = _as_samples(ccp_samples)
    alphas = np.asarray(alpha_grid, dtype=float)
    if alphas.size == 0:
        raise DomainError("the alpha grid is empty")
    ccdf = np.mean(samples[None, :] > alphas[:, None], axis=1)
    return ccdf, np.sqrt(ccdf * (1.0 - ccdf) / samples.size)


def ks_distance(ccp_samples: Sequence[float] | np.ndarray, md: MetaDistribution) -> float:
    """Kolmogorov distance between the empirical CCP law and a meta distribution."""
    samples = np.sort(_as_samples(ccp_samples))
    n = samples.size
    model = _cdf_at(md, np.clip(samples, 0.0, 1.0))
    upper = np.arange(1, n + 1) / n - model
    lower = model - np.arange(0, n) / n
    return float(max(np.max(upper), np.max(lower)))


def _cdf_at(md: MetaDistribution, alphas: np.ndarray) -> np.ndarray:
    """md_cdf evaluated on an array of reliability levels."""
    if isinstance(md, DegenerateMD):
        mass = np.concatenate(([0.0], np.cumsum(md.weights)))
        return np.minimum(1.0, mass[np.searchsorted(md.atoms, alphas, side="right")])
    return np.asarray(stats.beta.cdf(alphas, md.shape_a, md.shape_b), dtype=float)


def _run_chunk(
    task: tuple[NetworkParams, Scheme, SimConfig, EffectiveAlloc, int, int],
) -> tuple[np.ndarray, int, int]:
    params, scheme, sim, effective, start, stop = task
    rows = np.empty((stop - start, params.n_users))
    network_resamples = placement_resamples = 0
    for row, index in enumerate(range(start, stop)):
        realization = realization_ccp(
            simulate_realization(params, scheme, sim, index), effective, params
        )
        if realization.ccp is None:
            raise NumericalFailureError("run_simulation", f"realization {index} has no CCP")
        rows[row] = realization.ccp
        network_resamples += realization.network_resamples
        placement_resamples += realization.placement_resamples
    return rows, network_resamples, placement_resamples


def run_simulation(
    params: NetworkParams,
    alloc: Allocation,
    scheme: Scheme,
    sim: SimConfig,
    *,
    workers: int = 1,
) -> SimulationResult:
    """Simulate sim.n_realizations networks and collect the CCP of every rank.

    Realizations are split into fixed chunks and may run in worker processes; the
    result is identical for any worker count.

    Raises:
        InfeasibleAllocationError: If the allocation has a non-positive margin
    """
    effective = effective_alloc(params, alloc)
    tagged_cell = sim.tagged_cell_for(scheme)
    bounds = range(0, sim.n_realizations, CHUNK_SIZE)
    tasks = [
        (params, scheme, sim, effective, start, min(start + CHUNK_SIZE, sim.n_realizations))
        for start in bounds
    ]
    logger.info(
        "simulating %d %s realizations (%s cell, seed %d, %d workers)",
        sim.n_realizations,
        scheme.value,
        tagged_cell.value,
        sim.rng_seed,
        workers,
    )

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_chunk, tasks))
    else:
        chunks = [_run_chunk(task) for task in tasks]

    network_resamples = sum(chunk[1] for chunk in chunks)
    placement_resamples = sum(chunk[2] for chunk in chunks)
    logger.info(
        "simulation finished: %d window resamples, %d placement resamples",
        network_resamples,
        placement_resamples,
    )
    if placement_resamples:
        logger.warning(
            "%d networks were redrawn because the tagged cell reached the window edge",
            placement_resamples,
        )
    return SimulationResult(
        scheme=scheme,
        tagged_cell=tagged_cell,
        seed=sim.rng_seed,
        ccp=np.vstack([chunk[0] for chunk in chunks]),
        network_resamples=network_resamples,
        placement_resamples=placement_resamples,
    )


class SimulatorClient(BaseEngineClient):
    """Client for Monte Carlo runs.

    The root seed and worker count come from the runtime Config unless an explicit
    SimConfig is given.

    Example:
        ```python
        client = SimulatorClient(NetworkParams(), simulation=SimConfig(n_realizations=10_000))
        result = client.run(alloc, Scheme.C_NOMA)
        print(result.moment_set(1))
        ```
    """

    def __init__(
        self,
        params: NetworkParams,
        *,
        simulation: SimConfig | None = None,
        quadrature: QuadratureConfig | None = None,
        tolerance: Tolerance | None = None,
        config: Config | None = None,
    ) -> None:
        """Initialize the simulator client.

        Args:
            params: Network parameters
            simulation: Monte Carlo settings; defaults seeded from the runtime Config
            quadrature: Unused by the simulator, accepted for a uniform signature
            tolerance: Unused by the simulator, accepted for a uniform signature
            config: Runtime settings
        """
        super().__init__(params, quadrature=quadrature, tolerance=tolerance, config=config)
        self._simulation = simulation or SimConfig(rng_seed=self._config.seed)

    @property
    def simulation(self) -> SimConfig:
        """Monte Carlo settings bound to this client."""
        return self._simulation

    def run(self, alloc: Allocation, scheme: Scheme) -> SimulationResult:
        """Simulate the configured number of realizations."""
        return run_simulation(
            self._params, alloc, scheme, self._simulation, workers=self._config.workers
        )

    def moments(self, alloc: Allocation, scheme: Scheme, i: int) -> MomentSet:
        """Empirical first and second CCP moments of rank i."""
        return self.run(alloc, scheme).moment_set(i)

    def realization(self, scheme: Scheme, index: int) -> Realization:
        """One realization of the configured run, without CCPs."""
        return simulate_realization(self._params, scheme, self._simulation, index)

    def validate_joint_event(
        self, alloc: Allocation, scheme: Scheme, index: int, i: int, n_fading: int
    ) -> JointEventCheck:
        """Fading-level check of realization index, using its own fading stream."""
        rng = realization_rng(self._simulation.rng_seed, index, Stream.FADING)
        return validate_joint_event(
            self.realization(scheme, index), alloc, self._params, i, n_fading, rng
        )
