"""Unit tests for the Monte Carlo simulator."""

import logging
import math

import numpy as np
import pytest

from noma_metadist.core.exceptions import DomainError, InfeasibleAllocationError
from noma_metadist.metadist import build_md, md_cdf
from noma_metadist.models.common import MomentMethod, Scheme, TaggedCell
from noma_metadist.models.metadist import DegenerateMD
from noma_metadist.models.network import Allocation, NetworkParams, effective_alloc
from noma_metadist.models.simulation import JointEventCheck, Realization, SimConfig
from noma_metadist.simulator import (
    SimulatorClient,
    ccp_given_network,
    empirical_md,
    empirical_moments,
    gen_network,
    ks_distance,
    place_ues_cnoma,
    place_ues_enoma,
    realization_ccp,
    run_simulation,
    simulate_realization,
    validate_joint_event,
)
from noma_metadist.simulator.rng import Stream, realization_rng


@pytest.fixture
def sim() -> SimConfig:
    """Small simulation settings."""
    return SimConfig(n_realizations=40, rng_seed=11)


@pytest.fixture
def line_realization() -> Realization:
    """One UE at unit distance with a single interferer one unit beyond it."""
    return Realization(
        index=0,
        tagged_bs=np.zeros(2),
        interferers=np.array([[2.0, 0.0]]),
        rho=2.0,
        ue_positions=np.array([[1.0, 0.0]]),
        ordered_distances=np.array([1.0]),
    )


class TestRealizationRng:
    """Tests for the counter-based streams."""

    def test_streams_reproducible(self) -> None:
        """Test that (seed, index) fixes the draws."""
        a = realization_rng(5, 17).random(4)
        b = realization_rng(5, 17).random(4)
        np.testing.assert_array_equal(a, b)

    def test_streams_distinct(self) -> None:
        """Test that indices and purposes give different streams."""
        base = realization_rng(5, 17).random(4)
        assert not np.array_equal(base, realization_rng(5, 18).random(4))
        assert not np.array_equal(base, realization_rng(5, 17, Stream.FADING).random(4))


class TestGenNetwork:
    """Tests for gen_network."""

    def test_palm_tags_origin(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that the Palm convention serves from the window centre."""
        network = gen_network(params, sim, 0, tagged_cell=TaggedCell.PALM)
        np.testing.assert_array_equal(network.tagged_bs, np.zeros(2))
        distances = np.hypot(network.interferers[:, 0], network.interferers[:, 1])
        assert network.rho == pytest.approx(float(distances.min()))
        assert distances.max() <= sim.window_radius(params.lam)

    def test_zero_tags_nearest(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that the zero-cell convention serves from the BS nearest the centre."""
        network = gen_network(params, sim, 3, tagged_cell=TaggedCell.ZERO)
        own = float(np.hypot(*network.tagged_bs))
        others = np.hypot(network.interferers[:, 0], network.interferers[:, 1])
        assert own <= others.min()
        assert network.rho > 0.0

    def test_reproducible(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that a realization index always gives the same network."""
        first = gen_network(params, sim, 9)
        second = gen_network(params, sim, 9)
        np.testing.assert_array_equal(first.interferers, second.interferers)


class TestPlacement:
    """Tests for UE placement."""

    def test_cnoma_in_disk(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that C-NOMA UEs lie within rho/2 of the serving BS."""
        network = gen_network(params, sim, 1)
        positions = place_ues_cnoma(network, 5, realization_rng(1, 1))
        gaps = positions - network.tagged_bs
        assert positions.shape == (5, 2)
        assert np.all(np.hypot(gaps[:, 0], gaps[:, 1]) <= 0.5 * network.rho)

    def test_enoma_in_cell(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that E-NOMA UEs are nearer to the serving BS than to any other."""
        network = gen_network(params, sim, 2, tagged_cell=TaggedCell.ZERO)
        positions = place_ues_enoma(
            network,
            6,
            realization_rng(1, 2),
            window_radius=sim.window_radius(params.lam),
            max_attempts=100,
        )
        own = np.sum((positions - network.tagged_bs) ** 2, axis=1)
        gaps = positions[:, None, :] - network.interferers[None, :, :]
        other = np.min(np.sum(gaps**2, axis=2), axis=1)
        assert positions.shape == (6, 2)
        assert np.all(own < other)


class TestSimulateRealization:
    """Tests for simulate_realization."""

    @pytest.mark.parametrize("scheme", [Scheme.C_NOMA, Scheme.E_NOMA])
    def test_ordered(self, params: NetworkParams, sim: SimConfig, scheme: Scheme) -> None:
        """Test that UEs come back sorted by link distance."""
        realization = simulate_realization(params, scheme, sim, 4)
        distances = realization.ordered_distances
        assert distances.shape == (params.n_users,)
        assert np.all(np.diff(distances) >= 0.0)
        gaps = realization.ue_positions - realization.tagged_bs
        np.testing.assert_allclose(np.hypot(gaps[:, 0], gaps[:, 1]), distances)


class TestCcpGivenNetwork:
    """Tests for the product-form CCP."""

    def test_single_interferer(self, line_realization: Realization) -> None:
        """Test 1 / (1 + M (R / d)^eta) with M = 1 and R = d."""
        params = NetworkParams(n_users=1)
        effective = effective_alloc(params, Allocation(powers=(1.0,), thresholds=(1.0,)))
        assert ccp_given_network(line_realization, effective, 1, params) == pytest.approx(0.5)

    def test_no_interferers(self, line_realization: Realization) -> None:
        """Test that an empty network covers every UE."""
        params = NetworkParams(n_users=1)
        lonely = line_realization.model_copy(update={"interferers": np.empty((0, 2))})
        effective = effective_alloc(params, Allocation(powers=(1.0,), thresholds=(1.0,)))
        assert ccp_given_network(lonely, effective, 1, params) == 1.0

    def test_rank_checked(self, line_realization: Realization) -> None:
        """Test that a rank beyond the placed UEs is rejected."""
        params = NetworkParams(n_users=1)
        effective = effective_alloc(params, Allocation(powers=(1.0,), thresholds=(1.0,)))
        with pytest.raises(DomainError):
            ccp_given_network(line_realization, effective, 2, params)

    def test_realization_ccp_fills_all_ranks(
        self, params: NetworkParams, sim: SimConfig, fig1_alloc: Allocation
    ) -> None:
        """Test that realization_ccp sets one CCP in (0, 1] per rank."""
        realization = simulate_realization(params, Scheme.C_NOMA, sim, 0)
        filled = realization_ccp(realization, effective_alloc(params, fig1_alloc), params)
        assert filled.ccp is not None
        assert filled.ccp.shape == (2,)
        assert np.all((filled.ccp > 0.0) & (filled.ccp <= 1.0))


class TestValidateJointEvent:
    """Tests for the fading-level check."""

    def test_matches_product_form(self, line_realization: Realization) -> None:
        """Test that the drawn SIR event agrees with the product form."""
        params = NetworkParams(n_users=1)
        check = validate_joint_event(
            line_realization,
            Allocation(powers=(1.0,), thresholds=(1.0,)),
            params,
            1,
            20_000,
            np.random.default_rng(3),
        )
        assert check.ccp == pytest.approx(0.5)
        assert check.deviation < 5.0

    def test_too_few_draws(self, line_realization: Realization) -> None:
        """Test that fewer than 10000 fading draws are rejected."""
        with pytest.raises(DomainError):
            validate_joint_event(
                line_realization,
                Allocation(powers=(1.0,), thresholds=(1.0,)),
                NetworkParams(n_users=1),
                1,
                9_999,
                np.random.default_rng(3),
            )

    def test_client_check_with_sic(self, sim: SimConfig) -> None:
        """Test two E-NOMA users with imperfect SIC on a sampled network."""
        params = NetworkParams(beta_sic=0.1)
        client = SimulatorClient(params, simulation=sim)
        alloc = Allocation.from_db((0.3, 0.7), (0.0, 0.0))
        check = client.validate_joint_event(alloc, Scheme.E_NOMA, 5, 1, 20_000)
        assert 0.0 < check.ccp < 1.0
        assert check.deviation < 5.0


class TestEmpiricalEstimates:
    """Tests for empirical moments, meta distributions and KS distances."""

    def test_moments(self) -> None:
        """Test the sample mean and its standard error."""
        mean, std_err = empirical_moments([0.2, 0.4, 0.6], 1.0)
        assert mean == pytest.approx(0.4)
        assert std_err == pytest.approx(0.2 / math.sqrt(3.0))
        second, _ = empirical_moments([0.2, 0.4, 0.6], 2.0)
        assert second == pytest.approx((0.04 + 0.16 + 0.36) / 3.0)

    def test_single_sample(self) -> None:
        """Test that one sample has an infinite standard error."""
        assert empirical_moments([0.3], 1.0) == (0.3, math.inf)

    def test_small_sample_warning(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that fewer than 1000 samples are flagged."""
        with caplog.at_level(logging.WARNING, logger="noma_metadist.simulator.client"):
            empirical_moments([0.5, 0.6], 1.0)
        assert "unreliable" in caplog.text

    @pytest.mark.parametrize(("samples", "b"), [([], 1.0), ([0.5], 0.0)])
    def test_invalid(self, samples: list[float], b: float) -> None:
        """Test that empty samples and non-positive orders are rejected."""
        with pytest.raises(DomainError):
            empirical_moments(samples, b)

    def test_md(self) -> None:
        """Test the strict-inequality empirical ccdf."""
        ccdf, std_err = empirical_md([0.1, 0.5, 0.9], [0.0, 0.5, 1.0])
        np.testing.assert_allclose(ccdf, [1.0, 1.0 / 3.0, 0.0])
        assert std_err[0] == 0.0
        with pytest.raises(DomainError):
            empirical_md([0.1], [])

    def test_ks_of_matching_law(self) -> None:
        """Test that beta samples sit close to their own law."""
        samples = np.random.default_rng(1).beta(2.0, 2.0, size=20_000)
        assert ks_distance(samples, build_md(0.5, 0.3)) < 0.02

    def test_ks_of_wrong_law(self) -> None:
        """Test that a shifted law is far from the samples."""
        samples = np.random.default_rng(1).beta(2.0, 2.0, size=5_000)
        assert ks_distance(samples, build_md(0.8, 0.7)) > 0.2

    def test_ks_matches_pointwise_cdf(self) -> None:
        """Test the array evaluation against md_cdf at every sorted sample."""
        samples = np.sort(np.random.default_rng(3).uniform(size=300))
        md = build_md(0.7, 0.55)
        n = samples.size
        expected = max(
            max((k + 1) / n - md_cdf(md, float(x)), md_cdf(md, float(x)) - k / n)
            for k, x in enumerate(samples)
        )
        assert ks_distance(samples, md) == pytest.approx(expected, abs=1e-10)

    def test_ks_of_point_mass(self) -> None:
        """Test the distance to a single atom and to the infeasible law."""
        samples = [0.2, 0.4, 0.6, 0.8]
        assert ks_distance(samples, DegenerateMD.point(0.5)) == pytest.approx(0.5)
        assert ks_distance(samples, DegenerateMD.infeasible()) == pytest.approx(1.0)


class TestRunSimulation:
    """Tests for run_simulation and SimulatorClient."""

    def test_shape_and_range(
        self, params: NetworkParams, sim: SimConfig, fig1_alloc: Allocation
    ) -> None:
        """Test one CCP in (0, 1] per realization and rank."""
        result = run_simulation(params, fig1_alloc, Scheme.C_NOMA, sim)
        assert result.ccp.shape == (40, 2)
        assert result.tagged_cell is TaggedCell.PALM
        assert np.all((result.ccp > 0.0) & (result.ccp <= 1.0))

    def test_seeded(self, params: NetworkParams, sim: SimConfig, fig1_alloc: Allocation) -> None:
        """Test that the root seed fixes the run."""
        first = run_simulation(params, fig1_alloc, Scheme.E_NOMA, sim)
        again = run_simulation(params, fig1_alloc, Scheme.E_NOMA, sim)
        other = run_simulation(
            params, fig1_alloc, Scheme.E_NOMA, sim.model_copy(update={"rng_seed": 12})
        )
        np.testing.assert_array_equal(first.ccp, again.ccp)
        assert not np.array_equal(first.ccp, other.ccp)

    @pytest.mark.timeout(120)
    def test_worker_count_invariant(
        self, params: NetworkParams, fig1_alloc: Allocation
    ) -> None:
        """Test that splitting chunks over processes leaves the samples unchanged."""
        sim = SimConfig(n_realizations=1_200, rng_seed=4)
        serial = run_simulation(params, fig1_alloc, Scheme.C_NOMA, sim, workers=1)
        parallel = run_simulation(params, fig1_alloc, Scheme.C_NOMA, sim, workers=2)
        np.testing.assert_array_equal(serial.ccp, parallel.ccp)

    def test_infeasible(self, params: NetworkParams, sim: SimConfig) -> None:
        """Test that a non-positive margin is rejected before sampling."""
        alloc = Allocation(powers=(0.8, 0.2), thresholds=(1.0, 1.0))
        with pytest.raises(InfeasibleAllocationError):
            run_simulation(params, alloc, Scheme.C_NOMA, sim)

    def test_client_moments(
        self, params: NetworkParams, sim: SimConfig, fig1_alloc: Allocation
    ) -> None:
        """Test that client moments carry standard errors and match the samples."""
        client = SimulatorClient(params, simulation=sim)
        moments = client.moments(fig1_alloc, Scheme.C_NOMA, 2)
        samples = client.run(fig1_alloc, Scheme.C_NOMA).samples(2)
        assert moments.method is MomentMethod.SIMULATED
        assert moments.m1 == pytest.approx(float(np.mean(samples)))
        assert moments.m1_std_err is not None
        assert moments.m1 * moments.m1 <= moments.m2 <= moments.m1

    def test_samples_rank_checked(
        self, params: NetworkParams, sim: SimConfig, fig1_alloc: Allocation
    ) -> None:
        """Test that SimulationResult rejects ranks it does not hold."""
        result = run_simulation(params, fig1_alloc, Scheme.C_NOMA, sim)
        with pytest.raises(DomainError):
            result.samples(3)


class TestJointEventCheck:
    """Tests for JointEventCheck.deviation."""

    def test_deviation_uses_model_spread(self) -> None:
        """Test that an all-covered sample is still judged against the CCP."""
        check = JointEventCheck(empirical=1.0, std_err=0.0, ccp=0.99, n_fading=10_000)
        assert check.deviation == pytest.approx(0.01 / math.sqrt(0.99 * 0.01 / 10_000))

    def test_degenerate_ccp(self) -> None:
        """Test the zero-spread cases."""
        assert JointEventCheck(empirical=0.0, std_err=0.0, ccp=0.0, n_fading=10).deviation == 0
        assert math.isinf(
            JointEventCheck(empirical=0.1, std_err=0.1, ccp=0.0, n_fading=10).deviation
        )
