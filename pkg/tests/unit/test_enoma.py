"""Unit tests for the closed-form E-NOMA moments."""

import math

import pytest

from noma_metadist.core.exceptions import (
    DomainError,
    InfeasibleAllocationError,
    NumericalFailureError,
)
from noma_metadist.enoma import (
    EnomaClient,
    moment_enoma,
    moment_enoma_given_m,
    mtilde_enoma,
    pgfl_enoma,
)
from noma_metadist.enoma.client import moment_kernel
from noma_metadist.models.common import MomentMethod, Scheme
from noma_metadist.models.network import Allocation, NetworkParams
from tests.helpers import enoma_two_user_scp, hyp2f1_half, hyp2f1_half_second


class TestMomentEnoma:
    """Tests for moment_enoma."""

    def test_single_user_closed_form(self) -> None:
        """Test the N = 1 SCP at theta = 1, eta = 4: 1 / (1 + pi/4)."""
        params = NetworkParams(n_users=1)
        alloc = Allocation(powers=(1.0,), thresholds=(1.0,))
        expected = 1.0 / (1.0 + math.pi / 4.0)
        assert moment_enoma(params, alloc, 1) == pytest.approx(expected, abs=1e-6)
        assert moment_enoma(params, alloc, 1) == pytest.approx(0.560100, abs=1e-6)

    @pytest.mark.parametrize("i", [1, 2])
    def test_two_user_scp(self, params: NetworkParams, fig1_alloc: Allocation, i: int) -> None:
        """Test both ranks against 2/(1+F) and 2/F - 2/(1+F) with F = 2F1(1,-1/2;1/2;-M)."""
        assert moment_enoma(params, fig1_alloc, i) == pytest.approx(
            enoma_two_user_scp(2.0, i), rel=1e-9
        )

    def test_two_user_second_moment(self, params: NetworkParams, fig1_alloc: Allocation) -> None:
        """Test the second moment of the weaker user with the b = 2 pattern."""
        f2 = hyp2f1_half_second(2.0)
        expected = 2.0 / f2 - 2.0 / (1.0 + f2)
        assert moment_enoma(params, fig1_alloc, 2, b=2.0) == pytest.approx(expected, rel=1e-9)

    def test_component_term(self, params: NetworkParams) -> None:
        """Test component j=1 of rank 2 at M_2 = 2: 2 / (1 + 2F1(1,-1/2;1/2;-2))."""
        expected = 2.0 / (1.0 + hyp2f1_half(2.0))
        assert mtilde_enoma(1, 2, params, 2.0, 1.0) == pytest.approx(expected, rel=1e-10)

    def test_weak_user_rate_at_reference_allocation(self) -> None:
        """Test that P_2 = 0.47, theta_2 = -7 dB gives a UE_2 rate of about 0.1 nats."""
        params = NetworkParams()
        alloc = Allocation.from_db((0.53, 0.47), (0.0, -7.0))
        rate = moment_enoma(params, alloc, 2) * math.log1p(alloc.thresholds[1])
        assert rate == pytest.approx(0.1, rel=0.1)

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_moment_ordering(self, i: int) -> None:
        """Test m1 >= m2 >= m1^2 and monotonicity in b for a three-user group."""
        params = NetworkParams(n_users=3, beta_sic=0.1)
        alloc = Allocation(powers=(0.15, 0.3, 0.55), thresholds=(1.0, 0.6, 0.5))
        m1, m2, m3 = (moment_enoma(params, alloc, i, b) for b in (1.0, 2.0, 3.0))
        assert 0.0 <= m3 <= m2 <= m1 <= 1.0
        assert m2 >= m1 * m1

    def test_scp_decreases_with_threshold(self, params: NetworkParams) -> None:
        """Test that a larger M gives a smaller SCP."""
        values = [moment_enoma_given_m(params, 1, m) for m in (0.1, 1.0, 10.0, 100.0)]
        assert values == sorted(values, reverse=True)

    def test_zero_threshold_factor(self, params: NetworkParams) -> None:
        """Test that M = 0 gives a CCP of one for every rank."""
        assert moment_enoma_given_m(params, 2, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_given_m_matches_allocation(
        self, params: NetworkParams, fig1_alloc: Allocation
    ) -> None:
        """Test that the allocation enters only through M_i."""
        direct = moment_enoma(params, fig1_alloc, 1, 2.0)
        assert direct == moment_enoma_given_m(params, 1, 2.0, 2.0)

    def test_infeasible_allocation(self, params: NetworkParams) -> None:
        """Test that a zero margin raises InfeasibleAllocationError."""
        alloc = Allocation(powers=(0.5, 0.5), thresholds=(1.0, 1.0))
        with pytest.raises(InfeasibleAllocationError):
            moment_enoma(params, alloc, 1)

    @pytest.mark.parametrize(("i", "b"), [(0, 1.0), (3, 1.0), (1, 0.0)])
    def test_domain_errors(
        self, params: NetworkParams, fig1_alloc: Allocation, i: int, b: float
    ) -> None:
        """Test that bad ranks and orders raise DomainError."""
        with pytest.raises(DomainError):
            moment_enoma(params, fig1_alloc, i, b)

    def test_component_rank_checked(self, params: NetworkParams) -> None:
        """Test that component j must not exceed the target rank."""
        with pytest.raises(DomainError):
            mtilde_enoma(2, 1, params, 1.0, 1.0)


class TestPgflEnoma:
    """Tests for the relative-distance-process PGFL."""

    @pytest.mark.parametrize(("i", "m", "b"), [(1, 2.0, 1.0), (2, 0.7, 2.0), (2, 5.0, 1.0)])
    def test_moment_kernel_reproduces_moments(
        self, params: NetworkParams, i: int, m: float, b: float
    ) -> None:
        """Test that the PGFL of (1 + M y^eta)^-b is the b-th moment."""
        pgfl = pgfl_enoma(i, params, moment_kernel(params, m, b))
        assert pgfl == pytest.approx(moment_enoma_given_m(params, i, m, b), rel=1e-7)

    def test_identity_function(self, params: NetworkParams) -> None:
        """Test that f = 1 gives a PGFL of one."""
        assert pgfl_enoma(2, params, lambda y: 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_divergent_test_function(self, params: NetworkParams) -> None:
        """Test that f bounded away from 1 at the origin is rejected."""
        with pytest.raises(NumericalFailureError):
            pgfl_enoma(1, params, lambda y: 0.5)


class TestEnomaClient:
    """Tests for EnomaClient."""

    def test_moments(self, params: NetworkParams, fig1_alloc: Allocation) -> None:
        """Test that moments() returns an exact E-NOMA moment set."""
        client = EnomaClient(params)
        moments = client.moments(fig1_alloc, 2)
        assert moments.scheme is Scheme.E_NOMA
        assert moments.method is MomentMethod.EXACT
        assert moments.rank == 2
        assert moments.m1 == pytest.approx(enoma_two_user_scp(2.0, 2), rel=1e-9)
        assert moments.m1_std_err is None
        assert 0.0 < moments.variance < 0.25

    def test_pgfl_method(self, params: NetworkParams) -> None:
        """Test the client PGFL against the function."""
        client = EnomaClient(params)
        f = moment_kernel(params, 1.0, 1.0)
        assert client.pgfl(1, f) == pytest.approx(pgfl_enoma(1, params, f), rel=1e-12)
