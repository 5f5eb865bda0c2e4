"""Unit tests for the link-distance laws and order statistics."""

import math

import pytest
from scipy import integrate

from noma_metadist.core.exceptions import DomainError
from noma_metadist.distances import (
    cnoma_law,
    enoma_law,
    nn_distance_cdf,
    nn_distance_pdf,
    nn_distance_quantile,
    ordered_law,
    ordered_pdf,
    ordered_pdf_cnoma,
    ordered_pdf_strong_expansion,
    ordered_pdf_weak_expansion,
    strong_coefficient,
    unordered_cdf_cnoma,
    unordered_cdf_enoma,
    unordered_pdf_cnoma,
    unordered_pdf_enoma,
    weak_coefficient,
)
from noma_metadist.models.network import NetworkParams


class TestUnorderedLaws:
    """Tests for the unordered link-distance laws."""

    def test_enoma_density_integrates_to_one(self, params: NetworkParams) -> None:
        """Test that the Rayleigh density is normalised."""
        total, _ = integrate.quad(lambda r: unordered_pdf_enoma(params, r), 0.0, math.inf)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_enoma_cdf(self, params: NetworkParams) -> None:
        """Test F(r) = 1 - exp(-pi lambda r^2)."""
        r = 0.2
        expected = 1.0 - math.exp(-math.pi * 10 * r * r)
        assert unordered_cdf_enoma(params, r) == pytest.approx(expected)

    def test_cnoma_support(self) -> None:
        """Test that the in-disk law vanishes beyond rho/2 and its cdf saturates."""
        assert unordered_pdf_cnoma(0.4, 0.25) == 0.0
        assert unordered_cdf_cnoma(0.4, 0.3) == 1.0
        assert unordered_cdf_cnoma(0.4, 0.1) == pytest.approx(0.25)

    def test_negative_distance_rejected(self, params: NetworkParams) -> None:
        """Test that negative distances raise DomainError."""
        with pytest.raises(DomainError):
            unordered_pdf_enoma(params, -0.1)
        with pytest.raises(DomainError):
            unordered_pdf_cnoma(0.0, 0.1)


class TestNearestNeighbourDistance:
    """Tests for the law of rho."""

    def test_mean(self, params: NetworkParams) -> None:
        """Test E[rho] = 1 / (2 sqrt(lambda))."""
        mean, _ = integrate.quad(lambda x: x * nn_distance_pdf(params, x), 0.0, math.inf)
        assert mean == pytest.approx(1.0 / (2.0 * math.sqrt(10.0)), rel=1e-9)

    @pytest.mark.parametrize("q", [0.0, 0.1, 0.5, 0.99, 1.0 - 1e-10])
    def test_quantile_inverts_cdf(self, params: NetworkParams, q: float) -> None:
        """Test that the quantile is the inverse of the cdf."""
        assert nn_distance_cdf(params, nn_distance_quantile(params, q)) == pytest.approx(
            q, abs=1e-12
        )

    def test_quantile_domain(self, params: NetworkParams) -> None:
        """Test that q = 1 is outside the quantile domain."""
        with pytest.raises(DomainError):
            nn_distance_quantile(params, 1.0)


class TestOrderedDensities:
    """Tests for the ordered link-distance densities."""

    @pytest.mark.parametrize("n_users", [1, 2, 3, 6])
    def test_ordered_density_normalised(self, params: NetworkParams, n_users: int) -> None:
        """Test that every ordered density integrates to one."""
        law = enoma_law(params)
        for i in range(1, n_users + 1):
            total, _ = integrate.quad(ordered_law(i, n_users, law), 0.0, math.inf)
            assert total == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("n_users", [1, 2, 3, 4, 5, 6])
    @pytest.mark.parametrize("r", [0.01, 0.1, 0.2, 0.35])
    def test_three_forms_agree(self, params: NetworkParams, n_users: int, r: float) -> None:
        """Test direct, weak and strong forms pointwise for every rank."""
        law = enoma_law(params)
        for i in range(1, n_users + 1):
            direct = ordered_pdf(i, n_users, law, r)
            assert ordered_pdf_weak_expansion(i, n_users, law, r) == pytest.approx(
                direct, abs=1e-10
            )
            assert ordered_pdf_strong_expansion(i, n_users, law, r) == pytest.approx(
                direct, abs=1e-10
            )

    @pytest.mark.parametrize("n_users", [1, 2, 3, 4, 5, 6])
    @pytest.mark.parametrize("r", [0.01, 0.05, 0.1, 0.14, 0.2])
    def test_three_forms_agree_in_disk(self, n_users: int, r: float) -> None:
        """Test direct, weak and strong forms of the in-disk law, inside and beyond rho/2."""
        law = cnoma_law(0.3)
        for i in range(1, n_users + 1):
            direct = ordered_pdf(i, n_users, law, r)
            assert ordered_pdf_weak_expansion(i, n_users, law, r) == pytest.approx(
                direct, rel=1e-9, abs=1e-9
            )
            assert ordered_pdf_strong_expansion(i, n_users, law, r) == pytest.approx(
                direct, rel=1e-9, abs=1e-9
            )

    def test_mean_of_order_statistics(self, params: NetworkParams) -> None:
        """Test that the ordered means sum to N times the unordered mean."""
        law = enoma_law(params)
        n_users = 3
        means = [
            integrate.quad(lambda r, i=i: r * ordered_pdf(i, n_users, law, r), 0.0, math.inf)[0]
            for i in range(1, n_users + 1)
        ]
        unordered = integrate.quad(lambda r: r * law.pdf(r), 0.0, math.inf)[0]
        assert math.fsum(means) == pytest.approx(n_users * unordered, rel=1e-8)
        assert means[0] < means[1] < means[2]

    def test_cnoma_ordered_density(self) -> None:
        """Test the C-NOMA ordered density on and beyond its support."""
        rho = 0.3
        total, _ = integrate.quad(lambda r: ordered_pdf_cnoma(2, 2, rho, r), 0.0, rho / 2.0)
        assert total == pytest.approx(1.0, abs=1e-10)
        assert ordered_pdf_cnoma(1, 2, rho, 0.2) == 0.0
        assert cnoma_law(rho).support == pytest.approx(0.15)

    def test_coefficients(self) -> None:
        """Test the alternating expansion weights for N = 3."""
        assert [weak_coefficient(1, m) for m in (1, 2, 3)] == [1, -1, 1]
        assert [strong_coefficient(2, m, 3) for m in (1, 2)] == [-2, 1]
        assert [strong_coefficient(3, m, 3) for m in (1, 2, 3)] == [1, -1, 1]

    def test_rank_out_of_range(self, params: NetworkParams) -> None:
        """Test that ranks outside 1..N are rejected."""
        with pytest.raises(DomainError):
            ordered_pdf(3, 2, enoma_law(params), 0.1)
