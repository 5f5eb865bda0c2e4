"""Unit tests for beta moment matching and meta-distribution queries."""

import numpy as np
import pytest
from pydantic import ValidationError

from noma_metadist.core.exceptions import DomainError, InvalidMomentsError
from noma_metadist.metadist import (
    MetaDistClient,
    build_md,
    md_ccdf,
    md_cdf,
    md_inverse_ccdf,
    md_moment,
    md_percentile,
    scp,
    variance,
)
from noma_metadist.models.common import MomentMethod, Scheme
from noma_metadist.models.metadist import BetaMD, DegenerateMD
from noma_metadist.models.moments import MomentSet
from noma_metadist.models.network import NetworkParams


class TestBuildMd:
    """Tests for build_md."""

    def test_symmetric_beta(self) -> None:
        """Test that (0.5, 0.3) matches Beta(2, 2)."""
        md = build_md(0.5, 0.3)
        assert isinstance(md, BetaMD)
        assert md.shape_a == pytest.approx(2.0)
        assert md.shape_b == pytest.approx(2.0)

    @pytest.mark.parametrize(("m1", "m2"), [(0.8, 0.7), (0.2, 0.1), (0.6, 0.4)])
    def test_moments_reproduced(self, m1: float, m2: float) -> None:
        """Test that the matched law has the requested first two moments."""
        md = build_md(m1, m2)
        assert md_moment(md, 1.0) == pytest.approx(m1, rel=1e-12)
        assert md_moment(md, 2.0) == pytest.approx(m2, rel=1e-12)

    def test_zero_variance_is_point_mass(self) -> None:
        """Test that m2 = m1^2 gives a point mass at m1."""
        md = build_md(0.3, 0.09)
        assert md == DegenerateMD.point(0.3)

    def test_two_point_limit(self) -> None:
        """Test that m2 = m1 gives atoms at 0 and 1."""
        md = build_md(0.4, 0.4)
        assert isinstance(md, DegenerateMD)
        assert md.atoms == (0.0, 1.0)
        assert md.weights == pytest.approx((0.6, 0.4))

    def test_roundoff_is_clipped(self) -> None:
        """Test that moments just outside the admissible set are accepted."""
        md = build_md(1.0 + 1e-13, 1.0)
        assert md == DegenerateMD.point(1.0)

    @pytest.mark.parametrize(
        ("m1", "m2"), [(0.5, 0.6), (0.5, 0.2), (1.2, 1.0), (float("nan"), 0.1)]
    )
    def test_invalid_moments(self, m1: float, m2: float) -> None:
        """Test that pairs no law on [0, 1] can have are rejected."""
        with pytest.raises(InvalidMomentsError):
            build_md(m1, m2)

    def test_beta_model_rejects_degenerate_pair(self) -> None:
        """Test that BetaMD itself needs m1^2 < m2 < m1."""
        with pytest.raises(ValidationError):
            BetaMD(m1=0.5, m2=0.25)


class TestMdQueries:
    """Tests for ccdf, quantile and moment queries."""

    def test_beta_ccdf(self) -> None:
        """Test the Beta(2, 2) ccdf at its ends and centre."""
        md = build_md(0.5, 0.3)
        assert md_ccdf(md, 0.0) == 1.0
        assert md_ccdf(md, 0.5) == pytest.approx(0.5)
        assert md_ccdf(md, 1.0) == 0.0
        # 1 - (3 x^2 - 2 x^3) at x = 0.25
        assert md_ccdf(md, 0.25) == pytest.approx(1.0 - (3 * 0.0625 - 2 * 0.015625))

    def test_ccdf_nonincreasing(self) -> None:
        """Test monotonicity over a fine alpha grid."""
        md = build_md(0.7, 0.55)
        values = [md_ccdf(md, float(a)) for a in np.linspace(0.0, 1.0, 101)]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:], strict=False))

    def test_cdf_complements_ccdf(self) -> None:
        """Test cdf + ccdf = 1."""
        md = build_md(0.7, 0.55)
        assert md_cdf(md, 0.4) + md_ccdf(md, 0.4) == pytest.approx(1.0)

    def test_point_mass_uses_strict_inequality(self) -> None:
        """Test that P(CCP > alpha) excludes the atom itself."""
        md = DegenerateMD.point(0.3)
        assert md_ccdf(md, 0.2) == 1.0
        assert md_ccdf(md, 0.3) == 0.0

    def test_infeasible_md(self) -> None:
        """Test that the zero-CCP law has an empty ccdf everywhere."""
        md = DegenerateMD.infeasible()
        assert md_ccdf(md, 0.0) == 0.0
        assert md.m1 == 0.0

    def test_inverse_ccdf(self) -> None:
        """Test quantiles of Beta(2, 2) and of a two-point law."""
        md = build_md(0.5, 0.3)
        assert md_inverse_ccdf(md, 0.5) == pytest.approx(0.5, abs=1e-9)
        assert md_inverse_ccdf(md, 1.0) == 0.0
        assert md_inverse_ccdf(md, 0.0) == 1.0
        two_point = build_md(0.4, 0.4)
        assert md_inverse_ccdf(two_point, 0.4) == 0.0
        assert md_inverse_ccdf(two_point, 0.1) == 1.0

    def test_inverse_roundtrip(self) -> None:
        """Test md_ccdf(md_inverse_ccdf(f)) = f."""
        md = build_md(0.8, 0.7)
        alpha = md_inverse_ccdf(md, 0.95)
        assert md_ccdf(md, alpha) == pytest.approx(0.95, abs=1e-8)

    def test_percentile(self) -> None:
        """Test that the 50 % user of a symmetric law reaches 0.5."""
        assert md_percentile(build_md(0.5, 0.3), 50.0) == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("alpha", [-0.1, 1.1])
    def test_alpha_domain(self, alpha: float) -> None:
        """Test that alpha outside [0, 1] is rejected."""
        with pytest.raises(DomainError):
            md_ccdf(build_md(0.5, 0.3), alpha)

    def test_variance_and_scp(self) -> None:
        """Test the moment helpers."""
        assert variance(0.5, 0.3) == pytest.approx(0.05)
        assert variance(0.3, 0.09 - 1e-14) == 0.0
        assert scp(0.42) == 0.42
        with pytest.raises(InvalidMomentsError):
            variance(0.5, 0.2)


class TestMetaDistClient:
    """Tests for MetaDistClient."""

    def test_from_moments(self) -> None:
        """Test matching from a moment set."""
        client = MetaDistClient(NetworkParams())
        moments = MomentSet(
            scheme=Scheme.E_NOMA, method=MomentMethod.EXACT, rank=1, m1=0.5, m2=0.3
        )
        md = client.from_moments(moments)
        assert client.ccdf(md, 0.5) == pytest.approx(0.5)
        assert client.inverse_ccdf(md, 0.5) == pytest.approx(0.5, abs=1e-9)
        assert client.ccdf_curve(md, [0.0, 1.0]) == [1.0, 0.0]

    def test_empty_curve_rejected(self) -> None:
        """Test that an empty alpha grid is an error."""
        client = MetaDistClient(NetworkParams())
        with pytest.raises(DomainError):
            client.ccdf_curve(build_md(0.5, 0.3), [])
