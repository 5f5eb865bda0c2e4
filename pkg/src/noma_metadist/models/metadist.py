"""Meta-distribution models.

A meta distribution is the law of the CCP across network realizations. It is
represented either by a moment-matched beta distribution or, when the beta
parameters degenerate, by a finite set of atoms.
"""

import math

from pydantic import Field, computed_field, model_validator

from noma_metadist.models.common import NomaBaseModel


class BetaMD(NomaBaseModel):
    """Beta distribution matched to the first two CCP moments.

    Attributes:
        m1: First moment, in (0, 1)
        m2: Second moment, with m1^2 < m2 < m1
    """

    m1: float = Field(gt=0.0, lt=1.0)
    m2: float = Field(gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def check_nondegenerate(self) -> "BetaMD":
        """Require strictly positive variance and m2 < m1."""
        if not self.m1 * self.m1 < self.m2 < self.m1:
            raise ValueError(
                f"beta matching needs m1^2 < m2 < m1, got m1={self.m1!r}, m2={self.m2!r}"
            )
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def shape_b(self) -> float:
        """(m1 - m2)(1 - m1) / (m2 - m1^2)."""
        return (self.m1 - self.m2) * (1.0 - self.m1) / (self.m2 - self.m1 * self.m1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def shape_a(self) -> float:
        """shape_b * m1 / (1 - m1)."""
        return self.shape_b * self.m1 / (1.0 - self.m1)

    @property
    def variance(self) -> float:
        """m2 - m1^2."""
        return self.m2 - self.m1 * self.m1


class DegenerateMD(NomaBaseModel):
    """Meta distribution concentrated on finitely many CCP values.

    A single atom represents zero variance (including the zero CCP of an infeasible
    allocation); the atoms {0, 1} represent the limit m2 = m1.

    Attributes:
        atoms: CCP values in [0, 1], strictly increasing
        weights: Probabilities of the atoms, summing to 1
    """

    atoms: tuple[float, ...]
    weights: tuple[float, ...]

    @model_validator(mode="after")
    def check_law(self) -> "DegenerateMD":
        """Require a valid discrete law on [0, 1]."""
        if not self.atoms or len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights must be non-empty and of equal length")
        if any(not 0.0 <= x <= 1.0 for x in self.atoms):
            raise ValueError(f"atoms must lie in [0, 1], got {self.atoms}")
        if any(b <= a for a, b in zip(self.atoms, self.atoms[1:], strict=False)):
            raise ValueError(f"atoms must be strictly increasing, got {self.atoms}")
        if any(w < 0.0 for w in self.weights) or abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must be a probability vector, got {self.weights}")
        return self

    @classmethod
    def point(cls, value: float) -> "DegenerateMD":
        """Point mass at value."""
        return cls(atoms=(value,), weights=(1.0,))

    @classmethod
    def infeasible(cls) -> "DegenerateMD":
        """Point mass at zero, the meta distribution of an infeasible allocation."""
        return cls.point(0.0)

    @property
    def m1(self) -> float:
        """Mean of the atoms."""
        return math.fsum(w * x for x, w in zip(self.atoms, self.weights, strict=True))

    @property
    def m2(self) -> float:
        """Second moment of the atoms."""
        return math.fsum(w * x * x for x, w in zip(self.atoms, self.weights, strict=True))


MetaDistribution = BetaMD | DegenerateMD
