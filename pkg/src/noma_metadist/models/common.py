"""Common models and enums shared across the package.

This module contains the base model, the shared enums, and the numerical
configuration objects used by the special functions and quadrature engines.
"""

from enum import StrEnum
from typing import Any, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from noma_metadist.core.config import (
    DEFAULT_MAX_SUBDIVISIONS,
    DEFAULT_MAX_TERMS,
    DEFAULT_QUAD_ABS_TOL,
    DEFAULT_QUAD_REL_TOL,
    DEFAULT_REL_ERR,
    DEFAULT_RHO_CUTOFF_QUANTILE,
    INNER_TOLERANCE_FACTOR,
)
from noma_metadist.core.exceptions import ParameterValidationError

ModelT = TypeVar("ModelT", bound=BaseModel)


class Scheme(StrEnum):
    """UE placement scheme.

    Attributes:
        E_NOMA: UEs uniform over the whole Voronoi cell of the serving BS
        C_NOMA: UEs uniform in the in-disk of radius rho/2 around the serving BS
    """

    E_NOMA = "e-noma"
    C_NOMA = "c-noma"


class MomentMethod(StrEnum):
    """How a CCP moment is obtained.

    E-NOMA has a single closed form, so EXACT and APPROX coincide for it.

    Attributes:
        EXACT: Closed form (E-NOMA) or the guard-zone double integral (C-NOMA)
        APPROX: Single-integral approximation for C-NOMA
        SIMULATED: Monte Carlo estimate
    """

    EXACT = "exact"
    APPROX = "approx"
    SIMULATED = "simulated"


class TaggedCell(StrEnum):
    """Convention for the tagged cell of a simulated network.

    Attributes:
        PALM: A BS is added at the window centre (typical cell); its nearest-neighbour
            distance follows f_rho exactly
        ZERO: The cell covering the window centre; a uniform UE in it has an exactly
            Rayleigh link distance
    """

    PALM = "palm"
    ZERO = "zero"


class NomaBaseModel(BaseModel):
    """Base model for all noma-metadist Pydantic models.

    Provides common configuration for all models, including:
    - Immutability (parameter objects are shared across threads and processes)
    - Rejecting unknown fields (typos in sweep configs fail loudly)
    - Support for field aliases
    """

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        use_enum_values=False,
        populate_by_name=True,
    )


def validated(model: type[ModelT], **fields: Any) -> ModelT:
    """Construct a model, converting Pydantic errors into ParameterValidationError.

    Args:
        model: The model class to build
        **fields: Field values

    Returns:
        The validated model instance

    Raises:
        ParameterValidationError: If validation fails
    """
    try:
        return model(**fields)
    except ValidationError as exc:
        raise ParameterValidationError(f"Invalid {model.__name__}", exc) from exc


class Tolerance(NomaBaseModel):
    """Accuracy target for series-based special functions.

    Attributes:
        rel_err: Relative error target
        max_terms: Series term cap; exceeding it is a numerical failure
    """

    rel_err: float = Field(default=DEFAULT_REL_ERR, gt=0.0)
    max_terms: int = Field(default=DEFAULT_MAX_TERMS, ge=1)


class QuadratureConfig(NomaBaseModel):
    """Accuracy and truncation settings for adaptive quadrature.

    Attributes:
        rel_tol: Relative tolerance of the outermost integral
        abs_tol: Absolute tolerance of the outermost integral
        rho_cutoff_quantile: Quantile of f_rho where the semi-infinite rho-integral stops
        max_subdivisions: Subinterval limit passed to QUADPACK
    """

    rel_tol: float = Field(default=DEFAULT_QUAD_REL_TOL, gt=0.0)
    abs_tol: float = Field(default=DEFAULT_QUAD_ABS_TOL, gt=0.0)
    rho_cutoff_quantile: float = Field(default=DEFAULT_RHO_CUTOFF_QUANTILE, gt=0.0, lt=1.0)
    max_subdivisions: int = Field(default=DEFAULT_MAX_SUBDIVISIONS, ge=1)

    def inner(self) -> "QuadratureConfig":
        """Tolerances for a nested integral, tighter by INNER_TOLERANCE_FACTOR."""
        return self.model_copy(
            update={
                "rel_tol": self.rel_tol / INNER_TOLERANCE_FACTOR,
                "abs_tol": self.abs_tol / INNER_TOLERANCE_FACTOR,
            }
        )
