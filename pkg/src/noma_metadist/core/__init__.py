"""Core infrastructure for noma-metadist.

This package holds the configuration defaults, the exception hierarchy, the
special-function kernel and the quadrature layer that every engine builds on.
The engine base class lives in ``noma_metadist.core.base`` and is imported from
there directly, since it depends on the parameter models.
"""

from noma_metadist.core.config import Config
from noma_metadist.core.exceptions import (
    ConfigurationError,
    DomainError,
    InfeasibleAllocationError,
    InfeasibleTmrError,
    InvalidMomentsError,
    NomaMetaDistError,
    NumericalFailureError,
    ParameterValidationError,
    PlacementError,
)

__all__ = [
    "Config",
    "ConfigurationError",
    "DomainError",
    "InfeasibleAllocationError",
    "InfeasibleTmrError",
    "InvalidMomentsError",
    "NomaMetaDistError",
    "NumericalFailureError",
    "ParameterValidationError",
    "PlacementError",
]
