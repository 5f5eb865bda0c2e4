"""E-NOMA moments module.

Provides the EnomaClient and the closed-form moment functions.
"""

from noma_metadist.enoma.client import (
    EnomaClient,
    moment_enoma,
    moment_enoma_given_m,
    mtilde_enoma,
    pgfl_enoma,
)

__all__ = ["EnomaClient", "moment_enoma", "moment_enoma_given_m", "mtilde_enoma", "pgfl_enoma"]
