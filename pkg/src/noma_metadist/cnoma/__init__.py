"""C-NOMA moments module.

Provides the CnomaClient together with the guard-zone and single-integral moment
functions.
"""

from noma_metadist.cnoma.client import (
    CnomaClient,
    guard_zone_integral,
    moment_cnoma_approx,
    moment_cnoma_approx_given_m,
    moment_cnoma_approx_given_rho,
    moment_cnoma_exact,
    moment_cnoma_exact_given_m,
    pgfl_cnoma_given_rho,
)

__all__ = [
    "CnomaClient",
    "guard_zone_integral",
    "moment_cnoma_approx",
    "moment_cnoma_approx_given_m",
    "moment_cnoma_approx_given_rho",
    "moment_cnoma_exact",
    "moment_cnoma_exact_given_m",
    "pgfl_cnoma_given_rho",
]
