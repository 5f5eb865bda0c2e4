"""Monte Carlo simulation module.

Provides the SimulatorClient and the network, placement and estimation functions
used to validate the analytic moments and meta distributions.
"""

from noma_metadist.simulator.client import (
    SimulatorClient,
    ccp_given_network,
    empirical_md,
    empirical_moments,
    gen_network,
    ks_distance,
    realization_ccp,
    run_simulation,
    simulate_realization,
    validate_joint_event,
)
from noma_metadist.simulator.placement import place_ues_cnoma, place_ues_enoma

__all__ = [
    "SimulatorClient",
    "ccp_given_network",
    "empirical_md",
    "empirical_moments",
    "gen_network",
    "ks_distance",
    "place_ues_cnoma",
    "place_ues_enoma",
    "realization_ccp",
    "run_simulation",
    "simulate_realization",
    "validate_joint_event",
]
