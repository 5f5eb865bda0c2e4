"""Resource allocation module.

Provides the AllocationClient, UE rates and the TMR-constrained two-user solver.
"""

from noma_metadist.allocation.client import (
    AllocationClient,
    ScpTable,
    scp_given_m,
    scp_table,
    solve_tmr,
    ue_rate,
)

__all__ = ["AllocationClient", "ScpTable", "scp_given_m", "scp_table", "solve_tmr", "ue_rate"]
