"""Meta-distribution module.

Provides the MetaDistClient and the beta moment-matching functions.
"""

from noma_metadist.metadist.client import (
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

__all__ = [
    "MetaDistClient",
    "build_md",
    "md_ccdf",
    "md_cdf",
    "md_inverse_ccdf",
    "md_moment",
    "md_percentile",
    "scp",
    "variance",
]
