"""Counter-based random streams.

Every realization owns a Philox stream keyed by (seed, index), so a realization is
reproduced bit for bit no matter which worker draws it or in which order.
"""

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Purpose of a random stream within one realization."""

    NETWORK = 0
    FADING = 1


def realization_rng(seed: int, index: int, stream: Stream = Stream.NETWORK) -> np.random.Generator:
    """Generator for one realization.

    Args:
        seed: Root seed
        index: Realization index
        stream: Purpose of the stream; fading draws never disturb the network draws

    Returns:
        A Philox-backed numpy Generator
    """
    entropy = [seed, index] if stream is Stream.NETWORK else [seed, index, int(stream)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
