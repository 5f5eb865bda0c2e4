"""UE placement in the tagged cell.

C-NOMA UEs are drawn by inverse-cdf sampling in the in-disk. E-NOMA UEs are drawn
uniformly in the whole Voronoi cell by nearest-BS rejection from a disk that is
known to contain the cell.
"""

import logging
import math

import numpy as np

from noma_metadist.core.exceptions import PlacementError
from noma_metadist.models.simulation import Network

logger = logging.getLogger(__name__)

_RADIUS_GROWTH = 1.25
_MIN_BATCH = 64


def uniform_in_disk(
    rng: np.random.Generator, center: np.ndarray, radius: float, count: int
) -> np.ndarray:
    """Draw count points uniformly in a disk, radius sqrt(u) scaled, angle uniform."""
    r = radius * np.sqrt(rng.random(count))
    angle = rng.uniform(0.0, 2.0 * math.pi, count)
    return center + np.column_stack((r * np.cos(angle), r * np.sin(angle)))


def place_ues_cnoma(network: Network, n_users: int, rng: np.random.Generator) -> np.ndarray:
    """Place UEs uniformly in the in-disk b(x0, rho/2).

    Returns:
        Positions, shape (n_users, 2), unordered
    """
    return uniform_in_disk(rng, network.tagged_bs, 0.5 * network.rho, n_users)


def circle_outside_cell(distances: np.ndarray, directions: np.ndarray, radius: float) -> bool:
    """Whether the circle of the given radius around a BS lies outside its Voronoi cell.

    A point at angle phi on the circle is closer to a neighbour at distance d and
    direction psi iff |phi - psi| < arccos(d / (2 radius)). The cell is convex and
    contains the centre, so it fits in the disk iff these arcs cover the circle.

    Args:
        distances: Distances from the BS to its neighbours
        directions: Directions to the neighbours, in radians
        radius: Circle radius

    Returns:
        True when the cell lies inside the disk of this radius
    """
    near = distances < 2.0 * radius
    if not np.any(near):
        return False
    half = np.arccos(distances[near] / (2.0 * radius))
    centre = np.mod(directions[near], 2.0 * math.pi)
    starts = centre - half
    ends = centre + half

    arcs: list[tuple[float, float]] = []
    for start, end in zip(starts.tolist(), ends.tolist(), strict=True):
        if start < 0.0:
            arcs.append((start + 2.0 * math.pi, 2.0 * math.pi))
            arcs.append((0.0, end))
        elif end > 2.0 * math.pi:
            arcs.append((start, 2.0 * math.pi))
            arcs.append((0.0, end - 2.0 * math.pi))
        else:
            arcs.append((start, end))
    arcs.sort()

    covered = 0.0
    for start, end in arcs:
        if start > covered:
            return False
        covered = max(covered, end)
    return covered >= 2.0 * math.pi


def enclosing_radius(network: Network, window_radius: float) -> float:
    """Radius of a disk about the tagged BS that contains its whole Voronoi cell.

    Starts at rho and grows geometrically. The cell is trusted only while every BS
    that could shape it (those within twice the radius) lies inside the window.

    Raises:
        PlacementError: If the cell reaches the window edge
    """
    offsets = network.interferers - network.tagged_bs
    distances = np.hypot(offsets[:, 0], offsets[:, 1])
    directions = np.arctan2(offsets[:, 1], offsets[:, 0])
    reach = window_radius - float(np.hypot(*network.tagged_bs))

    radius = network.rho
    while 2.0 * radius <= reach:
        if circle_outside_cell(distances, directions, radius):
            logger.debug("tagged cell enclosed at radius %.4g (rho %.4g)", radius, network.rho)
            return radius
        radius *= _RADIUS_GROWTH
    raise PlacementError(
        f"tagged cell is not closed within the window (reach {reach:.4g}, rho {network.rho:.4g})"
    )


def place_ues_enoma(
    network: Network,
    n_users: int,
    rng: np.random.Generator,
    *,
    window_radius: float,
    max_attempts: int,
) -> np.ndarray:
    """Place UEs uniformly in the Voronoi cell of the tagged BS.

    Candidates are uniform in a disk containing the cell; a candidate is kept iff the
    tagged BS is its nearest BS.

    Returns:
        Positions, shape (n_users, 2), unordered

    Raises:
        PlacementError: If the cell is not closed in the window or max_attempts
            batches do not yield n_users points
    """
    radius = enclosing_radius(network, window_radius)
    offsets = network.interferers - network.tagged_bs
    shaping = network.interferers[np.hypot(offsets[:, 0], offsets[:, 1]) < 2.0 * radius]
    batch = max(_MIN_BATCH, 4 * n_users)

    accepted: list[np.ndarray] = []
    count = 0
    for _ in range(max_attempts):
        candidates = uniform_in_disk(rng, network.tagged_bs, radius, batch)
        own = np.sum((candidates - network.tagged_bs) ** 2, axis=1)
        if shaping.shape[0]:
            gaps = candidates[:, None, :] - shaping[None, :, :]
            other = np.min(np.sum(gaps**2, axis=2), axis=1)
            inside = candidates[own < other]
        else:
            inside = candidates
        accepted.append(inside)
        count += inside.shape[0]
        if count >= n_users:
            return np.concatenate(accepted)[:n_users]
    raise PlacementError(
        f"rejection sampling kept {count} of {n_users} UEs in {max_attempts} batches"
    )
