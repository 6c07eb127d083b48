# SPDX-License-Identifier: CC-BY-SA-4.0

"""Empirical Gromov hyperbolicity through the four-point condition."""

import logging
from itertools import combinations

import networkx as nx
import numpy as np
from numpy.typing import NDArray
from scipy.sparse import csgraph

from relanosov_lab.cusp.depth import CuspSpaceError

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 200


def _all_distances(graph: nx.Graph) -> NDArray[np.float64]:
    adjacency = nx.to_scipy_sparse_array(graph, nodelist=list(graph.nodes), format="csr")
    distances = csgraph.shortest_path(adjacency, directed=False, unweighted=True)
    if not np.all(np.isfinite(distances)):
        raise CuspSpaceError("delta estimation needs a connected graph")
    return distances


def _largest_defect(
    first: NDArray[np.float64], second: NDArray[np.float64], third: NDArray[np.float64]
) -> float:
    """Half the gap between the largest and the middle of three pair sums."""
    largest = np.maximum(np.maximum(first, second), third)
    smallest = np.minimum(np.minimum(first, second), third)
    middle = first + second + third - largest - smallest
    return float((largest - middle).max()) / 2


def estimate_delta(graph: nx.Graph, samples: int = 10_000, seed: int = 0) -> float:
    """Largest four-point defect.

    Exhaustive below ``EXHAUSTIVE_LIMIT`` vertices, otherwise the maximum over
    ``samples`` seeded random quadruples, which is a lower bound.
    """
    n = graph.number_of_nodes()
    if n < 4:
        return 0.0
    distances = _all_distances(graph)
    if n < EXHAUSTIVE_LIMIT:
        delta = 0.0
        # quadruples x < y < z, w; the defect does not depend on their order
        for x, y in combinations(range(n - 2), 2):
            rest = slice(y + 1, None)
            second = distances[x, rest][:, None] + distances[y, rest][None, :]
            delta = max(
                delta,
                _largest_defect(distances[x, y] + distances[rest, rest], second, second.T),
            )
        logger.debug("Exhaustive delta", extra={"vertices": n, "delta": delta})
        return delta
    rng = np.random.default_rng(seed)
    quadruples = np.array([rng.choice(n, size=4, replace=False) for _ in range(samples)])
    x, y, z, w = quadruples.T
    delta = _largest_defect(
        distances[x, y] + distances[z, w],
        distances[x, z] + distances[y, w],
        distances[x, w] + distances[y, z],
    )
    logger.debug("Sampled delta", extra={"vertices": n, "samples": samples, "delta": delta})
    return delta
