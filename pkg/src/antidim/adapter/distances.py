"""
Distance Backends

Interchangeable all-pairs-shortest-path implementations behind the
DistanceBackend protocol. ``Context`` names which one a run uses.
"""

import logging
import time

from antidim.model.graph import (
    DistanceMatrix,
    Graph,
    all_pairs_shortest_paths,
    floyd_warshall_distances,
)

logger = logging.getLogger(__name__)


class BreadthFirstDistances:
    """One BFS per source, O(n*m). The production backend."""

    def __call__(self, g: Graph) -> DistanceMatrix:
        started = time.perf_counter()
        d = all_pairs_shortest_paths(g)
        logger.debug("BFS distances for n=%d in %.3fs", g.n, time.perf_counter() - started)
        return d


class FloydWarshallDistances:
    """Dense O(n^3) recomputation, used to cross-check the BFS backend."""

    def __call__(self, g: Graph) -> DistanceMatrix:
        return floyd_warshall_distances(g)
