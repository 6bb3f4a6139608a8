from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
import networkx as nx
import numpy as np
import pytest

from antidim.model.graph import Graph, all_pairs_shortest_paths

settings.register_profile(
    "antidim",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("antidim")

FIXTURES = Path(__file__).parent / "fixtures"

# Six nodes v1..v6 as ids 0..5: v1-v2, v2-v4, v2-v6, v4-v5, v3-v5, v3-v4
EXAMPLE_EDGES = [(0, 1), (1, 3), (1, 5), (3, 4), (2, 4), (2, 3)]


@pytest.fixture
def example_graph() -> Graph:
    return Graph.from_edges(6, EXAMPLE_EDGES)


@pytest.fixture
def example_distances(example_graph):
    return all_pairs_shortest_paths(example_graph)


def distances_of(g: Graph):
    return all_pairs_shortest_paths(g)


def random_connected_graph(seed: int, n: int, extra_edge_probability: float = 0.2) -> Graph:
    """A random spanning tree plus independent extra edges; always connected."""
    rng = np.random.default_rng(seed)
    edges = [(v, int(rng.integers(v))) for v in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_edge_probability:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_tree(seed: int, n: int) -> Graph:
    rng = np.random.default_rng(seed)
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    sequence = rng.integers(0, n, size=n - 2).tolist()
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))


@st.composite
def connected_graphs(draw, min_nodes: int = 1, max_nodes: int = 12) -> Graph:
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    parents = [draw(st.integers(min_value=0, max_value=v - 1)) for v in range(1, n)]
    edges = list(zip(range(1, n), parents))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        edges += draw(st.lists(st.sampled_from(pairs), max_size=2 * n))
    return Graph.from_edges(n, edges)


@st.composite
def trees(draw, min_nodes: int = 2, max_nodes: int = 12) -> Graph:
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    parents = [draw(st.integers(min_value=0, max_value=v - 1)) for v in range(1, n)]
    return Graph.from_edges(n, zip(range(1, n), parents))
