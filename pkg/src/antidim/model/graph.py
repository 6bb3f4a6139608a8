"""
Graph Entities and Distance Substrate

Domain entities for simple undirected graphs and their all-pairs hop distances,
plus the structural rules every measure relies on: component extraction and the
breadth-first all-pairs-shortest-path computation.

Key Concepts:
-------------
- **Graph**: immutable adjacency-list graph over node ids 0..n-1
- **DistanceMatrix**: read-only n x n matrix of unweighted shortest-path lengths,
  the source of every metric representation
- **Largest connected component**: the analysis substrate for every real network

Distances are stored as 16-bit unsigned hop counts. Real social networks have tiny
diameters, and halving the matrix keeps 2000-node runs comfortably in memory.
"""

from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
import logging

import networkx as nx
import numpy as np

from antidim.model.errors import (
    DiameterOverflowError,
    DisconnectedGraphError,
    DomainError,
)

logger = logging.getLogger(__name__)

DISTANCE_DTYPE = np.uint16
MAX_HOPS = int(np.iinfo(DISTANCE_DTYPE).max) - 1


@dataclass(frozen=True, slots=True)
class Graph:
    """
    Simple undirected graph with contiguous integer node ids.

    Invariants (checked on construction):
        - node ids are exactly 0..n-1
        - adjacency[v] is strictly ascending, never contains v
        - u in adjacency[v] <=> v in adjacency[u]
        - edge_count == sum(len(adjacency[v])) / 2

    Use ``Graph.from_edges`` to build one from an arbitrary edge iterable; it drops
    self-loops and repeated edges so the invariants hold by construction.

    Attributes:
        n: Number of nodes
        adjacency: Per-node sorted tuple of neighbour ids
        edge_count: Number of undirected edges
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int = field(default=-1)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"node count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise DomainError(
                f"adjacency has {len(self.adjacency)} rows for n={self.n} nodes"
            )

        degree_sum = 0
        for v, neighbours in enumerate(self.adjacency):
            previous = -1
            for u in neighbours:
                if not 0 <= u < self.n:
                    raise DomainError(f"node {v} lists unknown neighbour {u}")
                if u == v:
                    raise DomainError(f"self-loop on node {v}")
                if u <= previous:
                    raise DomainError(f"adjacency of node {v} is not strictly ascending")
                previous = u
            degree_sum += len(neighbours)

        for v, neighbours in enumerate(self.adjacency):
            for u in neighbours:
                if not _sorted_contains(self.adjacency[u], v):
                    raise DomainError(f"edge {{{v},{u}}} is not symmetric")

        if self.edge_count == -1:
            object.__setattr__(self, "edge_count", degree_sum // 2)
        elif self.edge_count * 2 != degree_sum:
            raise DomainError(
                f"edge_count={self.edge_count} disagrees with degree sum {degree_sum}"
            )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """
        Build a graph on n nodes, silently dropping self-loops and repeated edges.

        Parameters:
            n: Number of nodes; every endpoint must lie in 0..n-1
            edges: Iterable of (u, v) pairs in any orientation

        Returns:
            Graph: The simple graph induced by the distinct non-loop pairs
        """
        neighbour_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            if u == v:
                continue
            neighbour_sets[u].add(v)
            neighbour_sets[v].add(u)
        return cls(n=n, adjacency=tuple(tuple(sorted(s)) for s in neighbour_sets))

    @classmethod
    def empty(cls) -> "Graph":
        return cls(n=0, adjacency=())

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as (u, v) with u < v, in ascending order."""
        for u, neighbours in enumerate(self.adjacency):
            for v in neighbours:
                if u < v:
                    yield u, v

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _sorted_contains(self.adjacency[u], v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_connected(self.to_networkx())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.edge_count == self.n - 1 and self.is_connected()

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Convert a networkx graph, relabelling nodes by sorted order when possible."""
        try:
            nodes = sorted(g.nodes())
        except TypeError:
            nodes = list(g.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges()))


@dataclass(frozen=True, slots=True)
class EdgeList:
    """
    A graph together with the original label of every node id.

    ``labels[v]`` is the token that node v carried in its source file. Ingestion
    counts what it dropped to keep the graph simple.
    """

    graph: Graph
    labels: tuple[str, ...]
    dropped_loops: int = 0
    dropped_duplicates: int = 0

    def __post_init__(self):
        if len(self.labels) != self.graph.n:
            raise DomainError(
                f"{len(self.labels)} labels for a graph with n={self.graph.n} nodes"
            )

    @classmethod
    def unlabelled(cls, graph: Graph) -> "EdgeList":
        return cls(graph=graph, labels=tuple(str(v) for v in range(graph.n)))

    def restricted_to(self, nodes: Iterable[int]) -> "EdgeList":
        """The induced sub-edge-list on ``nodes``, labels carried along."""
        kept = sorted(set(nodes))
        return EdgeList(
            graph=induced_subgraph(self.graph, kept),
            labels=tuple(self.labels[v] for v in kept),
        )


@dataclass(frozen=True, slots=True, eq=False)
class DistanceMatrix:
    """
    All-pairs hop counts of a connected graph.

    The matrix is read-only: ``dist.flags.writeable`` is cleared on construction,
    so one instance can be shared by every solver and worker thread.

    Attributes:
        n: Number of nodes
        dist: n x n numpy array of uint16 hop counts
    """

    n: int
    dist: np.ndarray

    def __post_init__(self):
        if self.dist.shape != (self.n, self.n):
            raise DomainError(f"distance matrix shape {self.dist.shape} does not match n={self.n}")
        if self.dist.flags.writeable or self.dist.dtype != DISTANCE_DTYPE:
            frozen = np.array(self.dist, dtype=DISTANCE_DTYPE, copy=True)
            frozen.flags.writeable = False
            object.__setattr__(self, "dist", frozen)

    def __getitem__(self, key):
        return self.dist[key]

    def row(self, v: int) -> np.ndarray:
        return self.dist[v]


def _sorted_contains(values: tuple[int, ...], x: int) -> bool:
    lo, hi = 0, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if values[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(values) and values[lo] == x


def connected_components(g: Graph) -> list[list[int]]:
    """
    Components as ascending node lists, ordered by their smallest node id.
    """
    components = [sorted(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(components, key=lambda c: c[0])


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """
    Induced subgraph on ``nodes`` relabelled 0..m-1 in ascending original order.
    """
    kept = sorted(set(nodes))
    index = {v: i for i, v in enumerate(kept)}
    adjacency = tuple(
        tuple(index[u] for u in g.adjacency[v] if u in index) for v in kept
    )
    return Graph(n=len(kept), adjacency=adjacency)


def largest_component_nodes(g: Graph) -> list[int]:
    """
    Original ids of the largest component; ties go to the component with the
    smallest minimum node id.
    """
    components = connected_components(g)
    return max(components, key=len) if components else []


def largest_connected_component(g: Graph) -> Graph:
    """
    Induced subgraph on the largest connected component.

    Nodes are relabelled 0..m-1 preserving relative order, so repeated runs are
    reproducible byte for byte. The empty graph maps to itself.

    Example:
        >>> g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        >>> largest_connected_component(g).n
        3
    """
    if g.n == 0:
        return g
    nodes = largest_component_nodes(g)
    if len(nodes) == g.n:
        return g
    logger.info("largest connected component keeps %d of %d nodes", len(nodes), g.n)
    return induced_subgraph(g, nodes)


def all_pairs_shortest_paths(g: Graph) -> DistanceMatrix:
    """
    Unweighted all-pairs shortest paths by one breadth-first search per source.

    O(n*m) total, which beats Floyd-Warshall's O(n^3) on every sparse social
    network. Each source writes only its own row.

    Parameters:
        g: Connected graph with n >= 1

    Returns:
        DistanceMatrix: hop counts, dist[u][v] == 1 exactly on edges

    Raises:
        DomainError: g has no nodes
        DisconnectedGraphError: some pair is unreachable (names both nodes)
        DiameterOverflowError: a distance does not fit 16 bits
    """
    n = g.n
    if n == 0:
        raise DomainError("all-pairs shortest paths needs at least one node")

    dist = np.zeros((n, n), dtype=DISTANCE_DTYPE)
    for source in range(n):
        row = _bfs_row(g, source)
        dist[source, :] = row

    dist.flags.writeable = False
    return DistanceMatrix(n=n, dist=dist)


def _bfs_row(g: Graph, source: int) -> list[int]:
    row = [-1] * g.n
    row[source] = 0
    queue = deque([source])
    reached = 1
    adjacency = g.adjacency
    while queue:
        v = queue.popleft()
        next_level = row[v] + 1
        for u in adjacency[v]:
            if row[u] < 0:
                if next_level > MAX_HOPS:
                    raise DiameterOverflowError(
                        f"hop count from node {source} exceeds {MAX_HOPS}"
                    )
                row[u] = next_level
                reached += 1
                queue.append(u)
    if reached < g.n:
        raise DisconnectedGraphError(source, row.index(-1))
    return row


def floyd_warshall_distances(g: Graph) -> DistanceMatrix:
    """
    O(n^3) all-pairs distances kept as an independent oracle for the BFS version.
    """
    n = g.n
    if n == 0:
        raise DomainError("all-pairs shortest paths needs at least one node")

    unreachable = np.int64(n + 1)
    work = np.full((n, n), unreachable, dtype=np.int64)
    np.fill_diagonal(work, 0)
    for u, v in g.edges():
        work[u, v] = 1
        work[v, u] = 1
    for k in range(n):
        np.minimum(work, work[:, k, None] + work[None, k, :], out=work)

    if (work >= unreachable).any():
        u, v = (int(x) for x in np.argwhere(work >= unreachable)[0])
        raise DisconnectedGraphError(u, v)
    if work.max() > MAX_HOPS:
        raise DiameterOverflowError(f"diameter {int(work.max())} exceeds {MAX_HOPS}")

    dist = work.astype(DISTANCE_DTYPE)
    dist.flags.writeable = False
    return DistanceMatrix(n=n, dist=dist)


# Named families used by fixtures, tests and the ``builtin:`` CLI inputs.


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError(f"a cycle needs at least 3 nodes, got {n}")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, v) for v in range(1, leaves + 1)))


def wheel_graph(rim: int) -> Graph:
    """
    Wheel W_{1,rim}: a cycle on nodes 0..rim-1 plus a centre (node ``rim``)
    adjacent to every rim node.
    """
    if rim < 3:
        raise DomainError(f"a wheel needs a rim of at least 3 nodes, got {rim}")
    rim_edges = [(v, (v + 1) % rim) for v in range(rim)]
    spokes = [(rim, v) for v in range(rim)]
    return Graph.from_edges(rim + 1, rim_edges + spokes)
