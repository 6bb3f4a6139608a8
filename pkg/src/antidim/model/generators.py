"""
Seeded Random-Graph Generators

Three models feed the experiments:

- **er**: Erdos-Renyi G(n, p), every unordered pair present independently with
  probability p
- **ba**: Barabasi-Albert G(n, q) preferential attachment over a "list of repeated
  nodes"
- **tree**: uniform random labelled tree decoded from a random Pruefer sequence

Randomness:
-----------
Every sample draws from ``numpy.random.Generator(PCG64)`` seeded by
``SeedSequence([seed, index, attempt])``. Distinct sample indices and resampling
attempts therefore get independent streams, and identical configurations always
produce identical graphs regardless of which worker generates them.
"""

from dataclasses import dataclass
from typing import Literal
import logging

import networkx as nx
import numpy as np

from antidim.model.errors import DomainError
from antidim.model.graph import Graph

logger = logging.getLogger(__name__)

Model = Literal["er", "ba", "tree"]
SPARSE_ER_FLOOR = 2.5


@dataclass(frozen=True, slots=True)
class GenConfig:
    """
    Generator parameters.

    Attributes:
        model: One of "er", "ba", "tree"
        n: Node count
        p: Edge probability in [0, 1] (er only)
        q: Edges per new node, 1 <= q < n (ba only)
        seed: Non-negative 64-bit base seed
        require_connected: Resample (er) until the graph is connected
        max_retries: Resampling cap before giving up
    """

    model: Model
    n: int
    p: float | None = None
    q: int | None = None
    seed: int = 0
    require_connected: bool = False
    max_retries: int = 1000

    def __post_init__(self):
        if self.model not in ("er", "ba", "tree"):
            raise DomainError(f"unknown generator model {self.model!r}")
        if self.n < (1 if self.model == "tree" else 0):
            raise DomainError(f"{self.model} needs a positive node count, got n={self.n}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a non-negative 64-bit integer, got {self.seed}")
        if self.model == "er" and (self.p is None or not 0.0 <= self.p <= 1.0):
            raise DomainError(f"er needs an edge probability in [0, 1], got p={self.p}")
        if self.model == "ba" and (self.q is None or not 1 <= self.q < self.n):
            raise DomainError(f"ba needs 1 <= q < n, got q={self.q}, n={self.n}")

    @property
    def expected_degree(self) -> float | None:
        """n * p for er configurations."""
        if self.model != "er" or self.p is None:
            return None
        return self.n * self.p

    def is_sparse(self) -> bool:
        degree = self.expected_degree
        return degree is not None and degree < SPARSE_ER_FLOOR

    def parameter_label(self) -> str:
        if self.model == "er":
            return f"{self.p:g}"
        if self.model == "ba":
            return str(self.q)
        return "uniform"

    def sample_name(self, index: int) -> str:
        return f"{self.model}_{self.n}_{self.parameter_label()}_{self.seed}_{index}"


@dataclass(frozen=True, slots=True)
class GeneratedSample:
    """One generated graph with its provenance."""

    name: str
    index: int
    graph: Graph
    retries: int


def sample_rng(seed: int, index: int = 0, attempt: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index, attempt])))


def _erdos_renyi_once(n: int, p: float, rng: np.random.Generator) -> Graph:
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def _erdos_renyi_with_retries(cfg: GenConfig, index: int) -> tuple[Graph, int]:
    for attempt in range(cfg.max_retries + 1):
        g = _erdos_renyi_once(cfg.n, cfg.p, sample_rng(cfg.seed, index, attempt))
        if not cfg.require_connected or g.is_connected():
            if attempt:
                logger.info("%s connected after %d resample(s)", cfg.sample_name(index), attempt)
            return g, attempt
    raise DomainError(
        f"no connected G({cfg.n}, {cfg.p}) sample within {cfg.max_retries} retries"
    )


def gen_erdos_renyi(cfg: GenConfig, index: int = 0) -> Graph:
    """
    G(n, p): pairs (i, j), i < j, visited in row-major order, each kept with
    probability p. With ``require_connected`` disconnected draws are discarded
    and redrawn from the next attempt's sub-stream.
    """
    if cfg.model != "er":
        raise DomainError(f"gen_erdos_renyi needs an er config, got {cfg.model}")
    return _erdos_renyi_with_retries(cfg, index)[0]


def gen_barabasi_albert(cfg: GenConfig, index: int = 0) -> Graph:
    """
    Preferential attachment over a list of repeated nodes.

    Start with q isolated nodes, all on the list. Each new node w draws from the
    list (with replacement, rejecting repeats) until it has q distinct targets,
    links to them, and then w and its targets are appended to the list. Nodes
    with high degree appear on the list more often, hence are drawn more often.
    The result has exactly q * (n - q) edges.
    """
    if cfg.model != "ba":
        raise DomainError(f"gen_barabasi_albert needs a ba config, got {cfg.model}")
    n, q = cfg.n, cfg.q
    rng = sample_rng(cfg.seed, index)

    repeated = list(range(q))
    edges: list[tuple[int, int]] = []
    for w in range(q, n):
        targets: list[int] = []
        seen: set[int] = set()
        while len(targets) < q:
            u = repeated[int(rng.integers(len(repeated)))]
            if u not in seen:
                seen.add(u)
                targets.append(u)
        edges.extend((w, u) for u in targets)
        repeated.append(w)
        repeated.extend(targets)

    return Graph.from_edges(n, edges)


def gen_random_tree(cfg: GenConfig, index: int = 0) -> Graph:
    """Uniform labelled tree from a random Pruefer sequence of length n - 2."""
    if cfg.model != "tree":
        raise DomainError(f"gen_random_tree needs a tree config, got {cfg.model}")
    if cfg.n == 1:
        return Graph(n=1, adjacency=((),))
    if cfg.n == 2:
        return Graph.from_edges(2, [(0, 1)])
    rng = sample_rng(cfg.seed, index)
    sequence = rng.integers(0, cfg.n, size=cfg.n - 2).tolist()
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))


def generate_sample(cfg: GenConfig, index: int = 0) -> GeneratedSample:
    """Dispatch on the model and attach the sample name and retry count."""
    retries = 0
    if cfg.model == "er":
        graph, retries = _erdos_renyi_with_retries(cfg, index)
    elif cfg.model == "ba":
        graph = gen_barabasi_albert(cfg, index)
    else:
        graph = gen_random_tree(cfg, index)
    return GeneratedSample(name=cfg.sample_name(index), index=index, graph=graph, retries=retries)
