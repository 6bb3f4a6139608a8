"""
Metric Representations and Anonymity Measure

An attacker controlling a node set S observes, for every other node v, the vector
of hop counts from v to each member of S. Nodes sharing that vector are
indistinguishable to the attacker. This module computes those vectors, the
partition of V \\ S into indistinguishability classes, and the measure mu (the
smallest class size). S is k-antiresolving exactly when mu(S) == k.

Key Concepts:
-------------
- **AttackerSet**: strictly ascending proper subset of the nodes; its order fixes
  the coordinate order of every metric vector
- **MetricVector**: the hop counts of one outside node to the attacker set
- **ClassPartition**: equivalence classes in lexicographic order of their vectors
- **RepresentationRefiner**: incremental partition used by the solvers' inner loops
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from antidim.model.errors import DomainError
from antidim.model.graph import DistanceMatrix


@dataclass(frozen=True, slots=True)
class AttackerSet:
    """
    Non-empty proper subset of the nodes, stored in strictly ascending order.

    Attributes:
        members: Strictly ascending node ids
        graph_n: Node count of the graph the ids index into
    """

    members: tuple[int, ...]
    graph_n: int

    def __post_init__(self):
        if not 0 < len(self.members) < self.graph_n:
            raise DomainError(
                f"attacker set must be a non-empty proper subset: "
                f"|S|={len(self.members)}, n={self.graph_n}"
            )
        previous = -1
        for v in self.members:
            if v <= previous:
                raise DomainError(f"attacker set members are not strictly ascending: {self.members}")
            previous = v
        if self.members[0] < 0 or self.members[-1] >= self.graph_n:
            raise DomainError(f"attacker set {self.members} leaves node range 0..{self.graph_n - 1}")

    @classmethod
    def of(cls, members: Iterable[int], graph_n: int) -> "AttackerSet":
        """Build from any iterable of ids, sorting and removing duplicates."""
        return cls(members=tuple(sorted({int(v) for v in members})), graph_n=graph_n)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self._member_set()

    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def outside(self) -> list[int]:
        inside = self._member_set()
        return [v for v in range(self.graph_n) if v not in inside]

    def union(self, nodes: Iterable[int]) -> "AttackerSet":
        return AttackerSet.of((*self.members, *nodes), self.graph_n)


@dataclass(frozen=True, slots=True)
class MetricVector:
    """Hop counts from one node outside S to each member of S, in member order."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if any(c < 1 for c in self.coords):
            raise DomainError(f"metric vector of an outside node has a zero coordinate: {self.coords}")

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True, slots=True)
class ClassPartition:
    """
    Partition of V \\ S by equal metric representation.

    ``classes[i]`` is the ascending node list sharing ``vectors[i]``; classes are
    ordered lexicographically by vector.

    Attributes:
        classes: Equivalence classes
        vectors: Defining metric vector of each class
        mu: Smallest class size
        attacker: The attacker set the partition is taken against
    """

    classes: tuple[tuple[int, ...], ...]
    vectors: tuple[MetricVector, ...]
    mu: int
    attacker: AttackerSet

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def minimum_classes(self) -> list[tuple[int, ...]]:
        return [c for c in self.classes if len(c) == self.mu]

    def to_text(self) -> str:
        """
        Canonical text form, one class per line: ``repr=(a,b,...) -> [nodes]``.
        """
        return "\n".join(
            f"repr={vector} -> [{','.join(str(v) for v in nodes)}]"
            for vector, nodes in zip(self.vectors, self.classes)
        )


def metric_representation(d: DistanceMatrix, v: int, s: AttackerSet) -> MetricVector:
    """
    Metric representation of v with respect to s.

    Raises:
        DomainError: v is a member of s

    Example:
        On the path 0-1-2-3 with s = {0, 1}, node 3 maps to (3, 2).
    """
    if v in s:
        raise DomainError(f"node {v} belongs to the attacker set {s.members}")
    row = d.row(v)
    return MetricVector(coords=tuple(int(row[u]) for u in s.members))


def partition_by_representation(d: DistanceMatrix, s: AttackerSet) -> ClassPartition:
    """
    Group V \\ S by exact metric-vector equality.

    Vectors are hashed as tuples for grouping; the classes come back in
    lexicographic vector order with mu attached.
    """
    if s.graph_n != d.n:
        raise DomainError(f"attacker set indexes n={s.graph_n} but distances have n={d.n}")

    outside = s.outside()
    columns = d.dist[:, list(s.members)]
    groups: dict[tuple[int, ...], list[int]] = {}
    for v, coords in zip(outside, columns[outside].tolist()):
        groups.setdefault(tuple(coords), []).append(v)

    keys = sorted(groups)
    classes = tuple(tuple(groups[key]) for key in keys)
    return ClassPartition(
        classes=classes,
        vectors=tuple(MetricVector(coords=key) for key in keys),
        mu=min(len(c) for c in classes),
        attacker=s,
    )


def measure(d: DistanceMatrix, s: AttackerSet) -> int:
    """mu(S): size of the smallest indistinguishability class."""
    return partition_by_representation(d, s).mu


def verify_k_antiresolving(d: DistanceMatrix, s: AttackerSet, k: int) -> bool:
    """True exactly when s is a k-antiresolving set, i.e. mu(s) == k."""
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    return measure(d, s) == k


class RepresentationRefiner:
    """
    Incrementally maintained partition of V \\ V' for a growing V'.

    Every node carries an integer label; two outside nodes share a label exactly
    when their metric vectors w.r.t. V' agree. Adding members refines labels one
    column at a time: (old label, hop count to the new member) is re-compressed
    with a 1-D ``np.unique``, which keeps each step O(n log n) whatever |V'| is.

    Example Usage:
    --------------
    >>> refiner = RepresentationRefiner(d, [start])
    >>> while refiner.mu() < k:
    ...     refiner.add(refiner.minimum_class_nodes())
    """

    def __init__(self, d: DistanceMatrix, members: Iterable[int] = ()):
        self._dist = d.dist
        self._stride = np.int64(int(d.dist.max(initial=0)) + 1)
        self.labels = np.zeros(d.n, dtype=np.int64)
        self.inside = np.zeros(d.n, dtype=bool)
        self.size = 0
        self.add(members)

    def add(self, members: Iterable[int]) -> None:
        for v in members:
            if self.inside[v]:
                continue
            self.inside[v] = True
            self.size += 1
            key = self.labels * self._stride + self._dist[:, v].astype(np.int64)
            _, inverse = np.unique(key, return_inverse=True)
            self.labels = inverse.reshape(-1).astype(np.int64)

    def members(self) -> list[int]:
        return np.flatnonzero(self.inside).tolist()

    def remaining(self) -> int:
        return int(self.inside.size - self.size)

    def _outside_counts(self) -> tuple[np.ndarray, np.ndarray]:
        outside_labels = self.labels[~self.inside]
        counts = np.bincount(outside_labels, minlength=int(self.labels.max()) + 1)
        return outside_labels, counts

    def mu(self) -> int:
        """Smallest class size; 0 once V' covers every node."""
        if self.remaining() == 0:
            return 0
        _, counts = self._outside_counts()
        return int(counts[counts > 0].min())

    def minimum_class_nodes(self) -> list[int]:
        """Every outside node whose class has size mu, ascending."""
        if self.remaining() == 0:
            return []
        _, counts = self._outside_counts()
        smallest = counts[counts > 0].min()
        in_small_class = counts[self.labels] == smallest
        return np.flatnonzero(in_small_class & ~self.inside).tolist()
