"""
Solvers for the Antidimension Problems

Three optimisation problems measure how exposed a network is to an attacker that
controls some nodes and observes hop distances:

- **ADIM>=k**: smallest attacker set S with mu(S) >= k (exact, ``adim_geq_k``)
- **k_opt**: the largest k for which ADIM>=k is feasible (exact, ``adim_kopt``)
- **ADIM=1**: smallest S that re-identifies at least one node with certainty
  (logarithmic approximation through greedy set cover, ``adim_eq1``)

``oracle_*`` functions answer the same questions by exhaustive enumeration and
exist to cross-check the fast solvers on small graphs.

Solver contract:
----------------
Every solver takes a ``DistanceMatrix`` of a connected graph (computed once and
shared) and an optional ``Deadline``. Results are deterministic: start and target
nodes are scanned in ascending id order and ties keep the first candidate found.
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging
import math

import numpy as np

from antidim.model.anonymity import (
    AttackerSet,
    RepresentationRefiner,
    measure,
    partition_by_representation,
)
from antidim.model.deadline import Deadline
from antidim.model.errors import ContractError, DomainError, OracleLimitError
from antidim.model.graph import DistanceMatrix
from antidim.model.set_cover import SetCoverSolver, greedy_set_cover

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_LIMIT = 16


def _labelled(witness: AttackerSet | None, labels: Sequence[str] | None) -> list:
    if witness is None:
        return []
    if labels is None:
        return list(witness.members)
    return [labels[v] for v in witness.members]


@dataclass(frozen=True, slots=True)
class GeqSolution:
    """
    Answer to ADIM>=k.

    An infeasible answer has no witness and no cardinality (the "infinite"
    optimum of the problem).

    Attributes:
        k: The requested lower bound on mu
        feasible: Whether any attacker set reaches mu >= k
        cardinality: |witness| when feasible
        witness: A minimum-cardinality attacker set when feasible
    """

    k: int
    feasible: bool
    cardinality: int | None = None
    witness: AttackerSet | None = None

    def __post_init__(self):
        if self.feasible and (self.witness is None or self.cardinality != len(self.witness)):
            raise ContractError("a feasible solution needs a witness of the stated cardinality")
        if not self.feasible and self.witness is not None:
            raise ContractError("an infeasible solution cannot carry a witness")

    @classmethod
    def infeasible(cls, k: int) -> "GeqSolution":
        return cls(k=k, feasible=False)

    def to_record(self, labels: Sequence[str] | None = None) -> dict:
        return {
            "problem": "adim_geq_k",
            "k": self.k,
            "feasible": self.feasible,
            "cardinality": self.cardinality,
            "witness": _labelled(self.witness, labels),
            "p": round(1 / self.k, 3),
        }


@dataclass(frozen=True, slots=True)
class KoptSolution:
    """
    Answer to the k_opt problem: the strongest anonymity any attacker set forces.

    Attributes:
        k_opt: max mu over all non-empty proper attacker sets
        cardinality: Smallest attacker set reaching k_opt
        witness: That attacker set
        n: Node count, for the fraction k_opt / n
    """

    k_opt: int
    cardinality: int
    witness: AttackerSet
    n: int

    @property
    def p_opt(self) -> Fraction:
        return Fraction(1, self.k_opt)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.k_opt, self.n)

    def to_record(self, labels: Sequence[str] | None = None) -> dict:
        return {
            "problem": "adim_kopt",
            "k": self.k_opt,
            "feasible": True,
            "cardinality": self.cardinality,
            "witness": _labelled(self.witness, labels),
            "p": round(float(self.p_opt), 3),
            "fraction": round(float(self.fraction), 3),
        }


@dataclass(frozen=True, slots=True)
class Eq1Solution:
    """
    Answer to ADIM=1: an attacker set under which ``target`` sits alone in its class.

    Attributes:
        cardinality: |witness|
        witness: Attacker set with mu == 1
        target: A node the witness re-identifies with certainty
    """

    cardinality: int
    witness: AttackerSet
    target: int

    def to_record(self, labels: Sequence[str] | None = None) -> dict:
        return {
            "problem": "adim_eq1",
            "k": 1,
            "feasible": True,
            "cardinality": self.cardinality,
            "witness": _labelled(self.witness, labels),
            "target": self.target if labels is None else labels[self.target],
            "p": 1.0,
        }


def _require_connected_pairs(d: DistanceMatrix) -> None:
    if d.n < 2:
        raise DomainError(f"the anonymity problems need at least 2 nodes, got n={d.n}")


def adim_geq_k(d: DistanceMatrix, k: int, deadline: Deadline | None = None) -> GeqSolution:
    """
    Exact minimum attacker set with mu >= k.

    For every start node the attacker set grows from {start}: while mu < k, all
    smallest classes are absorbed (any optimal set containing the current one
    must contain them too). The first set reaching mu >= k is this start's
    candidate. A start stops early once it cannot beat the incumbent, and the
    whole scan stops once the incumbent has a single node.

    Parameters:
        d: Distances of a connected graph with n >= 2
        k: Target anonymity, 1 <= k <= n-1
        deadline: Optional wall-clock budget, checked once per start node

    Returns:
        GeqSolution: feasible with a minimum witness, or infeasible

    Raises:
        DomainError: k out of range or n < 2

    Example:
        On K_6, k=5 is reached by any single node; k=6 is infeasible.
    """
    _require_connected_pairs(d)
    n = d.n
    if not 1 <= k <= n - 1:
        raise DomainError(f"k must lie in 1..{n - 1}, got {k}")
    deadline = deadline or Deadline.unlimited()

    best_size = math.inf
    best_members: list[int] | None = None

    for start in range(n):
        deadline.check()
        refiner = RepresentationRefiner(d, [start])

        while refiner.remaining() > 0 and refiner.size < best_size:
            if refiner.mu() >= k:
                best_size = refiner.size
                best_members = refiner.members()
                logger.debug("k=%d: start %d improves incumbent to %d", k, start, best_size)
                break
            refiner.add(refiner.minimum_class_nodes())

        if best_size == 1:
            break

    if best_members is None:
        return GeqSolution.infeasible(k)
    witness = AttackerSet.of(best_members, n)
    return GeqSolution(k=k, feasible=True, cardinality=len(witness), witness=witness)


def adim_kopt(d: DistanceMatrix, deadline: Deadline | None = None) -> KoptSolution:
    """
    Largest k for which ADIM>=k is feasible, with its minimum witness.

    Feasibility is downward closed in k (a set with mu >= k certifies every
    smaller k), so a binary search over 1..n-1 finds the boundary. A feasible
    answer at k also proves feasibility up to mu(witness), which lets the lower
    bound jump ahead.
    """
    _require_connected_pairs(d)
    deadline = deadline or Deadline.unlimited()

    best = adim_geq_k(d, 1, deadline)
    lo = measure(d, best.witness)
    hi = d.n - 1

    while lo < hi:
        deadline.check()
        mid = (lo + hi + 1) // 2
        attempt = adim_geq_k(d, mid, deadline)
        if attempt.feasible:
            best = attempt
            lo = measure(d, attempt.witness)
        else:
            hi = mid - 1

    if best.witness is None or best.cardinality is None:
        raise ContractError("ADIM>=1 must always be feasible on a connected graph")

    logger.debug("k_opt=%d with %d attacker node(s)", lo, best.cardinality)
    return KoptSolution(k_opt=lo, cardinality=best.cardinality, witness=best.witness, n=d.n)


def set_cover_instance(d: DistanceMatrix, target: int) -> tuple[np.ndarray, list[int]]:
    """
    Set-cover instance that isolates ``target``.

    Elements and sets are both indexed by the other nodes. Set j (attacker node
    v_j) covers itself and every node l with dist(target, v_j) != dist(l, v_j),
    i.e. every node v_j tells apart from the target.

    Returns:
        (cover, others): boolean (sets x elements) matrix and the node id of each index
    """
    others = [v for v in range(d.n) if v != target]
    dist = d.dist
    # distinguishes[l, j]: attacker j separates node l from the target
    distinguishes = dist != dist[target][None, :]
    cover = distinguishes.T
    np.fill_diagonal(cover, True)
    return cover[np.ix_(others, others)], others


def adim_eq1(
    d: DistanceMatrix,
    deadline: Deadline | None = None,
    set_cover: SetCoverSolver = greedy_set_cover,
) -> Eq1Solution:
    """
    Approximate minimum attacker set re-identifying at least one node.

    For every candidate target the greedy set cover picks attackers until each
    other node is either an attacker or told apart from the target. The smallest
    cover over all targets wins; the result is within ln(n-1)+1 of optimal.

    Raises:
        ContractError: no target admitted a cover, which cannot happen on a
            connected graph with n >= 2
    """
    _require_connected_pairs(d)
    deadline = deadline or Deadline.unlimited()

    best_nodes: list[int] | None = None
    best_target = -1

    for target in range(d.n):
        deadline.check()
        cover, others = set_cover_instance(d, target)
        if not cover.any(axis=0).all():
            logger.debug("target %d skipped: cover sets miss part of the universe", target)
            continue

        chosen = set_cover(cover)
        if chosen is None:
            continue
        nodes = sorted(others[j] for j in chosen)
        if best_nodes is None or len(nodes) < len(best_nodes):
            best_nodes = nodes
            best_target = target
            if len(best_nodes) == 1:
                break

    if best_nodes is None:
        raise ContractError("ADIM=1 found no coverable target on a connected graph")
    witness = AttackerSet.of(best_nodes, d.n)
    return Eq1Solution(cardinality=len(witness), witness=witness, target=best_target)


# Exhaustive oracles


def _enumerate_attacker_sets(d: DistanceMatrix, limit: int) -> Iterator[AttackerSet]:
    """Every non-empty proper subset in ascending (size, lexicographic) order."""
    if d.n > limit:
        raise OracleLimitError(d.n, limit)
    _require_connected_pairs(d)
    for size in range(1, d.n):
        for members in combinations(range(d.n), size):
            yield AttackerSet(members=members, graph_n=d.n)


def oracle_brute_force_geq(
    d: DistanceMatrix, k: int, limit: int = DEFAULT_ORACLE_LIMIT
) -> GeqSolution:
    """First attacker set (by size, then lexicographically) with mu >= k."""
    for s in _enumerate_attacker_sets(d, limit):
        if measure(d, s) >= k:
            return GeqSolution(k=k, feasible=True, cardinality=len(s), witness=s)
    return GeqSolution.infeasible(k)


def oracle_kopt(d: DistanceMatrix, limit: int = DEFAULT_ORACLE_LIMIT) -> KoptSolution:
    """max mu over all attacker sets; the witness is the first set reaching it."""
    best: AttackerSet | None = None
    best_mu = 0
    for s in _enumerate_attacker_sets(d, limit):
        mu = measure(d, s)
        if mu > best_mu:
            best, best_mu = s, mu
    assert best is not None
    return KoptSolution(k_opt=best_mu, cardinality=len(best), witness=best, n=d.n)


def oracle_eq1(d: DistanceMatrix, limit: int = DEFAULT_ORACLE_LIMIT) -> Eq1Solution:
    """Exact minimum attacker set with mu == 1."""
    for s in _enumerate_attacker_sets(d, limit):
        partition = partition_by_representation(d, s)
        if partition.mu == 1:
            target = partition.minimum_classes()[0][0]
            return Eq1Solution(cardinality=len(s), witness=s, target=target)
    raise ContractError("every connected graph with n >= 2 has a 1-antiresolving set")


def oracle_achievable_measures(d: DistanceMatrix, limit: int = DEFAULT_ORACLE_LIMIT) -> set[int]:
    """Every k for which some k-antiresolving set exists."""
    return {measure(d, s) for s in _enumerate_attacker_sets(d, limit)}
