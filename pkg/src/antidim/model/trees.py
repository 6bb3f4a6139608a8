"""
Antiresolving Sets in Trees

In a tree whose strongest attacker set forces anonymity k', every level
1 <= k <= k' is reachable by some k-antiresolving set. This module builds those
sets constructively: starting from a k'-antiresolving set S it absorbs whole
branches hanging off a boundary node of S until exactly one indistinguishability
class loses one member, which yields a (k'-1)-antiresolving set. Iterating walks
all the way down.

Why branches work:
------------------
A k-antiresolving set with k >= 2 induces a connected subtree. For a boundary
node v of S, the subtrees T_i hanging from v's outside neighbours contain no
other member of S, so every node x in them is seen by the attacker only through
dist(v, x). The level sets A_j = {x : dist(v, x) == j} are therefore whole
classes, and absorbing a branch shrinks each A_j by exactly its share in that
branch while leaving every other class intact.

Every candidate is re-verified through the anonymity measure before it is
returned; nothing here is trusted on the strength of the construction alone.
"""

from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations
import logging

import numpy as np

from antidim.model.anonymity import AttackerSet, measure
from antidim.model.deadline import Deadline
from antidim.model.errors import (
    ContractError,
    DomainError,
    InfeasibleRequestError,
    ProofGapError,
)
from antidim.model.graph import DistanceMatrix, Graph
from antidim.model.solvers import (
    DEFAULT_ORACLE_LIMIT,
    KoptSolution,
    adim_eq1,
    adim_geq_k,
    adim_kopt,
)

logger = logging.getLogger(__name__)

BRANCH_SEARCH_BUDGET = 20_000


@dataclass(frozen=True, slots=True)
class RootedView:
    """
    The tree seen from boundary node ``root`` of an attacker set.

    Attributes:
        root: Boundary node v of the attacker set
        children: Neighbours of v outside the attacker set, ascending
        branches: Node set of each T_i (v, child i and its descendants)
        eccentricities: max dist(v, x) over x in T_i
        level_classes: level_classes[j-1] is A_j, nodes of the union at distance j
    """

    root: int
    children: tuple[int, ...]
    branches: tuple[frozenset[int], ...]
    eccentricities: tuple[int, ...]
    level_classes: tuple[frozenset[int], ...]

    def level(self, j: int) -> frozenset[int]:
        return self.level_classes[j - 1]

    def has_level_of_size(self, size: int) -> bool:
        return any(len(a) == size for a in self.level_classes)

    def equal_eccentricities(self) -> bool:
        return len(set(self.eccentricities)) == 1


def tree_from_distances(d: DistanceMatrix) -> Graph:
    """Recover the graph whose edges are exactly the distance-1 pairs."""
    pairs = np.argwhere(np.triu(d.dist == 1))
    return Graph.from_edges(d.n, (tuple(int(x) for x in pair) for pair in pairs))


def _require_tree(d: DistanceMatrix) -> Graph:
    g = tree_from_distances(d)
    if not g.is_tree():
        raise DomainError(f"input is not a tree: n={g.n}, m={g.edge_count}")
    return g


def induces_connected_subgraph(g: Graph, members: tuple[int, ...]) -> bool:
    """True when the members span a connected induced subgraph."""
    if not members:
        return True
    inside = set(members)
    seen = {members[0]}
    queue = deque([members[0]])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if u in inside and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(inside)


def boundary_nodes(g: Graph, s: AttackerSet) -> list[int]:
    """Members of s with at least one neighbour outside s, ascending."""
    return [v for v in s.members if any(u not in s for u in g.adjacency[v])]


def build_rooted_view(g: Graph, d: DistanceMatrix, s: AttackerSet, root: int) -> RootedView:
    children = tuple(u for u in g.adjacency[root] if u not in s)
    branches: list[frozenset[int]] = []
    for child in children:
        reached = {root, child}
        queue = deque([child])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u not in reached:
                    reached.add(u)
                    queue.append(u)
        branches.append(frozenset(reached))

    row = d.row(root)
    eccentricities = tuple(max(int(row[x]) for x in branch) for branch in branches)
    depth = max(eccentricities, default=0)
    levels: list[set[int]] = [set() for _ in range(depth)]
    for branch in branches:
        for x in branch:
            if x != root:
                levels[int(row[x]) - 1].add(x)

    return RootedView(
        root=root,
        children=children,
        branches=tuple(branches),
        eccentricities=eccentricities,
        level_classes=tuple(frozenset(a) for a in levels),
    )


def _absorb(s: AttackerSet, nodes: Iterable[int]) -> AttackerSet | None:
    """s plus nodes, or None when nothing would be left outside."""
    members = set(s.members).union(nodes)
    if len(members) >= s.graph_n:
        return None
    return AttackerSet.of(members, s.graph_n)


def _equal_eccentricity_candidates(view: RootedView, k_prime: int) -> Iterator[frozenset[int]]:
    """Branches T_beta holding exactly one node of a level class of size k'."""
    for branch in view.branches:
        for alpha in range(1, len(view.level_classes) + 1):
            level = view.level(alpha)
            if len(level) == k_prime and len(level & branch) == 1:
                yield branch
                break


def _ascending_eccentricity_prefixes(view: RootedView) -> Iterator[frozenset[int]]:
    """S u T_1, S u T_1 u T_2, ... with branches taken by ascending eccentricity."""
    order = sorted(range(len(view.branches)), key=lambda i: (view.eccentricities[i], view.children[i]))
    absorbed: frozenset[int] = frozenset()
    for i in order:
        absorbed = absorbed | view.branches[i]
        yield absorbed


def _branch_search(
    g: Graph, d: DistanceMatrix, s: AttackerSet, k_prime: int, budget: int
) -> AttackerSet | None:
    """
    Breadth-first search over unions of whole branches that keep mu == k'.

    Covers tie configurations where no single boundary node's construction
    lands exactly on k'-1.
    """
    target = k_prime - 1
    frontier = deque([s])
    visited = {s.members}
    evaluations = 0
    while frontier and evaluations < budget:
        current = frontier.popleft()
        for root in boundary_nodes(g, current):
            view = build_rooted_view(g, d, current, root)
            for branch in view.branches:
                candidate = _absorb(current, branch)
                if candidate is None or candidate.members in visited:
                    continue
                visited.add(candidate.members)
                evaluations += 1
                mu = measure(d, candidate)
                if mu == target:
                    return candidate
                if mu == k_prime:
                    frontier.append(candidate)
    return None


def _superset_enumeration(
    d: DistanceMatrix, s: AttackerSet, k_prime: int, limit: int
) -> AttackerSet | None:
    if d.n > limit:
        return None
    outside = s.outside()
    for extra in range(1, len(outside)):
        for added in combinations(outside, extra):
            candidate = s.union(added)
            if measure(d, candidate) == k_prime - 1:
                return candidate
    return None


def descend_one(
    d: DistanceMatrix,
    s: AttackerSet,
    k_prime: int | None = None,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> AttackerSet:
    """
    Turn a k'-antiresolving set of a tree into a (k'-1)-antiresolving superset.

    Boundary nodes are tried in ascending id order, skipping those whose level
    classes never have size exactly k'. With equal branch eccentricities a single
    branch T_beta meeting a size-k' level class in one node is absorbed (smallest
    beta first). Otherwise branches are absorbed cumulatively by ascending
    eccentricity until mu drops to k'-1. If no boundary node works, a bounded
    search over branch unions and, on small trees, exhaustive superset
    enumeration take over; both are logged.

    Parameters:
        d: Distances of a tree
        s: Attacker set with mu(s) == k' >= 2
        k_prime: Stated mu of s; checked when given

    Returns:
        AttackerSet: Strict superset of s with mu exactly k'-1

    Raises:
        DomainError: d is not a tree metric, or k' < 2
        ContractError: mu(s) differs from the stated k_prime
        ProofGapError: every construction and fallback failed
    """
    g = _require_tree(d)
    actual = measure(d, s)
    if k_prime is not None and actual != k_prime:
        raise ContractError(f"attacker set has mu={actual}, not the stated {k_prime}")
    k_prime = actual
    if k_prime < 2:
        raise DomainError(f"descent needs k' >= 2, got {k_prime}")
    if not induces_connected_subgraph(g, s.members):
        raise ContractError(f"a {k_prime}-antiresolving set of a tree must induce a connected subtree")

    target = k_prime - 1
    for root in boundary_nodes(g, s):
        view = build_rooted_view(g, d, s, root)
        if not view.has_level_of_size(k_prime):
            continue

        # (candidates, cumulative): a cumulative strategy only ever loses more members
        single = (_equal_eccentricity_candidates(view, k_prime), False)
        prefixes = (_ascending_eccentricity_prefixes(view), True)
        strategies = (single, prefixes) if view.equal_eccentricities() else (prefixes, single)

        for candidates, cumulative in strategies:
            for absorbed in candidates:
                candidate = _absorb(s, absorbed)
                if candidate is None:
                    if cumulative:
                        break
                    continue
                mu = measure(d, candidate)
                if mu == target:
                    logger.debug(
                        "descend %d -> %d at root %d (%s eccentricities)",
                        k_prime, target, root,
                        "equal" if view.equal_eccentricities() else "mixed",
                    )
                    return candidate
                if mu < target and cumulative:
                    break

    logger.warning("tree descent from k'=%d found no direct branch construction; searching", k_prime)
    found = _branch_search(g, d, s, k_prime, BRANCH_SEARCH_BUDGET)
    if found is None:
        found = _superset_enumeration(d, s, k_prime, oracle_limit)
    if found is None:
        raise ProofGapError(f"no {target}-antiresolving superset found for a {k_prime}-antiresolving set")
    return found


def _chain_levels(
    d: DistanceMatrix,
    kopt: KoptSolution,
    stop: int,
    deadline: Deadline,
    oracle_limit: int,
) -> Iterator[tuple[int, AttackerSet]]:
    """
    Yield (k, k-antiresolving set) for k = k', k'-1, ..., max(stop, 2).

    Before each descent the level is re-minimised: the exact ADIM>=k witness is
    used whenever its mu is exactly k, otherwise the descent continues from the
    current set.
    """
    level, current = kopt.k_opt, kopt.witness
    yield level, current

    while level > max(stop, 2):
        deadline.check()
        next_level = level - 1
        reminimised = adim_geq_k(d, next_level, deadline)
        if reminimised.witness is not None and measure(d, reminimised.witness) == next_level:
            current = reminimised.witness
        else:
            current = descend_one(d, current, level, oracle_limit)
        level = next_level
        yield level, current


def antiresolving_chain(
    d: DistanceMatrix,
    k_target: int,
    deadline: Deadline | None = None,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> AttackerSet:
    """
    A k_target-antiresolving set of a tree, for any 1 <= k_target <= k'.

    k_target == k' returns the k_opt witness unchanged and k_target == 1 the
    ADIM=1 witness; intermediate levels descend from the k' witness.

    Raises:
        DomainError: not a tree, or k_target < 1
        InfeasibleRequestError: k_target above k'
        ContractError: the final set does not verify
    """
    _require_tree(d)
    deadline = deadline or Deadline.unlimited()
    kopt = adim_kopt(d, deadline)
    k_prime = kopt.k_opt
    if k_target < 1:
        raise DomainError(f"k_target must be a positive integer, got {k_target}")
    if k_target > k_prime:
        raise InfeasibleRequestError(
            f"no {k_target}-antiresolving set exists; the largest achievable level is {k_prime}"
        )

    if k_target == 1:
        result = adim_eq1(d, deadline).witness
    else:
        result = None
        for level, s in _chain_levels(d, kopt, k_target, deadline, oracle_limit):
            if level == k_target:
                result = s
                break
        assert result is not None

    if measure(d, result) != k_target:
        raise ContractError(f"chain result does not verify as {k_target}-antiresolving")
    return result


def full_chain(
    d: DistanceMatrix,
    deadline: Deadline | None = None,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> list[tuple[int, AttackerSet]]:
    """Verified k-antiresolving sets for every k = 1..k', ascending in k."""
    _require_tree(d)
    deadline = deadline or Deadline.unlimited()
    levels = dict(_chain_levels(d, adim_kopt(d, deadline), 2, deadline, oracle_limit))
    levels[1] = adim_eq1(d, deadline).witness
    chain = sorted(levels.items())
    for k, s in chain:
        if measure(d, s) != k:
            raise ContractError(f"chain level {k} does not verify")
    return chain
