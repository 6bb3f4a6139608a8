"""
Domain Layer - Graphs, Attacker Sets and the Measures

The innermost layer. It holds the immutable entities and the pure algorithms; it
imports nothing from the other layers.

Modules:
--------
- graph.py: Graph, EdgeList, DistanceMatrix, components, BFS all-pairs shortest paths
- anonymity.py: AttackerSet, metric representations, class partitions, the measure mu
- solvers.py: ADIM>=k, k_opt, ADIM=1 and their exhaustive oracles
- set_cover.py: greedy set cover used by ADIM=1
- trees.py: the constructive descent through k-antiresolving sets of a tree
- generators.py: seeded Erdos-Renyi, Barabasi-Albert and random-tree samples
- experiment.py: RunConfig, NetworkSummary, BatchStats and related records
- deadline.py: wall-clock guard threaded through the solvers
- errors.py: the exception hierarchy

Every entity is a frozen dataclass. A DistanceMatrix is computed once per graph
and shared read-only by every solver.
"""
