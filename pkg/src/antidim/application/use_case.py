"""
Use Case Implementations

Each use case is one operation a user can ask for: measure a network, sweep its
per-k table, run a random ensemble, build the antiresolving chain of a tree,
re-verify stored witnesses, or generate graphs. They depend on the adapter
protocols only; the composition layer decides which implementations to inject.

Use Case Pattern:
-----------------
Every use case takes its collaborators in ``__init__`` and does its work in
``execute()``. Calling the instance is shorthand for ``execute()``.
"""

from dataclasses import asdict, replace
from pathlib import Path
from typing import Any, Protocol
import logging

from antidim.adapter.protocols import DistanceBackend, GraphSource, GraphWriter, Parser, SetCoverSolver
from antidim.application.harness import run_batch, run_single
from antidim.model.anonymity import AttackerSet, measure
from antidim.model.deadline import Deadline
from antidim.model.errors import DomainError
from antidim.model.experiment import EnsembleRun, NetworkSummary, RunConfig, WitnessCheck
from antidim.model.generators import GenConfig, generate_sample
from antidim.model.graph import EdgeList, largest_component_nodes
from antidim.model.set_cover import greedy_set_cover
from antidim.model.solvers import DEFAULT_ORACLE_LIMIT
from antidim.model.trees import antiresolving_chain, full_chain

logger = logging.getLogger(__name__)


class UseCase(Protocol):
    """One executable operation; ``use_case()`` runs ``use_case.execute()``."""

    def execute(self) -> Any: ...

    def __call__(self) -> Any:
        return self.execute()


def _load(source: GraphSource, parser: Parser) -> EdgeList:
    return parser.parse(source.read())


def _largest_component(edge_list: EdgeList) -> EdgeList:
    nodes = largest_component_nodes(edge_list.graph)
    if len(nodes) == edge_list.graph.n:
        return edge_list
    return edge_list.restricted_to(nodes)


class MeasureNetwork(UseCase):
    """
    Read one network and compute every problem in ``cfg.problems`` on its
    largest connected component.

    Parameters:
        cfg: What to compute
        source: Where the edge list comes from
        parser: How to decode it
        distances: APSP backend
        set_cover: Set-cover solver for ADIM=1
        oracle_limit: Enumeration guard for tree-chain fallbacks
    """

    def __init__(
        self,
        cfg: RunConfig,
        source: GraphSource,
        parser: Parser,
        distances: DistanceBackend,
        set_cover: SetCoverSolver = greedy_set_cover,
        oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    ):
        self.cfg = cfg
        self.source = source
        self.parser = parser
        self.distances = distances
        self.set_cover = set_cover
        self.oracle_limit = oracle_limit

    def execute(self) -> NetworkSummary:
        return run_single(
            self.cfg,
            _load(self.source, self.parser),
            self.source.name,
            distances=self.distances,
            set_cover=self.set_cover,
            oracle_limit=self.oracle_limit,
        )


class SweepNetwork(MeasureNetwork):
    """
    The per-k table of one network: minimum attacker-set size for mu >= k.

    With no k list the sweep covers k = 1..k_opt and keeps only the rows whose
    size differs from the previous k.
    """

    def __init__(self, cfg: RunConfig, *args, **kwargs):
        super().__init__(
            replace(cfg, problems=frozenset({"geq"}), full_sweep=not cfg.ks), *args, **kwargs
        )


class RunEnsemble(UseCase):
    """Generate ``cfg.count`` samples from ``cfg.generator``, measure and aggregate."""

    def __init__(
        self,
        cfg: RunConfig,
        distances: DistanceBackend,
        set_cover: SetCoverSolver = greedy_set_cover,
        oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    ):
        self.cfg = cfg
        self.distances = distances
        self.set_cover = set_cover
        self.oracle_limit = oracle_limit

    def execute(self) -> EnsembleRun:
        return run_batch(
            self.cfg,
            distances=self.distances,
            set_cover=self.set_cover,
            oracle_limit=self.oracle_limit,
        )


class BuildTreeChain(UseCase):
    """
    Antiresolving sets of a tree for k = 1..k' (or one requested k), each
    verified before it is returned.

    Returns:
        list[dict]: one record per k with the witness in original labels
    """

    def __init__(
        self,
        source: GraphSource,
        parser: Parser,
        distances: DistanceBackend,
        k_target: int | None = None,
        timeout_seconds: float | None = None,
        oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    ):
        self.source = source
        self.parser = parser
        self.distances = distances
        self.k_target = k_target
        self.timeout_seconds = timeout_seconds
        self.oracle_limit = oracle_limit

    def execute(self) -> list[dict]:
        edge_list = _load(self.source, self.parser)
        if not edge_list.graph.is_tree():
            raise DomainError(f"{self.source.name} is not a tree")
        d = self.distances(edge_list.graph)
        deadline = Deadline(seconds=self.timeout_seconds, label=self.source.name)

        if self.k_target is None:
            chain = full_chain(d, deadline, self.oracle_limit)
        else:
            chain = [(self.k_target, antiresolving_chain(d, self.k_target, deadline, self.oracle_limit))]

        records = [
            {
                "network": self.source.name,
                "k": k,
                "cardinality": len(s),
                "witness": [edge_list.labels[v] for v in s.members],
            }
            for k, s in chain
        ]
        logger.info("%s: chain with %d level(s)", self.source.name, len(records))
        return records


class VerifyWitness(UseCase):
    """
    Re-measure every witness stored in result records against the network.

    Checked claims: k_opt and chain witnesses have mu == k, ADIM=1 witnesses
    have mu == 1, per-k witnesses have mu >= k.
    """

    def __init__(
        self,
        source: GraphSource,
        parser: Parser,
        distances: DistanceBackend,
        records: list[dict],
    ):
        self.source = source
        self.parser = parser
        self.distances = distances
        self.records = records

    def execute(self) -> list[WitnessCheck]:
        edge_list = _largest_component(_load(self.source, self.parser))
        g = edge_list.graph
        d = self.distances(g)
        index = {label: v for v, label in enumerate(edge_list.labels)}

        def check(network: str, kind: str, k: int, witness: list, relation: str = "==") -> WitnessCheck:
            try:
                members = [index[str(label)] for label in witness]
            except KeyError as error:
                raise DomainError(f"{network}: witness node {error.args[0]!r} is not in the graph") from error
            mu = measure(d, AttackerSet.of(members, g.n))
            return WitnessCheck(network, kind, k, tuple(witness), mu, relation)

        checks: list[WitnessCheck] = []
        for record in self.records:
            network = str(record.get("name", record.get("network", self.source.name)))
            if record.get("kopt_witness"):
                checks.append(check(network, "kopt", record["k_opt"], record["kopt_witness"]))
            if record.get("eq1_witness"):
                checks.append(check(network, "eq1", 1, record["eq1_witness"]))
            for row in record.get("per_k", []):
                if row.get("witness"):
                    checks.append(check(network, "geq", row["k"], row["witness"], ">="))
            for level in record.get("chain", []):
                checks.append(check(network, "chain", level["k"], level["witness"]))
            if "k" in record and "witness" in record and "per_k" not in record:
                checks.append(check(network, "chain", record["k"], record["witness"]))

        if not checks:
            raise DomainError("no witnesses found in the given records")
        failed = [c for c in checks if not c.passed]
        for c in failed:
            logger.warning("%s %s k=%d: measured mu=%d", c.network, c.kind, c.k, c.mu)
        logger.info("verified %d witness(es), %d failed", len(checks), len(failed))
        return checks


class GenerateGraphs(UseCase):
    """
    Write ``count`` samples as canonical edge lists named after the sample, plus
    a ``manifest.json`` with sizes and resampling counts.
    """

    def __init__(self, cfg: GenConfig, count: int, out_dir: Path, writer: GraphWriter):
        if count < 1:
            raise DomainError(f"count must be at least 1, got {count}")
        self.cfg = cfg
        self.count = count
        self.out_dir = Path(out_dir)
        self.writer = writer

    def execute(self) -> list[dict]:
        entries = []
        for index in range(self.count):
            sample = generate_sample(self.cfg, index)
            file_name = f"{sample.name}.txt"
            self.writer.write_graph(sample.graph, self.out_dir / file_name)
            entries.append(
                {
                    "name": sample.name,
                    "file": file_name,
                    "n": sample.graph.n,
                    "m": sample.graph.edge_count,
                    "retries": sample.retries,
                }
            )
        manifest = {"config": asdict(self.cfg), "samples": entries}
        self.writer.write_manifest(manifest, self.out_dir / "manifest.json")
        logger.info("wrote %d sample(s) to %s", self.count, self.out_dir)
        return entries
