"""
Experiment Harness

The measurement protocol applied to every network: keep the largest connected
component, compute its distances once, and answer every requested problem from
that one matrix. ``run_batch`` repeats this over a generated ensemble and folds
the results in sample order.
"""

from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Any
import logging

from antidim.adapter.protocols import DistanceBackend, SetCoverSolver, Storage
from antidim.application.statistics import aggregate
from antidim.model.anonymity import AttackerSet
from antidim.model.deadline import Deadline
from antidim.model.errors import DomainError, SolverTimeoutError
from antidim.model.experiment import EnsembleRun, KRow, NetworkSummary, RunConfig
from antidim.model.generators import generate_sample
from antidim.model.graph import DistanceMatrix, EdgeList, all_pairs_shortest_paths, largest_component_nodes
from antidim.model.set_cover import greedy_set_cover
from antidim.model.solvers import DEFAULT_ORACLE_LIMIT, adim_eq1, adim_geq_k, adim_kopt
from antidim.model.trees import full_chain

logger = logging.getLogger(__name__)

MIN_COMPONENT = 3


def _labels_of(witness: AttackerSet | None, labels: Sequence[str]) -> tuple[str, ...]:
    return () if witness is None else tuple(labels[v] for v in witness.members)


def iter_per_k_rows(
    d: DistanceMatrix,
    ks: Sequence[int],
    labels: Sequence[str],
    deadline: Deadline,
    suppress_repeats: bool = False,
) -> Iterator[KRow]:
    """
    Minimum attacker-set size for mu >= k, for every k in ``ks`` (ascending),
    one row at a time.

    k above n-1 is infeasible by the mu bound, and once one k is infeasible every
    larger k is too, so neither is solved. With ``suppress_repeats`` a row is kept
    only when its size differs from the previous k's (the first row always stays).
    """
    infeasible_from: int | None = None
    previous: int | None = None

    for k in sorted(set(ks)):
        if infeasible_from is not None or k > d.n - 1:
            yield KRow(k=k, cardinality=None)
            continue
        solution = adim_geq_k(d, k, deadline)
        if not solution.feasible:
            infeasible_from = k
            yield KRow(k=k, cardinality=None)
            continue
        logger.debug("k=%d: minimum attacker set %d", k, solution.cardinality)
        if suppress_repeats and previous == solution.cardinality:
            continue
        previous = solution.cardinality
        yield KRow(k=k, cardinality=solution.cardinality, witness=_labels_of(solution.witness, labels))


def per_k_table(
    d: DistanceMatrix,
    ks: Sequence[int],
    labels: Sequence[str],
    deadline: Deadline,
    suppress_repeats: bool = False,
) -> tuple[KRow, ...]:
    """The finished table of ``iter_per_k_rows``."""
    return tuple(iter_per_k_rows(d, ks, labels, deadline, suppress_repeats))


def run_single(
    cfg: RunConfig,
    edge_list: EdgeList,
    name: str,
    distances: DistanceBackend = all_pairs_shortest_paths,
    set_cover: SetCoverSolver = greedy_set_cover,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> NetworkSummary:
    """
    Measure one network.

    Parameters:
        cfg: Problems, k list and wall-clock budget
        edge_list: The raw network with its labels
        name: Name carried into the summary
        distances: APSP backend, one BFS per node by default
        set_cover: Set-cover solver for ADIM=1
        oracle_limit: Enumeration guard for the tree-chain fallbacks

    Returns:
        NetworkSummary: measures of the largest connected component; skipped when
        it has fewer than 3 nodes, incomplete when the budget expired
    """
    raw = edge_list.graph
    nodes = largest_component_nodes(raw)
    lcc = edge_list if len(nodes) == raw.n else edge_list.restricted_to(nodes)
    g, labels = lcc.graph, lcc.labels
    base = dict(name=name, n=g.n, m=g.edge_count, raw_n=raw.n, raw_m=raw.edge_count)

    if g.n < MIN_COMPONENT:
        logger.warning("%s: largest connected component has %d node(s); skipped", name, g.n)
        return NetworkSummary(**base, skipped=f"largest connected component has {g.n} node(s)")

    deadline = Deadline(seconds=cfg.timeout_seconds, label=name)
    d = distances(g)
    found: dict[str, Any] = {}
    rows: list[KRow] = []
    complete = True
    full_sweep = cfg.full_sweep

    try:
        kopt = None
        if "kopt" in cfg.problems or ("geq" in cfg.problems and full_sweep):
            kopt = adim_kopt(d, deadline)
            logger.info("%s: k_opt=%d with %d attacker node(s)", name, kopt.k_opt, kopt.cardinality)
            if "kopt" in cfg.problems:
                found.update(
                    k_opt=kopt.k_opt,
                    kopt_cardinality=kopt.cardinality,
                    kopt_witness=_labels_of(kopt.witness, labels),
                )

        if "geq" in cfg.problems:
            ks = range(1, kopt.k_opt + 1) if full_sweep and kopt else cfg.ks
            for row in iter_per_k_rows(d, ks, labels, deadline, suppress_repeats=full_sweep):
                rows.append(row)

        if "eq1" in cfg.problems:
            eq1 = adim_eq1(d, deadline, set_cover)
            found.update(
                eq1_cardinality=eq1.cardinality,
                eq1_witness=_labels_of(eq1.witness, labels),
                eq1_target=labels[eq1.target],
            )
            logger.info("%s: ADIM=1 cover of size %d", name, eq1.cardinality)

        if "tree-chain" in cfg.problems:
            if g.is_tree():
                chain = full_chain(d, deadline, oracle_limit)
                found["chain"] = tuple((k, _labels_of(s, labels)) for k, s in chain)
            else:
                logger.warning("%s: not a tree; tree-chain skipped", name)
    except SolverTimeoutError as error:
        logger.warning("%s: %s; keeping the finished problems", name, error)
        complete = False

    if rows:
        found["per_k"] = tuple(rows)
    return NetworkSummary(**base, **found, complete=complete)


def _measure_sample(cfg: RunConfig, index: int, distances, set_cover, oracle_limit):
    name = cfg.generator.sample_name(index)
    try:
        sample = generate_sample(cfg.generator, index)
        summary = run_single(
            cfg,
            EdgeList.unlabelled(sample.graph),
            sample.name,
            distances=distances,
            set_cover=set_cover,
            oracle_limit=oracle_limit,
        )
        return index, name, summary, None
    except Exception as error:  # noqa: BLE001
        return index, name, None, f"{type(error).__name__}: {error}"


def run_batch(
    cfg: RunConfig,
    distances: DistanceBackend = all_pairs_shortest_paths,
    set_cover: SetCoverSolver = greedy_set_cover,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    progress: Callable[[int, int], None] | None = None,
) -> EnsembleRun:
    """
    Generate ``cfg.count`` samples, measure each and aggregate.

    Samples run on up to ``cfg.workers`` processes; results are folded in sample
    index order, so the output does not depend on completion order. A failing
    sample is logged, listed and left out of the statistics.
    """
    gen = cfg.generator
    if gen is None:
        raise DomainError("run_batch needs a generator configuration")
    if gen.is_sparse():
        logger.warning(
            "n*p = %.2f is below 2.5; most samples will be far from connected", gen.expected_degree
        )

    outcomes = []
    if cfg.workers == 1:
        for index in range(cfg.count):
            outcomes.append(_measure_sample(cfg, index, distances, set_cover, oracle_limit))
            logger.info("sample %d/%d", index + 1, cfg.count)
            if progress:
                progress(index + 1, cfg.count)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_measure_sample, cfg, index, distances, set_cover, oracle_limit)
                for index in range(cfg.count)
            ]
            for done, future in enumerate(futures, start=1):
                outcomes.append(future.result())
                logger.info("sample %d/%d", done, cfg.count)
                if progress:
                    progress(done, cfg.count)

    outcomes.sort(key=lambda outcome: outcome[0])
    summaries = tuple(summary for _, _, summary, _ in outcomes if summary is not None)
    failures = tuple((name, error) for _, name, _, error in outcomes if error is not None)
    for name, error in failures:
        logger.warning("sample %s failed: %s", name, error)

    config = {**asdict(gen), "count": cfg.count, "expected_degree": gen.expected_degree}
    stats = aggregate(config, summaries, failed=len(failures))
    return EnsembleRun(stats=stats, summaries=summaries, failures=failures)


def emit(storage: Storage, results: Any) -> None:
    """
    Hand results to a storage adapter.

    Raises:
        DomainError: nothing to emit
    """
    if results is None or (isinstance(results, (list, tuple)) and not results):
        raise DomainError("no results to emit")
    storage.save(results)


def summary_errors(summary: NetworkSummary) -> list[str]:
    """Requested k values with no attacker set at all."""
    return [f"k={row.k} is infeasible" for row in summary.per_k if not row.feasible]
