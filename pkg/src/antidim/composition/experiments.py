"""
Experiment Orchestration and Dependency Wiring

The composition root for every use case. Each entry point reads the Context,
imports the configured adapter classes, instantiates them and hands them to a
use case. The CLI calls these functions; so can a notebook or a scheduler.

Dependency Flow:
----------------
    Context (configuration)
         |
    import_experiment_classes()   (resolve ClassImportPath strings)
         |
    measure_network() / run_ensemble() / ...   (wire and execute)
         |
    use case (application layer)
"""

from pathlib import Path
from typing import Any

from antidim.adapter.interface.datasets import resolve_source
from antidim.adapter.protocols import DistanceBackend, Parser, SetCoverSolver, Storage
from antidim.adapter.storage import read_records
from antidim.application.harness import emit
from antidim.application.use_case import (
    BuildTreeChain,
    GenerateGraphs,
    MeasureNetwork,
    RunEnsemble,
    SweepNetwork,
    VerifyWitness,
)
from antidim.composition.context import Context
from antidim.model.experiment import EnsembleRun, NetworkSummary, RunConfig, WitnessCheck
from antidim.model.generators import GenConfig


def import_experiment_classes(
    context: Context,
) -> tuple[type[Parser], type[DistanceBackend], type[SetCoverSolver], type[Storage]]:
    """Resolve every adapter class named in the context."""
    parser_class = context.parser_class.import_class()
    distance_backend_class = context.distance_backend_class()
    set_cover_class = context.set_cover_class()
    storage_class = context.storage_class()
    return parser_class, distance_backend_class, set_cover_class, storage_class


def _collaborators(context: Context) -> dict[str, Any]:
    parser_class, distance_backend_class, set_cover_class, _ = import_experiment_classes(context)
    return {
        "parser": parser_class(),
        "distances": distance_backend_class(),
        "set_cover": set_cover_class(),
    }


def storage_for(context: Context, file_path: Path | None) -> Storage:
    """The configured storage writing to ``file_path`` (stdout when None)."""
    return context.storage_class()(file_path=file_path)


def measure_network(context: Context, cfg: RunConfig) -> NetworkSummary:
    parts = _collaborators(context)
    return MeasureNetwork(
        cfg,
        resolve_source(cfg.source),
        parts["parser"],
        parts["distances"],
        parts["set_cover"],
        oracle_limit=context.oracle_limit,
    ).execute()


def sweep_network(context: Context, cfg: RunConfig) -> NetworkSummary:
    parts = _collaborators(context)
    return SweepNetwork(
        cfg,
        resolve_source(cfg.source),
        parts["parser"],
        parts["distances"],
        parts["set_cover"],
        oracle_limit=context.oracle_limit,
    ).execute()


def run_ensemble(context: Context, cfg: RunConfig) -> EnsembleRun:
    parts = _collaborators(context)
    return RunEnsemble(
        cfg, parts["distances"], parts["set_cover"], oracle_limit=context.oracle_limit
    ).execute()


def build_tree_chain(context: Context, source: str, k_target: int | None = None) -> list[dict]:
    parts = _collaborators(context)
    return BuildTreeChain(
        resolve_source(source),
        parts["parser"],
        parts["distances"],
        k_target=k_target,
        timeout_seconds=context.timeout_seconds,
        oracle_limit=context.oracle_limit,
    ).execute()


def verify_solution(context: Context, source: str, solution: Path) -> list[WitnessCheck]:
    parts = _collaborators(context)
    return VerifyWitness(
        resolve_source(source), parts["parser"], parts["distances"], read_records(solution)
    ).execute()


def generate_graphs(context: Context, cfg: GenConfig, count: int, out_dir: Path) -> list[dict]:
    writer = context.graph_writer_class()()
    return GenerateGraphs(cfg, count, out_dir, writer).execute()


def emit_results(context: Context, results: Any, file_path: Path | None = None) -> None:
    emit(storage_for(context, file_path), results)
