"""
Command-Line Entry Point

    antidim measure    --input FILE|builtin:NAME [--problems kopt,eq1] [--k 4,5]
    antidim sweep      --input ... [--k ...]
    antidim batch      --model er|ba|tree --n N [--p P | --q Q] [--count C, default 50] [--workers W]
    antidim gen        --model ... --n N [--p P | --q Q] [--count C] --out-dir DIR
    antidim tree-chain --input ... [--k K]
    antidim verify     --input ... --solution FILE

Results go to stdout (or --out); logs go to stderr.

Exit codes: 0 success, 2 input rejected (parse error or invalid request),
3 a requested k is infeasible or a witness fails verification, 4 timeout.
"""

from collections.abc import Sequence
from pathlib import Path
import argparse
import logging
import sys

from antidim.adapter.storage import STORAGE_BY_FORMAT
from antidim.application.harness import summary_errors
from antidim.composition.context import ClassImportPath, Context
from antidim.composition.experiments import (
    build_tree_chain,
    emit_results,
    generate_graphs,
    measure_network,
    run_ensemble,
    sweep_network,
    verify_solution,
)
from antidim.model.errors import (
    DomainError,
    EdgeListParseError,
    InfeasibleRequestError,
    SolverTimeoutError,
)
from antidim.model.experiment import PROBLEMS, NetworkSummary, RunConfig
from antidim.model.generators import GenConfig

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_TIMEOUT = 4

DEFAULT_ENSEMBLE_SIZE = 50


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from error


def _problem_list(text: str) -> frozenset[str]:
    problems = frozenset(part.strip() for part in text.split(",") if part.strip())
    unknown = problems - set(PROBLEMS)
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown problem(s) {', '.join(sorted(unknown))}; choose from {', '.join(PROBLEMS)}"
        )
    return problems


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=sorted(STORAGE_BY_FORMAT), default=None)
    parser.add_argument("--out", type=Path, default=None, help="output file (default stdout)")


def _add_generator(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=("er", "ba", "tree"), required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--p", type=float, default=None, help="edge probability (er)")
    parser.add_argument("--q", type=int, default=None, help="edges per new node (ba)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--require-connected", action="store_true", help="resample er graphs until connected"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antidim", description="Active-attack privacy measures of networks."
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    parser.add_argument("--timeout", type=float, default=None, help="seconds per network")
    parser.add_argument("--oracle-limit", type=int, default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    measure = commands.add_parser("measure", help="measures of one network")
    measure.add_argument("--input", required=True, help="edge-list file or builtin:NAME")
    measure.add_argument("--problems", type=_problem_list, default=frozenset({"kopt", "eq1"}))
    measure.add_argument("--k", type=_int_list, default=())
    _add_output(measure)

    sweep = commands.add_parser("sweep", help="per-k table of one network")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--k", type=_int_list, default=())
    _add_output(sweep)

    batch = commands.add_parser("batch", help="statistics over a generated ensemble")
    _add_generator(batch)
    batch.add_argument("--count", type=int, default=DEFAULT_ENSEMBLE_SIZE)
    batch.add_argument("--problems", type=_problem_list, default=frozenset({"kopt", "eq1"}))
    batch.add_argument("--k", type=_int_list, default=())
    batch.add_argument("--workers", type=int, default=None)
    _add_output(batch)

    gen = commands.add_parser("gen", help="write generated graphs as edge lists")
    _add_generator(gen)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--out-dir", type=Path, required=True)

    chain = commands.add_parser("tree-chain", help="antiresolving sets of a tree for every k")
    chain.add_argument("--input", required=True)
    chain.add_argument("--k", type=int, default=None, help="a single level instead of all")
    _add_output(chain)

    verify = commands.add_parser("verify", help="re-check witnesses in a result file")
    verify.add_argument("--input", required=True)
    verify.add_argument("--solution", type=Path, required=True)
    _add_output(verify)

    return parser


def _context_for(args: argparse.Namespace) -> Context:
    context = Context.from_environment()
    if args.timeout is not None:
        context = context._replace(timeout_seconds=args.timeout if args.timeout > 0 else None)
    if args.oracle_limit is not None:
        context = context._replace(oracle_limit=args.oracle_limit)
    if getattr(args, "workers", None) is not None:
        context = context._replace(workers=args.workers)
    if args.log_level:
        context = context._replace(log_level=args.log_level)
    if getattr(args, "format", None):
        storage = STORAGE_BY_FORMAT[args.format]
        context = context._replace(
            storage_class=ClassImportPath(storage.__module__, storage.__name__)
        )
    return context


def _gen_config(args: argparse.Namespace) -> GenConfig:
    return GenConfig(
        model=args.model,
        n=args.n,
        p=args.p,
        q=args.q,
        seed=args.seed,
        require_connected=args.require_connected,
    )


def _summary_exit(summary: NetworkSummary) -> int:
    if not summary.complete:
        return EXIT_TIMEOUT
    problems = summary_errors(summary)
    if problems:
        raise InfeasibleRequestError("; ".join(problems))
    return EXIT_OK


def run(args: argparse.Namespace, context: Context) -> int:
    if args.command in ("measure", "sweep"):
        cfg = RunConfig(
            problems=args.problems if args.command == "measure" else frozenset({"geq"}),
            source=args.input,
            ks=args.k,
            timeout_seconds=context.timeout_seconds,
            full_sweep=args.command == "sweep" and not args.k,
        )
        summary = (measure_network if args.command == "measure" else sweep_network)(context, cfg)
        emit_results(context, [summary], args.out)
        return _summary_exit(summary)

    if args.command == "batch":
        cfg = RunConfig(
            problems=args.problems,
            generator=_gen_config(args),
            count=args.count,
            ks=args.k,
            workers=context.workers,
            timeout_seconds=context.timeout_seconds,
        )
        ensemble = run_ensemble(context, cfg)
        emit_results(context, ensemble, args.out)
        return EXIT_OK

    if args.command == "gen":
        entries = generate_graphs(context, _gen_config(args), args.count, args.out_dir)
        logger.info("generated %d graph(s) in %s", len(entries), args.out_dir)
        return EXIT_OK

    if args.command == "tree-chain":
        emit_results(context, build_tree_chain(context, args.input, args.k), args.out)
        return EXIT_OK

    if args.command == "verify":
        checks = verify_solution(context, args.input, args.solution)
        emit_results(context, checks, args.out)
        return EXIT_OK if all(c.passed for c in checks) else EXIT_INFEASIBLE

    raise DomainError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        context = _context_for(args)
        configure_logging(context.log_level)
        logger.debug("running %s with %s", args.command, context)
        return run(args, context)
    except EdgeListParseError as error:
        logger.error("parse error: %s", error)
        return EXIT_INPUT
    except InfeasibleRequestError as error:
        logger.error("infeasible: %s", error)
        return EXIT_INFEASIBLE
    except SolverTimeoutError as error:
        logger.error("timeout: %s", error)
        return EXIT_TIMEOUT
    except DomainError as error:
        logger.error("%s", error)
        return EXIT_INPUT
