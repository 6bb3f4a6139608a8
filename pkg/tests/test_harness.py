from pathlib import Path
import importlib
import re

import pytest

from antidim.adapter.distances import BreadthFirstDistances, FloydWarshallDistances
from antidim.adapter.interface.datasets import builtin_source, dataset_path
from antidim.adapter.parser import parse_edge_list
from antidim.application import harness
from antidim.application.harness import emit, per_k_table, run_batch, run_single, summary_errors
from antidim.application.statistics import (
    aggregate,
    coverage_quantile,
    eq1_distribution,
    kopt_threshold_grid,
)
from antidim.model.deadline import Deadline
from antidim.model.errors import DomainError, SolverTimeoutError
from antidim.model.experiment import NetworkSummary, RunConfig
from antidim.model.generators import GenConfig
from antidim.model.graph import EdgeList, star_graph

from conftest import distances_of


def builtin(name: str) -> EdgeList:
    return parse_edge_list(builtin_source(name).read())


def fixture_or_skip(name: str) -> EdgeList:
    path = dataset_path(name)
    if not path.is_file():
        pytest.skip(f"{name} edge list not vendored at {path}")
    return parse_edge_list(path.read_bytes())


def measure_cfg(**overrides) -> RunConfig:
    return RunConfig(
        problems=overrides.pop("problems", frozenset({"kopt", "eq1"})),
        source=overrides.pop("source", "builtin:test"),
        timeout_seconds=overrides.pop("timeout_seconds", None),
        **overrides,
    )


class TestRunConfig:
    def test_geq_needs_ks(self):
        with pytest.raises(DomainError):
            measure_cfg(problems=frozenset({"geq"}))
        assert measure_cfg(problems=frozenset({"geq"}), full_sweep=True).full_sweep

    def test_exactly_one_input(self):
        with pytest.raises(DomainError):
            RunConfig(problems=frozenset({"kopt"}))
        with pytest.raises(DomainError):
            RunConfig(
                problems=frozenset({"kopt"}),
                source="builtin:k5",
                generator=GenConfig("tree", 5),
            )

    def test_unknown_problem(self):
        with pytest.raises(DomainError):
            measure_cfg(problems=frozenset({"kmax"}))


class TestRunSingle:
    def test_karate(self):
        summary = run_single(measure_cfg(), builtin("karate"), "karate")
        assert (summary.n, summary.m) == (34, 78)
        assert summary.k_opt == 9
        assert summary.kopt_cardinality == 1
        assert round(summary.p_opt, 3) == 0.111
        assert f"{100 * summary.fraction:.1f}%" == "26.5%"
        assert summary.eq1_cardinality == 1
        assert summary.complete

    def test_karate_k9_needs_one_node(self):
        cfg = measure_cfg(problems=frozenset({"geq"}), ks=(9,))
        summary = run_single(cfg, builtin("karate"), "karate")
        assert summary.per_k[0].cardinality == 1
        assert summary.k_opt is None

    def test_wheel_witness_keeps_original_label(self):
        summary = run_single(measure_cfg(problems=frozenset({"kopt"})), builtin("wheel16"), "wheel16")
        assert summary.k_opt == 16
        assert summary.kopt_witness == ("16",)

    def test_uses_largest_component(self):
        edge_list = parse_edge_list(b"a b\nb c\nc d\nx y\n")
        summary = run_single(measure_cfg(), edge_list, "two-parts")
        assert (summary.raw_n, summary.n) == (6, 4)
        assert set(summary.kopt_witness) <= {"a", "b", "c", "d"}

    def test_small_component_is_skipped(self):
        summary = run_single(measure_cfg(), parse_edge_list(b"a b\nc d\n"), "pairs")
        assert summary.skipped
        assert summary.k_opt is None
        assert "skipped" in summary.to_record()

    def test_expired_budget_marks_incomplete(self):
        summary = run_single(measure_cfg(timeout_seconds=1e-9), builtin("karate"), "karate")
        assert not summary.complete
        assert summary.to_record()["complete"] is False

    def test_timeout_keeps_finished_per_k_rows(self, monkeypatch):
        solve = harness.adim_geq_k

        def expires_at_third_k(d, k, deadline=None):
            if k == 3:
                raise SolverTimeoutError("karate exceeded its budget of 1s")
            return solve(d, k, deadline)

        monkeypatch.setattr(harness, "adim_geq_k", expires_at_third_k)
        cfg = measure_cfg(problems=frozenset({"geq", "eq1"}), ks=(1, 2, 3, 4))
        summary = run_single(cfg, builtin("karate"), "karate")
        assert not summary.complete
        assert [(row.k, row.cardinality) for row in summary.per_k] == [(1, 1), (2, 1)]
        assert summary.eq1_cardinality is None
        assert [row["k"] for row in summary.to_record()["per_k"]] == [1, 2]

    def test_floyd_warshall_backend_agrees(self):
        edge_list = builtin("karate")
        bfs = run_single(measure_cfg(), edge_list, "karate", distances=BreadthFirstDistances())
        dense = run_single(measure_cfg(), edge_list, "karate", distances=FloydWarshallDistances())
        assert bfs == dense

    def test_tree_chain_only_on_trees(self):
        tree = EdgeList.unlabelled(star_graph(4))
        cfg = measure_cfg(problems=frozenset({"tree-chain"}))
        assert [k for k, _ in run_single(cfg, tree, "star").chain] == [1, 2, 3, 4]
        assert run_single(cfg, builtin("k5"), "k5").chain == ()

    def test_full_sweep_suppresses_repeated_sizes(self):
        cfg = measure_cfg(problems=frozenset({"geq"}), full_sweep=True)
        summary = run_single(cfg, builtin("karate"), "karate")
        sizes = [row.cardinality for row in summary.per_k]
        assert summary.per_k[0].k == 1
        assert all(a != b for a, b in zip(sizes, sizes[1:]))
        assert "k_opt" not in summary.to_record()


class TestPerKTable:
    def test_explicit_ks_keep_repeats(self):
        d = distances_of(star_graph(5))
        rows = per_k_table(d, [3, 1, 2], [str(v) for v in range(6)], Deadline.unlimited())
        assert [row.k for row in rows] == [1, 2, 3]
        assert [row.cardinality for row in rows] == [1, 1, 1]

    def test_suppression(self):
        d = distances_of(star_graph(5))
        rows = per_k_table(d, range(1, 6), [str(v) for v in range(6)], Deadline.unlimited(), True)
        assert [row.k for row in rows] == [1]

    def test_infeasible_rows(self, example_distances):
        rows = per_k_table(example_distances, [2, 4, 9], list("abcdef"), Deadline.unlimited())
        assert rows[0].feasible
        assert not rows[1].feasible
        assert not rows[2].feasible
        summary = NetworkSummary(name="x", n=6, m=6, raw_n=6, raw_m=6, per_k=rows)
        assert summary_errors(summary) == ["k=4 is infeasible", "k=9 is infeasible"]


class TestStatistics:
    def test_threshold_grid(self):
        assert kopt_threshold_grid([1, 2, 2, 4]) == ((1, 1.0), (2, 0.75), (3, 0.25), (4, 0.25))
        assert kopt_threshold_grid([]) == ()

    def test_eq1_buckets(self):
        assert eq1_distribution([1, 1, 2, 5]) == {"1": 0.5, "2": 0.25, ">2": 0.25}

    def test_coverage_quantile_is_an_observed_value(self):
        values = list(range(1, 11))
        assert coverage_quantile(values, 0.9) == 9
        assert coverage_quantile([], 0.9) is None

    def test_aggregate_ignores_skipped(self):
        summaries = [
            NetworkSummary(name="a", n=10, m=9, raw_n=10, raw_m=9, k_opt=2, eq1_cardinality=1),
            NetworkSummary(name="b", n=10, m=9, raw_n=10, raw_m=9, k_opt=4, eq1_cardinality=2),
            NetworkSummary(name="c", n=2, m=1, raw_n=2, raw_m=1, skipped="tiny"),
        ]
        stats = aggregate({"model": "tree"}, summaries, failed=1)
        assert stats.samples == 3
        assert stats.failed == 1
        assert stats.kopt_at_least[-1] == (4, 0.5)
        assert stats.kopt_quantile == 4
        assert stats.eq1_distribution == {"1": 0.5, "2": 0.5, ">2": 0.0}
        assert stats.quantile_line().startswith("At least 90% of networks have k_opt <= 4")


class TestRunBatch:
    def batch_cfg(
        self,
        generator: GenConfig,
        count: int = 6,
        workers: int = 1,
        problems: frozenset[str] = frozenset({"kopt", "eq1"}),
    ) -> RunConfig:
        return RunConfig(
            problems=problems,
            generator=generator,
            count=count,
            workers=workers,
            timeout_seconds=None,
        )

    def test_tree_ensemble(self):
        run = run_batch(self.batch_cfg(GenConfig("tree", 12, seed=1)))
        assert run.stats.samples == 6
        assert run.stats.config["count"] == 6
        assert run.stats.kopt_at_least[0] == (1, 1.0)
        assert [s.name for s in run.summaries] == [f"tree_12_uniform_1_{i}" for i in range(6)]

    def test_failures_are_listed_not_raised(self):
        gen = GenConfig("er", 8, p=0.0, seed=1, require_connected=True, max_retries=1)
        run = run_batch(self.batch_cfg(gen, count=2))
        assert run.summaries == ()
        assert len(run.failures) == 2
        assert run.stats.failed == 2
        assert run.failures[0][1].startswith("DomainError")

    def test_workers_do_not_change_results(self):
        gen = GenConfig("ba", 15, q=2, seed=4)
        sequential = run_batch(self.batch_cfg(gen, count=4))
        parallel = run_batch(self.batch_cfg(gen, count=4, workers=2))
        assert sequential == parallel

    def test_progress_callback(self):
        calls = []
        run_batch(self.batch_cfg(GenConfig("tree", 6), count=3), progress=lambda i, c: calls.append((i, c)))
        assert calls == [(1, 3), (2, 3), (3, 3)]

    def test_needs_generator(self):
        with pytest.raises(DomainError):
            run_batch(measure_cfg())

    @pytest.mark.slow
    def test_sparse_er_ensemble_has_small_kopt(self):
        gen = GenConfig("er", 100, p=0.05, seed=2024)
        run = run_batch(self.batch_cfg(gen, count=100, workers=4))
        assert run.stats.kopt_quantile is not None
        assert run.stats.kopt_quantile <= 10

    @pytest.mark.slow
    def test_er_500_mostly_one_attacker_suffices(self):
        gen = GenConfig("er", 500, p=0.01, seed=2024)
        run = run_batch(self.batch_cfg(gen, count=50, workers=4, problems=frozenset({"eq1"})))
        assert run.failures == ()
        distribution = run.stats.eq1_distribution
        assert distribution["1"] >= 0.77
        assert distribution["1"] + distribution["2"] >= 0.9

    @pytest.mark.slow
    def test_er_500_sparse_kopt_mostly_at_most_eight(self):
        gen = GenConfig("er", 500, p=0.005, seed=2024)
        run = run_batch(self.batch_cfg(gen, count=50, workers=4, problems=frozenset({"kopt"})))
        measured = [s.k_opt for s in run.summaries if s.k_opt is not None]
        assert len(measured) == 50
        assert sum(k <= 8 for k in measured) >= 0.8 * len(measured)

    @pytest.mark.slow
    def test_ba_500_edge_count_and_eq1_distribution(self):
        gen = GenConfig("ba", 500, q=5, seed=2024)
        run = run_batch(self.batch_cfg(gen, count=30, workers=4, problems=frozenset({"eq1"})))
        assert {s.m for s in run.summaries} == {2475}
        # some node has a unique farthest node, so one attacker already isolates it
        assert run.stats.eq1_distribution["1"] >= 0.9


class TestEmit:
    def test_empty_results_rejected(self):
        class Recorder:
            storage_type = "memory"

            def save(self, d):
                raise AssertionError("should not be called")

        with pytest.raises(DomainError):
            emit(Recorder(), [])


class TestBundledNetworks:
    @pytest.mark.slow
    def test_san_juan(self):
        summary = run_single(measure_cfg(problems=frozenset({"kopt"})), fixture_or_skip("san_juan"), "san_juan")
        assert summary.n == 75
        assert (summary.k_opt, summary.kopt_cardinality) == (7, 1)

    @pytest.mark.slow
    def test_enron_sweep(self):
        ks = (4, 5, 10, 20, 40, 60, 100, 120, 153)
        cfg = measure_cfg(problems=frozenset({"geq"}), ks=ks)
        summary = run_single(cfg, fixture_or_skip("enron"), "enron")
        assert summary.n == 1088
        assert [row.cardinality for row in summary.per_k] == [1, 334, 463, 567, 683, 842, 935, 935, 935]

    @pytest.mark.slow
    def test_hamsterster_needs_two_attackers(self):
        summary = run_single(measure_cfg(problems=frozenset({"eq1"})), fixture_or_skip("hamsterster"), "hamsterster")
        assert summary.eq1_cardinality == 2


@pytest.mark.parametrize("module", ["antidim.application.harness", "antidim.application.use_case"])
def test_application_layer_imports_only_adapter_protocols(module):
    source = Path(importlib.import_module(module).__file__).read_text()
    imported = set(re.findall(r"^from (antidim\.adapter\S*) import", source, re.MULTILINE))
    assert imported == {"antidim.adapter.protocols"}
