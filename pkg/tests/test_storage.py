from dataclasses import replace
import json

import pytest

from antidim.adapter.storage import (
    STORAGE_BY_FORMAT,
    ConvertToBytes,
    CsvResultStorage,
    EdgeListDirectoryWriter,
    JsonResultStorage,
    SaveToFile,
    TextReportStorage,
    ToRecord,
    read_records,
)
from antidim.application.statistics import aggregate
from antidim.application.use_case import GenerateGraphs
from antidim.model.errors import DomainError
from antidim.model.experiment import EnsembleRun, KRow, NetworkSummary, WitnessCheck
from antidim.model.generators import GenConfig
from antidim.model.graph import Graph, path_graph


@pytest.fixture
def summary() -> NetworkSummary:
    return NetworkSummary(
        name="karate",
        n=34,
        m=78,
        raw_n=34,
        raw_m=78,
        k_opt=9,
        kopt_cardinality=1,
        kopt_witness=("33",),
        eq1_cardinality=1,
        eq1_witness=("0",),
        eq1_target="11",
    )


@pytest.fixture
def sweep() -> NetworkSummary:
    rows = (KRow(k=1, cardinality=1, witness=("0",)), KRow(k=3, cardinality=None))
    return NetworkSummary(name="enron", n=5, m=4, raw_n=5, raw_m=4, per_k=rows)


@pytest.fixture
def ensemble(summary) -> EnsembleRun:
    stats = aggregate({"model": "er"}, [summary], failed=1)
    return EnsembleRun(stats=stats, summaries=(summary,), failures=(("er_1", "DomainError: x"),))


class TestCommands:
    def test_to_record_recurses(self, summary):
        records = ToRecord()({"items": [summary]})
        assert records["items"][0]["k_opt"] == 9

    def test_json_keys_sorted(self):
        assert ConvertToBytes()({"b": 1, "a": 2}) == b'{\n  "a": 2,\n  "b": 1\n}\n'

    def test_unsupported_type(self):
        with pytest.raises(DomainError):
            ConvertToBytes()(object())

    def test_save_to_file_creates_directories(self, tmp_path):
        target = tmp_path / "nested" / "out.txt"
        SaveToFile()("0 1\n", target)
        assert target.read_text() == "0 1\n"

    def test_save_to_stdout(self, capsys):
        SaveToFile()("hello", None)
        assert capsys.readouterr().out == "hello"


class TestJsonResultStorage:
    def test_rerun_is_byte_identical(self, tmp_path, summary):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        JsonResultStorage(first).save([summary])
        JsonResultStorage(second).save([summary])
        assert first.read_bytes() == second.read_bytes()

    def test_record_shape(self, tmp_path, summary):
        path = tmp_path / "out.json"
        JsonResultStorage(path).save([summary])
        [record] = json.loads(path.read_text())
        assert record["L_at_kopt"] == 1
        assert record["p_opt"] == 0.111
        assert record["fraction"] == 0.265
        assert record["kopt_witness"] == ["33"]
        assert "per_k" not in record

    def test_read_records_round_trip(self, tmp_path, summary, ensemble):
        path = tmp_path / "one.json"
        JsonResultStorage(path).save(summary)
        assert read_records(path)[0]["name"] == "karate"

        path = tmp_path / "ensemble.json"
        JsonResultStorage(path).save(ensemble)
        assert [r["name"] for r in read_records(path)] == ["karate"]

    def test_read_records_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2]")
        with pytest.raises(DomainError):
            read_records(path)
        path.write_text("{")
        with pytest.raises(DomainError):
            read_records(path)


class TestCsvResultStorage:
    def test_summary_table(self, summary):
        text = CsvResultStorage().render([summary])
        assert text.splitlines() == [
            "network,n,m,k_opt,p_opt,L_at_kopt,fraction,L_eq1",
            "karate,34,78,9,0.111,1,26.5%,1",
        ]

    def test_per_k_table(self, sweep):
        assert CsvResultStorage().render([sweep]).splitlines() == [
            "network,k,p,L_geq_k",
            "enron,1,1.000,1",
            "enron,3,0.333,",
        ]

    def test_threshold_grid(self, ensemble):
        assert CsvResultStorage().render(ensemble).splitlines() == [
            "t,fraction_kopt_at_least",
            *[f"{t},1.000" for t in range(1, 10)],
        ]

    def test_plain_records(self):
        check = WitnessCheck("g", "kopt", 2, ("a", "b"), 2)
        assert CsvResultStorage().render([check]).splitlines() == [
            "k,kind,mu,network,passed,relation,witness",
            "2,kopt,2,g,True,==,a b",
        ]

    def test_mixed_results_rejected(self, summary):
        with pytest.raises(DomainError):
            CsvResultStorage().render([summary, {"k": 1}])


class TestTextReportStorage:
    def test_summary_report(self, summary):
        text = TextReportStorage().render([summary])
        assert "1/9 = 0.111" in text
        assert "26.5%" in text

    def test_ensemble_report(self, ensemble):
        text = TextReportStorage().render(ensemble)
        assert text.startswith("1 sample(s), 1 failed")
        assert "At least 90% of networks have k_opt <= 9" in text

    def test_incomplete_flagged(self, summary):
        text = TextReportStorage().render([replace(summary, complete=False)])
        assert "INCOMPLETE" in text


def test_every_format_is_registered():
    assert sorted(STORAGE_BY_FORMAT) == ["csv", "json", "text"]
    assert {cls.storage_type for cls in STORAGE_BY_FORMAT.values()} == {"csv", "json", "text"}


class TestEdgeListDirectoryWriter:
    def test_graph_and_manifest(self, tmp_path):
        writer = EdgeListDirectoryWriter()
        writer.write_graph(path_graph(3), tmp_path / "nested" / "p3.txt")
        writer.write_manifest({"samples": [{"n": 3}], "config": {}}, tmp_path / "manifest.json")
        assert (tmp_path / "nested" / "p3.txt").read_text() == "0 1\n1 2\n"
        assert json.loads((tmp_path / "manifest.json").read_text()) == {"config": {}, "samples": [{"n": 3}]}


class RecordingWriter:
    def __init__(self):
        self.graphs: dict[str, Graph] = {}
        self.manifest: dict | None = None

    def write_graph(self, g, file_path):
        self.graphs[file_path.name] = g

    def write_manifest(self, manifest, file_path):
        self.manifest = manifest


def test_generate_graphs_uses_injected_writer(tmp_path):
    writer = RecordingWriter()
    entries = GenerateGraphs(GenConfig("tree", 6, seed=3), 2, tmp_path, writer).execute()
    assert sorted(writer.graphs) == ["tree_6_uniform_3_0.txt", "tree_6_uniform_3_1.txt"]
    assert all(g.is_tree() for g in writer.graphs.values())
    assert writer.manifest["samples"] == entries
    assert list(tmp_path.iterdir()) == []
