"""
Result Storage and Commands

Storage adapters persist what the use cases computed, in one of three formats:

- **json**: full records, witnesses included, keys sorted so reruns are byte-identical
- **csv**: the published table shapes (one row per network, per k, or per threshold)
- **text**: the plain-language report lines

Shared work (record conversion, byte encoding, writing) lives in small Command
objects reused by every storage class and by the generated-graph writer.
"""

from pathlib import Path
from typing import Any, Protocol
import csv
import io
import json
import logging
import sys

from antidim.adapter.parser import serialize_edge_list
from antidim.model.errors import DomainError
from antidim.model.experiment import BatchStats, EnsembleRun, NetworkSummary
from antidim.model.graph import Graph

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ("network", "n", "m", "k_opt", "p_opt", "L_at_kopt", "fraction", "L_eq1")
PER_K_COLUMNS = ("network", "k", "p", "L_geq_k")
THRESHOLD_COLUMNS = ("t", "fraction_kopt_at_least")


class Command(Protocol):
    """
    An operation as an object. ``execute`` does the work; calling the command is
    shorthand for it.
    """

    def execute(self, *args: Any, **kwds: Any) -> Any: ...

    def __call__(self, *args: Any, **kwds: Any) -> Any:
        return self.execute(*args, **kwds)


class ToRecord(Command):
    """Turns result entities (or lists of them) into plain JSON-ready structures."""

    def execute(self, d: Any) -> Any:
        if hasattr(d, "to_record"):
            return d.to_record()
        if isinstance(d, (list, tuple)):
            return [self.execute(item) for item in d]
        if isinstance(d, dict):
            return {key: self.execute(value) for key, value in d.items()}
        return d


class ConvertToBytes(Command):
    """
    Encodes data for writing.

    Supported types: str, bytes, bytearray, dict and list (as sorted-key JSON),
    anything with ``to_record``, and plain numbers.

    Raises:
        DomainError: unsupported type
    """

    def execute(self, d: Any) -> bytes:
        if hasattr(d, "to_record"):
            d = ToRecord()(d)
        if isinstance(d, str):
            return d.encode("utf-8")
        if isinstance(d, bytes):
            return d
        if isinstance(d, bytearray):
            return bytes(d)
        if isinstance(d, (dict, list)):
            return (json.dumps(ToRecord()(d), sort_keys=True, indent=2) + "\n").encode("utf-8")
        if isinstance(d, (bool, int, float)):
            return str(d).encode("utf-8")
        raise DomainError(f"cannot serialise {type(d).__name__}")


class SaveToFile(Command):
    """
    Writes data through ConvertToBytes, creating parent directories as needed.
    A ``None`` path writes to standard output.
    """

    def execute(self, d: Any, file_path: Path | None):
        payload = ConvertToBytes()(d)
        if file_path is None:
            sys.stdout.write(payload.decode("utf-8"))
            sys.stdout.flush()
            return

        file_path.parent.mkdir(parents=True, exist_ok=True)
        with file_path.open("wb") as f:
            f.write(payload)
        logger.info("wrote %d bytes to %s", len(payload), file_path)


def _as_results(d: Any) -> list:
    return list(d) if isinstance(d, (list, tuple)) else [d]


def _percent(x: float | None) -> str:
    return "" if x is None else f"{100 * x:.1f}%"


def _cell(x: Any) -> Any:
    return "" if x is None else x


class _FileStorage:
    storage_type: str = "file"

    def __init__(self, file_path: Path | None = None):
        self.file_path = None if file_path is None else Path(file_path)

    def _absolute_path(self) -> Path | None:
        return None if self.file_path is None else self.file_path.resolve()

    def render(self, d: Any) -> Any:
        return d

    def save(self, d: Any):
        SaveToFile()(self.render(d), self._absolute_path())


class JsonResultStorage(_FileStorage):
    """Full records as sorted-key JSON."""

    storage_type = "json"

    def render(self, d: Any) -> Any:
        return ToRecord()(d)


class CsvResultStorage(_FileStorage):
    """
    Table-shaped CSV.

    - BatchStats / EnsembleRun: the threshold grid, one row per t
    - NetworkSummary rows with a per-k table and no k_opt: one row per (network, k)
    - other NetworkSummary rows: one row per network, summary columns
    """

    storage_type = "csv"

    def render(self, d: Any) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        results = _as_results(d)

        if all(isinstance(r, (BatchStats, EnsembleRun)) for r in results):
            writer.writerow(THRESHOLD_COLUMNS)
            for r in results:
                stats = r.stats if isinstance(r, EnsembleRun) else r
                for t, fraction in stats.kopt_at_least:
                    writer.writerow((t, f"{fraction:.3f}"))
            return buffer.getvalue()

        summaries = [r for r in results if isinstance(r, NetworkSummary)]
        if not summaries:
            return self._plain_records(ToRecord()(results))
        if len(summaries) != len(results):
            raise DomainError("csv output mixes network summaries with other results")

        if all(s.per_k and s.k_opt is None for s in summaries):
            writer.writerow(PER_K_COLUMNS)
            for s in summaries:
                for row in s.per_k:
                    writer.writerow((s.name, row.k, f"{row.p_k:.3f}", _cell(row.cardinality)))
            return buffer.getvalue()

        writer.writerow(SUMMARY_COLUMNS)
        for s in summaries:
            writer.writerow(
                (
                    s.name,
                    s.n,
                    s.m,
                    _cell(s.k_opt),
                    "" if s.p_opt is None else f"{s.p_opt:.3f}",
                    _cell(s.kopt_cardinality),
                    _percent(s.fraction),
                    _cell(s.eq1_cardinality),
                )
            )
        return buffer.getvalue()

    @staticmethod
    def _plain_records(records: list) -> str:
        if not all(isinstance(r, dict) for r in records):
            raise DomainError("csv output needs result records")
        columns = sorted({key for r in records for key in r})
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow(
                {
                    key: " ".join(map(str, value)) if isinstance(value, list) else _cell(value)
                    for key, value in r.items()
                }
            )
        return buffer.getvalue()


class TextReportStorage(_FileStorage):
    """Human-readable report lines."""

    storage_type = "text"

    def render(self, d: Any) -> str:
        lines: list[str] = []
        for r in _as_results(d):
            if isinstance(r, NetworkSummary):
                lines.extend(r.report())
            elif isinstance(r, (BatchStats, EnsembleRun)):
                stats = r.stats if isinstance(r, EnsembleRun) else r
                lines.append(f"{stats.samples} sample(s), {stats.failed} failed")
                for t, fraction in stats.kopt_at_least:
                    lines.append(f"  k_opt >= {t}: {100 * fraction:.1f}%")
                for bucket, fraction in stats.eq1_distribution.items():
                    lines.append(f"  L_eq1 {bucket}: {100 * fraction:.1f}%")
                quantile = stats.quantile_line()
                if quantile:
                    lines.append(f"  {quantile}")
            else:
                lines.append(json.dumps(ToRecord()(r), sort_keys=True))
        return "\n".join(lines) + "\n"


STORAGE_BY_FORMAT: dict[str, type[_FileStorage]] = {
    "json": JsonResultStorage,
    "csv": CsvResultStorage,
    "text": TextReportStorage,
}


class EdgeListDirectoryWriter:
    """Canonical edge-list files plus a sorted-key JSON manifest."""

    def __init__(self):
        self.save_to_file = SaveToFile()

    def write_graph(self, g: Graph, file_path: Path) -> None:
        self.save_to_file(serialize_edge_list(g), file_path)

    def write_manifest(self, manifest: dict, file_path: Path) -> None:
        self.save_to_file(manifest, file_path)


def read_records(file_path: Path) -> list[dict]:
    """
    Load records written by JsonResultStorage: a single record, a list of them,
    or an ensemble run (whose per-sample records are returned).
    """
    try:
        data = json.loads(Path(file_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise DomainError(f"{file_path} is not valid JSON: {error}") from error
    if isinstance(data, dict) and "samples" in data and "stats" in data:
        data = data["samples"]
    records = data if isinstance(data, list) else [data]
    if not all(isinstance(r, dict) for r in records):
        raise DomainError(f"{file_path} does not hold result records")
    return records
