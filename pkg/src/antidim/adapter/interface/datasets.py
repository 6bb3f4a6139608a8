"""
Bundled Networks

``builtin:NAME`` inputs resolve here. Small graphs are built in code; the larger
real networks are vendored edge-list files looked up in ``ANTIDIM_DATA_DIR`` or,
failing that, the repository's ``tests/fixtures`` directory. Nothing is ever
downloaded.
"""

from collections.abc import Callable
from pathlib import Path
import os

import networkx as nx

from antidim.adapter.interface.sources import EdgeListFileSource, InMemorySource
from antidim.adapter.parser import serialize_edge_list
from antidim.adapter.protocols import GraphSource
from antidim.model.errors import DomainError
from antidim.model.graph import Graph, complete_graph, wheel_graph

BUILTIN_PREFIX = "builtin:"
DATA_DIR_VARIABLE = "ANTIDIM_DATA_DIR"
REPOSITORY_FIXTURES = Path(__file__).resolve().parents[4] / "tests" / "fixtures"

# name -> file name of the vendored edge list
FILE_DATASETS: dict[str, str] = {
    "san_juan": "san_juan.txt",
    "enron": "enron.txt",
    "hamsterster": "hamsterster.txt",
}


def _karate() -> Graph:
    return Graph.from_networkx(nx.karate_club_graph())


GENERATED_DATASETS: dict[str, Callable[[], Graph]] = {
    "karate": _karate,
    "wheel16": lambda: wheel_graph(16),
    "k5": lambda: complete_graph(5),
}


def data_dir() -> Path:
    configured = os.environ.get(DATA_DIR_VARIABLE)
    return Path(configured) if configured else REPOSITORY_FIXTURES


def dataset_path(name: str) -> Path:
    """Where the vendored file for ``name`` is expected."""
    if name not in FILE_DATASETS:
        raise DomainError(f"{name!r} is not a file-backed dataset")
    return data_dir() / FILE_DATASETS[name]


def available_datasets() -> list[str]:
    return sorted([*GENERATED_DATASETS, *FILE_DATASETS])


def builtin_source(name: str) -> GraphSource:
    if name in GENERATED_DATASETS:
        return InMemorySource(name, serialize_edge_list(GENERATED_DATASETS[name]()))
    if name in FILE_DATASETS:
        path = dataset_path(name)
        if not path.is_file():
            raise DomainError(
                f"dataset {name!r} expects an edge list at {path}; "
                f"set {DATA_DIR_VARIABLE} to the directory holding it"
            )
        source = EdgeListFileSource(path)
        source.name = name
        return source
    raise DomainError(
        f"unknown builtin {name!r}; available: {', '.join(available_datasets())}"
    )


def resolve_source(spec: str) -> GraphSource:
    """``builtin:NAME`` or a path to an edge-list file."""
    if spec.startswith(BUILTIN_PREFIX):
        return builtin_source(spec[len(BUILTIN_PREFIX):])
    return EdgeListFileSource(Path(spec))
