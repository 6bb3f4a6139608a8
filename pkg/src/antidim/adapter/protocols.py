"""
Adapter Protocols - Contracts Between the Measures and the Outside World

The application core never touches files, datasets, or output formats directly. It
talks to the small protocols below, and the composition layer wires a concrete
implementation into each slot.

Protocol Usage Pattern:
-----------------------
1. Define the protocol here (e.g. GraphSource)
2. Implement it in the matching subpackage (e.g. interface/sources.py)
3. Type the application layer against the protocol
4. Name the concrete class in ``Context`` and let the composition layer import it

Structural subtyping means an implementation only has to provide the members; it
never inherits from these classes.
"""

from pathlib import Path
from typing import Any, Protocol, runtime_checkable

from antidim.model.graph import DistanceMatrix, EdgeList, Graph
from antidim.model.set_cover import SetCoverSolver

__all__ = ["DistanceBackend", "GraphSource", "GraphWriter", "Parser", "SetCoverSolver", "Storage"]


class GraphSource(Protocol):
    """
    Where a network comes from.

    A source hands back raw edge-list bytes and leaves decoding to a Parser, so
    files, bundled datasets and in-memory fixtures all travel the same path.

    Attributes:
        name: Short identifier used in summaries and output file names

    Returns:
        bytes: Edge-list text, one "u v" pair per line
    """

    name: str

    def read(self) -> bytes: ...


class Parser(Protocol):
    """
    Decodes what a GraphSource produced into a labelled graph.

    Parameters:
        data: Raw edge-list bytes

    Returns:
        EdgeList: Simple graph plus the original label of every node id
    """

    def parse(self, data: bytes) -> EdgeList: ...


class DistanceBackend(Protocol):
    """
    All-pairs shortest paths of a connected graph.

    The production backend runs one BFS per source; the Floyd-Warshall backend
    exists to cross-check it.
    """

    def __call__(self, g: Graph) -> DistanceMatrix: ...


@runtime_checkable
class Storage(Protocol):
    """
    Persists run results without the use cases knowing the format or location.

    Attributes:
        storage_type: Identifier of the output format ("json", "csv", "text")

    Parameters:
        d: A result object, or a list of them (NetworkSummary, BatchStats, records)
    """

    storage_type: str

    def save(self, d: Any) -> None: ...


class GraphWriter(Protocol):
    """
    Writes generated graphs and their manifest into a directory.

    Parameters:
        g: Generated graph, written in canonical edge-list form
        manifest: Generator config and one entry per written sample
        file_path: Destination; parent directories are created
    """

    def write_graph(self, g: Graph, file_path: Path) -> None: ...

    def write_manifest(self, manifest: dict, file_path: Path) -> None: ...
