"""
Edge-List Codec

Network files arrive as whitespace-separated edge lists: one pair of node labels
per line, '#' or '%' starting a comment line. Labels are arbitrary tokens; node
ids are assigned by rank of first appearance. Directed inputs are read as
undirected, and self-loops and repeated edges are dropped so the result is a
simple graph.

The canonical form written back is one "u v" line per edge with u < v, edges in
ascending order, so parse(serialize(g)) reproduces g exactly.
"""

from collections.abc import Iterable
import logging

from antidim.model.errors import EdgeListParseError
from antidim.model.graph import EdgeList, Graph

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def _lines(data: bytes | str | Iterable[bytes] | Iterable[str]) -> Iterable[str]:
    if isinstance(data, bytes):
        return data.decode("utf-8").splitlines()
    if isinstance(data, str):
        return data.splitlines()
    return (
        line.decode("utf-8") if isinstance(line, bytes) else line for line in data
    )


def parse_edge_list(data: bytes | str | Iterable[bytes] | Iterable[str]) -> EdgeList:
    """
    Decode an edge list.

    Parameters:
        data: Whole file contents, or an iterable of lines (e.g. an open file)

    Returns:
        EdgeList: graph with ids 0..n-1 in first-appearance order and the label of
        each id; empty input yields the empty graph

    Raises:
        EdgeListParseError: a non-comment line does not hold exactly two tokens

    Example:
        >>> parse_edge_list(b"a b\\nb a\\na a").graph.edge_count
        1
    """
    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    loops = duplicates = 0

    for line_number, line in enumerate(_lines(data), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_number, line)

        u = index.setdefault(tokens[0], len(index))
        v = index.setdefault(tokens[1], len(index))
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)

    graph = Graph.from_edges(len(index), edges)
    logger.info(
        "parsed %d nodes, %d edges (dropped %d self-loop(s), %d duplicate edge(s))",
        graph.n,
        graph.edge_count,
        loops,
        duplicates,
    )
    return EdgeList(
        graph=graph,
        labels=tuple(index),
        dropped_loops=loops,
        dropped_duplicates=duplicates,
    )


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form: "u v" per edge, u < v, ascending."""
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def serialize_labels(edge_list: EdgeList) -> str:
    """Two-column "label id" sidecar mapping original labels to node ids."""
    return "".join(f"{label} {v}\n" for v, label in enumerate(edge_list.labels))


class EdgeListParser:
    """Parser adapter over ``parse_edge_list``."""

    def parse(self, data: bytes) -> EdgeList:
        return parse_edge_list(data)
