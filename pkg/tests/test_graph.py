from hypothesis import given
import networkx as nx
import numpy as np
import pytest

from antidim.adapter.parser import parse_edge_list, serialize_edge_list, serialize_labels
from antidim.model.errors import (
    DisconnectedGraphError,
    DomainError,
    EdgeListParseError,
)
from antidim.model.graph import (
    DistanceMatrix,
    EdgeList,
    Graph,
    all_pairs_shortest_paths,
    complete_graph,
    connected_components,
    floyd_warshall_distances,
    largest_connected_component,
    path_graph,
    wheel_graph,
)

from conftest import connected_graphs, random_connected_graph


class TestGraph:
    def test_from_edges_drops_loops_and_duplicates(self):
        g = Graph.from_edges(3, [(0, 1), (1, 0), (2, 2), (1, 2)])
        assert g.edge_count == 2
        assert g.adjacency == ((1,), (0, 2), (1,))

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(DomainError):
            Graph(n=2, adjacency=((1,), ()))

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(DomainError):
            Graph.from_edges(2, [(0, 2)])

    def test_edges_ascending(self):
        g = Graph.from_edges(4, [(3, 2), (1, 0), (2, 0)])
        assert list(g.edges()) == [(0, 1), (0, 2), (2, 3)]

    def test_networkx_round_trip(self):
        g = wheel_graph(5)
        assert nx.is_isomorphic(g.to_networkx(), nx.wheel_graph(6))
        assert Graph.from_networkx(g.to_networkx()) == g

    def test_edge_list_label_count_must_match(self):
        with pytest.raises(DomainError):
            EdgeList(graph=path_graph(3), labels=("a", "b"))


class TestParseEdgeList:
    def test_integers(self):
        parsed = parse_edge_list(b"0 1\n1 2")
        assert parsed.graph.n == 3
        assert list(parsed.graph.edges()) == [(0, 1), (1, 2)]

    def test_duplicate_and_loop_dropped(self):
        parsed = parse_edge_list(b"a b\nb a\na a")
        assert parsed.graph.n == 2
        assert parsed.graph.edge_count == 1
        assert parsed.labels == ("a", "b")
        assert parsed.dropped_duplicates == 1
        assert parsed.dropped_loops == 1

    def test_ids_follow_first_appearance(self):
        parsed = parse_edge_list("x z\n% comment\n# another\n\nz y\n")
        assert parsed.labels == ("x", "z", "y")
        assert list(parsed.graph.edges()) == [(0, 1), (1, 2)]

    def test_empty_input_is_empty_graph(self):
        assert parse_edge_list(b"").graph.n == 0
        assert parse_edge_list(b"# only a comment\n").graph.n == 0

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(EdgeListParseError) as info:
            parse_edge_list(b"0 1\n1 2 3\n")
        assert info.value.line_number == 2

    def test_single_token_is_malformed(self):
        with pytest.raises(EdgeListParseError):
            parse_edge_list(b"lonely\n")

    def test_accepts_line_iterables(self):
        parsed = parse_edge_list([b"1 2\n", b"2 3\n"])
        assert parsed.graph.edge_count == 2

    def test_label_sidecar(self):
        parsed = parse_edge_list(b"a b\nb c\n")
        assert serialize_labels(parsed) == "a 0\nb 1\nc 2\n"

    @given(connected_graphs(min_nodes=2, max_nodes=15))
    def test_parse_of_canonical_serialisation_preserves_edges(self, g):
        text = serialize_edge_list(g)
        parsed = parse_edge_list(text)
        relabelled = {
            tuple(sorted((int(parsed.labels[u]), int(parsed.labels[v]))))
            for u, v in parsed.graph.edges()
        }
        assert relabelled == set(g.edges())

    def test_canonical_text_is_fixed_point(self):
        text = "0 1\n0 2\n1 3\n2 3\n"
        assert serialize_edge_list(parse_edge_list(text).graph) == text


class TestComponents:
    def test_connected_graph_unchanged(self):
        g = path_graph(5)
        assert largest_connected_component(g) == g

    def test_picks_larger_component(self):
        g = Graph.from_edges(5, [(3, 4), (0, 1), (1, 2)])
        lcc = largest_connected_component(g)
        assert lcc.n == 3
        assert lcc.is_connected()

    def test_tie_goes_to_smallest_minimum_id(self):
        g = Graph.from_edges(4, [(2, 3), (0, 1)])
        assert connected_components(g) == [[0, 1], [2, 3]]
        assert largest_connected_component(g) == Graph.from_edges(2, [(0, 1)])

    def test_relabelling_preserves_order(self):
        g = Graph.from_edges(6, [(0, 5), (1, 3), (3, 4), (4, 1)])
        lcc = largest_connected_component(g)
        assert lcc == Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def test_empty_graph(self):
        assert largest_connected_component(Graph.empty()).n == 0

    def test_isolated_nodes_are_singleton_components(self):
        g = Graph.from_edges(5, [(2, 1)])
        assert connected_components(g) == [[0], [1, 2], [3], [4]]
        assert not g.is_connected()
        assert Graph.from_edges(1, []).is_connected()
        assert Graph.empty().is_connected()

    @given(connected_graphs(max_nodes=10))
    def test_output_is_connected(self, g):
        assert largest_connected_component(g).is_connected()

    def test_edge_list_restriction_carries_labels(self):
        parsed = parse_edge_list(b"a b\nc d\nd e\n")
        restricted = parsed.restricted_to([4, 3, 2])
        assert restricted.labels == ("c", "d", "e")
        assert restricted.graph.edge_count == 2


class TestDistances:
    def test_path(self):
        d = all_pairs_shortest_paths(path_graph(3))
        assert d.row(0).tolist() == [0, 1, 2]

    def test_example_graph_row(self, example_distances):
        assert example_distances.row(0).tolist() == [0, 1, 3, 2, 3, 2]

    def test_complete_graph(self):
        d = all_pairs_shortest_paths(complete_graph(4))
        assert (d.dist == 1 - np.eye(4, dtype=int)).all()

    def test_read_only_uint16(self, example_distances):
        assert example_distances.dist.dtype == np.uint16
        assert not example_distances.dist.flags.writeable
        with pytest.raises(ValueError):
            example_distances.dist[0, 1] = 7

    def test_writable_input_is_frozen_copy(self):
        raw = np.array([[0, 1], [1, 0]])
        d = DistanceMatrix(n=2, dist=raw)
        raw[0, 1] = 5
        assert d[0, 1] == 1

    def test_disconnected_graph_names_nodes(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedGraphError) as info:
            all_pairs_shortest_paths(g)
        assert info.value.u == 0
        assert info.value.v == 2

    def test_empty_graph_rejected(self):
        with pytest.raises(DomainError):
            all_pairs_shortest_paths(Graph.empty())

    def test_single_node(self):
        assert all_pairs_shortest_paths(Graph(n=1, adjacency=((),))).dist.tolist() == [[0]]

    @pytest.mark.parametrize("seed", range(100))
    def test_bfs_matches_floyd_warshall(self, seed):
        n = 2 + seed % 63
        g = random_connected_graph(seed, n, extra_edge_probability=3 / n)
        bfs = all_pairs_shortest_paths(g)
        assert np.array_equal(bfs.dist, floyd_warshall_distances(g).dist)

    @given(connected_graphs(max_nodes=14))
    def test_metric_properties(self, g):
        dist = all_pairs_shortest_paths(g).dist.astype(int)
        assert (np.diag(dist) == 0).all()
        assert (dist == dist.T).all()
        for u in range(g.n):
            for v in range(g.n):
                assert (dist[u, v] == 1) == g.has_edge(u, v)
                assert (dist[u, None, :] <= dist[u, v] + dist[v, None, :]).all()

    def test_networkx_agrees(self):
        g = random_connected_graph(7, 30, 0.1)
        d = all_pairs_shortest_paths(g)
        for u, lengths in nx.all_pairs_shortest_path_length(g.to_networkx()):
            for v, length in lengths.items():
                assert d[u, v] == length
