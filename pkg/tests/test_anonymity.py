from hypothesis import given, strategies as st
import pytest

from antidim.model.anonymity import (
    AttackerSet,
    MetricVector,
    RepresentationRefiner,
    measure,
    metric_representation,
    partition_by_representation,
    verify_k_antiresolving,
)
from antidim.model.errors import DomainError
from antidim.model.graph import complete_graph, cycle_graph, path_graph

from conftest import connected_graphs, distances_of


@st.composite
def graphs_with_attacker_sets(draw, max_nodes: int = 12):
    g = draw(connected_graphs(min_nodes=2, max_nodes=max_nodes))
    members = draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1))
    return g, AttackerSet.of(members, g.n)


def naive_classes(d, s: AttackerSet) -> list[list[int]]:
    classes: list[list[int]] = []
    for v in s.outside():
        for group in classes:
            if all(d[v, a] == d[group[0], a] for a in s):
                group.append(v)
                break
        else:
            classes.append([v])
    return classes


class TestAttackerSet:
    def test_of_sorts_and_deduplicates(self):
        assert AttackerSet.of([3, 1, 3], 5).members == (1, 3)

    @pytest.mark.parametrize("members", [(), (0, 1, 2)])
    def test_must_be_non_empty_proper_subset(self, members):
        with pytest.raises(DomainError):
            AttackerSet(members=members, graph_n=3)

    def test_rejects_unsorted_members(self):
        with pytest.raises(DomainError):
            AttackerSet(members=(2, 1), graph_n=4)

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            AttackerSet(members=(4,), graph_n=4)

    def test_outside_and_union(self):
        s = AttackerSet.of([1], 4)
        assert s.outside() == [0, 2, 3]
        assert s.union([3]).members == (1, 3)
        assert 1 in s and 0 not in s


class TestMetricRepresentation:
    def test_example_graph(self, example_distances):
        s = AttackerSet.of([0, 4, 5], 6)
        assert metric_representation(example_distances, 2, s).coords == (3, 1, 3)

    def test_path(self):
        d = distances_of(path_graph(4))
        assert str(metric_representation(d, 3, AttackerSet.of([0, 1], 4))) == "(3,2)"

    def test_member_has_no_representation(self, example_distances):
        with pytest.raises(DomainError):
            metric_representation(example_distances, 0, AttackerSet.of([0], 6))

    def test_zero_coordinate_rejected(self):
        with pytest.raises(DomainError):
            MetricVector(coords=(1, 0))


class TestPartition:
    def test_example_graph_classes(self, example_distances):
        partition = partition_by_representation(example_distances, AttackerSet.of([0, 5], 6))
        assert partition.classes == ((1,), (3,), (2, 4))
        assert partition.mu == 1
        assert partition.minimum_classes() == [(1,), (3,)]
        assert partition.to_text() == (
            "repr=(1,1) -> [1]\nrepr=(2,2) -> [3]\nrepr=(3,3) -> [2,4]"
        )

    def test_example_graph_is_not_2_antiresolving(self, example_distances):
        s = AttackerSet.of([0, 5], 6)
        assert verify_k_antiresolving(example_distances, s, 1)
        assert not verify_k_antiresolving(example_distances, s, 2)

    def test_complete_graph_single_class(self):
        partition = partition_by_representation(distances_of(complete_graph(5)), AttackerSet.of([0], 5))
        assert partition.classes == ((1, 2, 3, 4),)
        assert partition.mu == 4

    def test_cycle(self):
        partition = partition_by_representation(distances_of(cycle_graph(5)), AttackerSet.of([0], 5))
        assert partition.classes == ((1, 4), (2, 3))
        assert partition.mu == 2

    def test_size_mismatch(self, example_distances):
        with pytest.raises(DomainError):
            partition_by_representation(example_distances, AttackerSet.of([0], 7))

    def test_k_must_be_positive(self, example_distances):
        with pytest.raises(DomainError):
            verify_k_antiresolving(example_distances, AttackerSet.of([0], 6), 0)

    @given(graphs_with_attacker_sets())
    def test_partition_invariants(self, case):
        g, s = case
        d = distances_of(g)
        partition = partition_by_representation(d, s)
        covered = sorted(v for c in partition.classes for v in c)
        assert covered == s.outside()
        assert partition.mu == min(partition.sizes())
        assert 1 <= partition.mu <= g.n - len(s)
        assert list(partition.vectors) == sorted(partition.vectors, key=lambda vec: vec.coords)
        for vector, nodes in zip(partition.vectors, partition.classes):
            for v in nodes:
                assert metric_representation(d, v, s) == vector

    @given(graphs_with_attacker_sets())
    def test_agrees_with_pairwise_grouping(self, case):
        g, s = case
        d = distances_of(g)
        expected = sorted(tuple(c) for c in naive_classes(d, s))
        assert sorted(partition_by_representation(d, s).classes) == expected


class TestRepresentationRefiner:
    @given(graphs_with_attacker_sets())
    def test_matches_partition(self, case):
        g, s = case
        d = distances_of(g)
        refiner = RepresentationRefiner(d, s.members)
        partition = partition_by_representation(d, s)
        assert refiner.mu() == partition.mu
        assert refiner.members() == list(s.members)
        assert refiner.minimum_class_nodes() == sorted(
            v for c in partition.minimum_classes() for v in c
        )

    def test_incremental_adds_match_batch(self, example_distances):
        step = RepresentationRefiner(example_distances, [0])
        step.add([5])
        assert step.mu() == measure(example_distances, AttackerSet.of([0, 5], 6))
        assert step.minimum_class_nodes() == [1, 3]

    def test_full_cover(self):
        refiner = RepresentationRefiner(distances_of(path_graph(3)), [0, 1, 2])
        assert refiner.remaining() == 0
        assert refiner.mu() == 0
        assert refiner.minimum_class_nodes() == []

    def test_repeated_member_ignored(self, example_distances):
        refiner = RepresentationRefiner(example_distances, [2, 2])
        assert refiner.size == 1
