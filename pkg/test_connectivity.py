"""
Connectivity predicates, union-find and partitions
"""

import pytest

from conftest import random_instances
from modules.errors import TooManyBlocks, ValidationError
from modules.model.instance import components_partition, tree_lambda, tree_path
from modules.model.partition import Partition, bell, enumerate_coarsenings, set_partitions
from modules.utils.connectivity import (
    EdgeSubgraph,
    augmented_graph,
    components_without,
    is_2ec,
    is_2nc,
    is_connected,
    is_feasible_augmentation,
    is_feasible_augmentation_by_nonleaf,
)
from modules.utils.union_find import DisjointSet


def cycle(n):
    return EdgeSubgraph.of(n, [(i, (i + 1) % n) for i in range(n)])


def bowtie():
    # two triangles sharing node 0: 2EC but node 0 is a cut vertex
    return EdgeSubgraph.of(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def test_cycle_is_2nc_and_2ec():
    g = cycle(5)
    assert is_connected(g)
    assert is_2nc(g)
    assert is_2ec(g)


def test_bowtie_is_2ec_not_2nc():
    g = bowtie()
    assert is_2ec(g)
    assert not is_2nc(g)


def test_path_has_bridges():
    g = EdgeSubgraph.of(3, [(0, 1), (1, 2)])
    assert is_connected(g)
    assert not is_2ec(g)
    assert not is_2nc(g)


def test_small_graphs():
    assert not is_2nc(EdgeSubgraph.of(2, [(0, 1)]))
    assert not is_connected(EdgeSubgraph.of(3, [(0, 1)]))


@pytest.mark.parametrize('graph', [cycle(4), cycle(7), bowtie(), EdgeSubgraph.of(4, [(0, 1), (2, 3)])])
def test_networkx_agrees_with_definition(graph):
    assert is_2nc(graph) == is_2nc(graph, method='networkx')
    assert is_2ec(graph) == is_2ec(graph, method='networkx')


def test_networkx_agrees_on_random_augmentations():
    for instance in random_instances(20, max_n=9):
        half = instance.links[: len(instance.links) // 2]
        for links in (instance.links, half):
            g = augmented_graph(instance, links)
            assert is_2nc(g) == is_2nc(g, method='networkx')
            assert is_2ec(g) == is_2ec(g, method='networkx')


def test_feasibility_tests_agree(four_thirds):
    links = four_thirds.links
    assert is_feasible_augmentation(four_thirds, links)
    assert is_feasible_augmentation_by_nonleaf(four_thirds, links)
    partial = [links[0], links[1], links[3]]
    assert not is_feasible_augmentation(four_thirds, partial)
    assert not is_feasible_augmentation_by_nonleaf(four_thirds, partial)


def test_components_without():
    assert components_without(4, [(0, 1), (1, 2), (2, 3)], 1) == [[0], [2, 3]]


def test_disjoint_set():
    dsu = DisjointSet(range(5))
    assert dsu.union(3, 1)
    assert not dsu.union(1, 3)
    assert dsu.find(3) == 1
    assert dsu.count == 4
    clone = dsu.copy()
    clone.union(0, 4)
    assert dsu.count == 4 and clone.count == 3
    assert clone.groups() == [[0, 4], [1, 3], [2]]


# Partitions

def test_partition_is_canonical():
    a = Partition.from_blocks([[3, 2], [1]])
    b = Partition.from_blocks([[1], [2, 3]])
    assert a == b
    assert a.blocks == ((1,), (2, 3))
    assert a.crosses(1, 3)
    assert not a.crosses(2, 3)
    assert not a.crosses(1, 9)


def test_partition_rejects_overlap():
    with pytest.raises(ValidationError):
        Partition.from_blocks([[1, 2], [2]])


def test_set_partitions_count():
    for k in range(7):
        assert len(list(set_partitions(k))) == bell(k)
    assert bell(9) == 21147


def test_coarsenings_order_and_uniqueness():
    base = Partition.from_blocks([[0], [1], [2], [3]])
    found = list(enumerate_coarsenings(base))
    assert len(found) == 15
    assert len(set(found)) == 15
    assert found[0].is_trivial()
    assert found[-1] == base


def test_coarsening_cap():
    base = Partition.from_blocks([[i] for i in range(4)])
    with pytest.raises(TooManyBlocks):
        list(enumerate_coarsenings(base, max_blocks=3))


def test_representatives_round_trip(four_thirds):
    base = components_partition(four_thirds, 0)
    coarse = base.merge([[0, 1], [2]])
    groups = coarse.representatives(base)
    assert groups == [[1, 2], [3]]
    assert Partition.from_representatives(base, groups) == coarse


# Tree paths

def test_tree_path_and_lambda(tight4, ladder):
    long_link = tight4.links[-1]
    assert tree_path(tight4, long_link) == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert tree_lambda(tight4) == 4
    assert tree_lambda(ladder) == 3
