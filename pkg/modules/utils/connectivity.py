"""
Connectivity predicates
The definitional checks here are the ground truth for solvers, oracles and
tests. The networkx routines are a faster second opinion and must agree.
"""

from dataclasses import dataclass

import networkx as nx

from modules.utils.union_find import DisjointSet


@dataclass(frozen=True)
class EdgeSubgraph:
    """A simple undirected graph on nodes 0..n-1 given by its edge list"""
    n: int
    edges: tuple

    @classmethod
    def of(cls, n, edges):
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at node {u}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(norm)))

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


def _component_count(n, edges, removed=None):
    nodes = [v for v in range(n) if v != removed]
    dsu = DisjointSet(nodes)
    for u, v in edges:
        if u != removed and v != removed:
            dsu.union(u, v)
    return dsu.count


def is_connected(g):
    """True iff g has exactly one connected component"""
    return _component_count(g.n, g.edges) == 1


def is_2nc(g, method='definition'):
    """
    True iff g has >= 3 nodes, is connected, and stays connected after
    deleting any single node.
    """
    if g.n < 3:
        return False
    if method == 'networkx':
        return nx.is_biconnected(g.to_networkx())
    if not is_connected(g):
        return False
    return all(_component_count(g.n, g.edges, removed=v) == 1 for v in range(g.n))


def is_2ec(g, method='definition'):
    """True iff g has >= 2 nodes, is connected, and has no bridge"""
    if g.n < 2:
        return False
    if method == 'networkx':
        graph = g.to_networkx()
        return nx.is_connected(graph) and not nx.has_bridges(graph)
    if not is_connected(g):
        return False
    for skip in range(len(g.edges)):
        rest = g.edges[:skip] + g.edges[skip + 1:]
        if _component_count(g.n, rest) != 1:
            return False
    return True


def augmented_graph(instance, links):
    """T plus the given links, as an EdgeSubgraph"""
    edges = list(instance.tree_edges) + [link.endpoints for link in links]
    return EdgeSubgraph.of(instance.n, edges)


def is_feasible_augmentation(instance, links):
    """True iff T u F is 2-node connected"""
    return is_2nc(augmented_graph(instance, links))


def is_feasible_augmentation_by_nonleaf(instance, links):
    """
    Equivalent test: (T u F) - u is connected for every non-leaf u.
    Deleting a leaf never disconnects T u F.
    """
    graph = augmented_graph(instance, links)
    return all(
        _component_count(graph.n, graph.edges, removed=u) == 1
        for u in instance.nonleaf_nodes()
    )


def components_without(n, edges, removed):
    """Node sets of the components of (V, edges) - removed, sorted"""
    dsu = DisjointSet(v for v in range(n) if v != removed)
    for u, v in edges:
        if u != removed and v != removed:
            dsu.union(u, v)
    return dsu.groups()
