"""
Problem instances
A 2NC-TAP instance is a zero-cost spanning tree plus costed links; a 2NCSS
instance is a general costed graph. Both are immutable once validated.
"""

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from modules.errors import (
    DuplicateEdge,
    LeafNode,
    LoopEdge,
    NegativeCost,
    NoLinks,
    Not2NC,
    NotATree,
    TooFewNodes,
    ValidationError,
)
from modules.model.partition import Partition
from modules.utils.connectivity import EdgeSubgraph, is_2nc
from modules.utils.union_find import DisjointSet

TARGETS = ('2nc', '2ec')


@dataclass(frozen=True)
class Link:
    """A costed edge {u, v}; endpoints are stored with u < v"""
    u: int
    v: int
    cost: Fraction
    link_id: int

    @classmethod
    def make(cls, u, v, cost, link_id):
        return cls(min(u, v), max(u, v), Fraction(cost), link_id)

    @property
    def endpoints(self):
        return (self.u, self.v)


# general 2NCSS edges have the same shape
Edge = Link


def _norm(pair):
    u, v = pair
    return (min(u, v), max(u, v))


@dataclass(frozen=True)
class TapInstance:
    """
    Spanning tree `tree_edges` on nodes 0..n-1 (cost 0) plus `links`.

    `target` is "2nc" for 2NC-TAP and "2ec" for instances meant to be read
    with 2-edge-connectivity semantics (cut LP, bridge-free feasibility).
    """
    n: int
    tree_edges: tuple
    links: tuple
    target: str = '2nc'
    labels: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, n, tree_edges, links, target='2nc', labels=()):
        """Build from plain pairs and (u, v, cost) triples; link ids are positional"""
        tree = tuple(_norm(e) for e in tree_edges)
        made = tuple(
            item if isinstance(item, Link) else Link.make(item[0], item[1], item[2], i)
            for i, item in enumerate(links)
        )
        return cls(n, tree, made, target, tuple(labels))

    @cached_property
    def adjacency(self):
        adj = {v: [] for v in range(self.n)}
        for u, v in self.tree_edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    @cached_property
    def _rooted(self):
        # parent/depth arrays for a BFS from node 0
        parent = [-1] * self.n
        depth = [0] * self.n
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
        return parent, depth

    def degree(self, u):
        return len(self.adjacency[u])

    def link_by_id(self, link_id):
        for link in self.links:
            if link.link_id == link_id:
                return link
        raise KeyError(link_id)

    def nonleaf_nodes(self):
        return nonleaf_nodes(self)

    def total_cost(self, links):
        return sum((link.cost for link in links), Fraction(0))


@dataclass(frozen=True)
class NcssInstance:
    """A costed simple graph on nodes 0..n-1 (min-cost 2NCSS input)"""
    n: int
    edges: tuple
    labels: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, n, edges, labels=()):
        made = tuple(
            item if isinstance(item, Link) else Link.make(item[0], item[1], item[2], i)
            for i, item in enumerate(edges)
        )
        return cls(n, made, tuple(labels))

    def zero_cost_edges(self):
        return [e for e in self.edges if e.cost == 0]


def _check_pair(n, u, v, what):
    if not (0 <= u < n and 0 <= v < n):
        raise ValidationError(f"{what} {u}-{v} has an endpoint outside [0, {n})")
    if u == v:
        raise LoopEdge(f"{what} {u}-{v} is a loop")


def _check_costed(n, items, what, forbidden=()):
    seen = set(forbidden)
    ids = set()
    for item in items:
        _check_pair(n, item.u, item.v, what)
        if item.cost < 0:
            raise NegativeCost(f"{what} {item.u}-{item.v} has negative cost {item.cost}")
        pair = _norm(item.endpoints)
        if pair in seen:
            raise DuplicateEdge(f"{what} {item.u}-{item.v} duplicates an existing edge")
        seen.add(pair)
        if item.link_id in ids:
            raise ValidationError(f"{what} id {item.link_id} is used twice")
        ids.add(item.link_id)


def validate_tap(instance):
    """
    Check every TapInstance invariant; raises the first violation found.
    Returns True on success.
    """
    n = instance.n
    if n < 3:
        raise TooFewNodes(f"instance has {n} nodes, need at least 3")
    if instance.target not in TARGETS:
        raise ValidationError(f"unknown target '{instance.target}'")

    seen = set()
    for u, v in instance.tree_edges:
        _check_pair(n, u, v, 'tree edge')
        pair = _norm((u, v))
        if pair in seen:
            raise DuplicateEdge(f"tree edge {u}-{v} appears twice")
        seen.add(pair)
    if len(instance.tree_edges) != n - 1:
        raise NotATree(f"{len(instance.tree_edges)} tree edges on {n} nodes (need {n - 1})")
    dsu = DisjointSet(range(n))
    for u, v in instance.tree_edges:
        if not dsu.union(u, v):
            raise NotATree(f"tree edge {u}-{v} closes a cycle")

    _check_costed(n, instance.links, 'link', forbidden=seen)
    return True


def validate_ncss(instance):
    """Check every NcssInstance invariant, including 2-node connectivity"""
    if instance.n < 3:
        raise TooFewNodes(f"instance has {instance.n} nodes, need at least 3")
    _check_costed(instance.n, instance.edges, 'edge')
    graph = EdgeSubgraph.of(instance.n, [e.endpoints for e in instance.edges])
    if not is_2nc(graph):
        raise Not2NC("input graph is not 2-node connected")
    return True


def tree_path(instance, link):
    """
    The unique tree path between the endpoints of `link` (a Link or a pair),
    as an ordered list of tree edges from the first endpoint to the second.
    """
    a, b = link.endpoints if isinstance(link, Link) else link
    parent, depth = instance._rooted
    left, right = [a], [b]
    x, y = a, b
    while depth[x] > depth[y]:
        x = parent[x]
        left.append(x)
    while depth[y] > depth[x]:
        y = parent[y]
        right.append(y)
    while x != y:
        x, y = parent[x], parent[y]
        left.append(x)
        right.append(y)
    nodes = left + right[-2::-1]
    return [(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1)]


def internal_nodes(instance, link):
    """Internal nodes of T(link), in path order"""
    path = tree_path(instance, link)
    return [v for _, v in path[:-1]]


def tree_lambda(instance):
    """Maximum tree-path length (in edges) over all links"""
    if not instance.links:
        raise NoLinks("lambda is undefined for an instance without links")
    return max(len(tree_path(instance, link)) for link in instance.links)


def nonleaf_nodes(instance):
    """Nodes of tree-degree >= 2"""
    return sorted(v for v in range(instance.n) if instance.degree(v) >= 2)


def components_partition(instance, u):
    """Partition of V - u induced by the components of T - u"""
    if instance.degree(u) < 2:
        raise LeafNode(f"node {u} is a leaf of the tree")
    dsu = DisjointSet(v for v in range(instance.n) if v != u)
    for a, b in instance.tree_edges:
        if u not in (a, b):
            dsu.union(a, b)
    return Partition.from_blocks(dsu.groups())


def tree_diameter(instance):
    """Number of edges on a longest path of T"""
    def farthest(src):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in instance.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        far = max(dist, key=lambda v: (dist[v], -v))
        return far, dist[far]

    end, _ = farthest(0)
    return farthest(end)[1]


def graph_edges(instance):
    """
    All edges as Links: for a TAP instance the tree edges (cost 0, ids
    0..n-2) followed by the links (ids shifted by n-1); for 2NCSS the edges.
    """
    if isinstance(instance, NcssInstance):
        return list(instance.edges)
    offset = len(instance.tree_edges)
    edges = [Link.make(u, v, 0, i) for i, (u, v) in enumerate(instance.tree_edges)]
    edges += [Link.make(l.u, l.v, l.cost, offset + i) for i, l in enumerate(instance.links)]
    return edges


def as_ncss(instance):
    """View any instance as a general costed graph (tree edges cost 0)"""
    if isinstance(instance, NcssInstance):
        return instance
    return NcssInstance(instance.n, tuple(graph_edges(instance)), instance.labels)


def scale_costs(instance, factor):
    """Multiply every cost by a nonnegative rational factor"""
    factor = Fraction(factor)
    if factor < 0:
        raise NegativeCost(f"scale factor {factor} is negative")
    if isinstance(instance, NcssInstance):
        edges = tuple(replace(e, cost=e.cost * factor) for e in instance.edges)
        return replace(instance, edges=edges)
    links = tuple(replace(l, cost=l.cost * factor) for l in instance.links)
    return replace(instance, links=links)
