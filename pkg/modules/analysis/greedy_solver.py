"""
Greedy Solver for 2NC-TAP
Maintains one partition of V - u per non-leaf tree node u and repeatedly
picks the link of minimum cost per newly crossed partition
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from modules.errors import Infeasible, InternalError
from modules.model.instance import components_partition, nonleaf_nodes, validate_tap
from modules.model.partition import Partition
from modules.utils.union_find import DisjointSet

logger = logging.getLogger(__name__)


class PartitionState:
    """
    For each non-leaf node u, a disjoint-set forest over V - u whose sets are
    the components of (T u F) - u for the links F picked so far.
    """

    def __init__(self, instance):
        self.instance = instance
        self.forests = {}
        self.bases = {}
        for u in nonleaf_nodes(instance):
            base = components_partition(instance, u)
            dsu = DisjointSet(v for v in range(instance.n) if v != u)
            for block in base.blocks:
                for v in block[1:]:
                    dsu.union(block[0], v)
            self.forests[u] = dsu
            self.bases[u] = base

    def crosses(self, u, a, b):
        """True iff the current partition of u separates a and b"""
        if u == a or u == b:
            return False
        return not self.forests[u].same(a, b)

    def covered_nodes(self, link):
        """Non-leaf nodes whose current partition is crossed by `link`"""
        return [u for u in self.forests if self.crosses(u, link.u, link.v)]

    def block_count(self, u):
        return self.forests[u].count

    def snapshot(self, u):
        return Partition.from_blocks(self.forests[u].groups())

    def merge(self, link):
        """Merge the blocks holding the endpoints of `link` in every partition"""
        for u, dsu in self.forests.items():
            if u not in link.endpoints:
                dsu.union(link.u, link.v)

    def potential(self):
        """Sum over u of (|P_u| - 1); zero exactly when every partition is trivial"""
        return sum(dsu.count - 1 for dsu in self.forests.values())

    def all_trivial(self):
        return self.potential() == 0


def coverage(link, state):
    """|inc(link)|: number of current partitions crossed by the link"""
    return len(state.covered_nodes(link))


def tie_break(candidates):
    """Among links with equal minimal ratio pick the lowest (cost, link_id)"""
    if not candidates:
        raise ValueError("tie_break needs at least one candidate")
    return min(candidates, key=lambda link: (link.cost, link.link_id))


@dataclass(frozen=True)
class Snapshot:
    """A partition P^i_u that received a weight"""
    node: int
    index: int
    iteration: int
    partition: Partition
    weight: Fraction


@dataclass(frozen=True)
class Iteration:
    number: int
    link: object
    ratio: Fraction
    covered: tuple
    weight_assigned: Fraction


@dataclass
class GreedyTrace:
    iterations: list = field(default_factory=list)
    snapshots: dict = field(default_factory=dict)
    bases: dict = field(default_factory=dict)

    @property
    def picked(self):
        return [it.link for it in self.iterations]

    @property
    def cost(self):
        return sum((it.link.cost for it in self.iterations), Fraction(0))

    def total_weight(self):
        return sum((it.weight_assigned * len(it.covered) for it in self.iterations), Fraction(0))


def greedy_solve(instance):
    """
    Run the greedy algorithm

    Returns:
        list of picked links (in pick order), GreedyTrace
    """
    validate_tap(instance)
    state = PartitionState(instance)
    trace = GreedyTrace(bases=dict(state.bases))
    trace.snapshots = {u: [] for u in state.bases}
    picked_ids = set()
    last_ratio = None

    logger.info("greedy: n=%d, %d links, %d non-leaf nodes",
                instance.n, len(instance.links), len(state.bases))

    while not state.all_trivial():
        best_ratio = None
        best = []
        for link in instance.links:
            if link.link_id in picked_ids:
                continue
            cov = coverage(link, state)
            if cov == 0:
                continue
            ratio = link.cost / cov
            if best_ratio is None or ratio < best_ratio:
                best_ratio, best = ratio, [link]
            elif ratio == best_ratio:
                best.append(link)

        if not best:
            open_nodes = [u for u in state.forests if state.block_count(u) > 1]
            raise Infeasible(f"no link crosses the partitions of nodes {open_nodes}; "
                             "the input graph is not 2-node connected")

        link = tie_break(best)
        covered = state.covered_nodes(link)
        if len(set(covered)) != len(covered):
            raise InternalError("a node received two weights in one iteration")
        if last_ratio is not None and best_ratio < last_ratio:
            raise InternalError(f"ratio decreased from {last_ratio} to {best_ratio}")

        number = len(trace.iterations) + 1
        refs = []
        before = state.potential()
        for u in covered:
            snaps = trace.snapshots[u]
            snaps.append(Snapshot(u, len(snaps), number, state.snapshot(u), best_ratio))
            refs.append((u, len(snaps) - 1))
        state.merge(link)
        if state.potential() >= before:
            raise InternalError("iteration did not merge any partition")

        trace.iterations.append(Iteration(number, link, best_ratio, tuple(refs), best_ratio))
        picked_ids.add(link.link_id)
        last_ratio = best_ratio
        logger.debug("iteration %d: link %d {%d,%d} cost %s ratio %s covers %s",
                     number, link.link_id, link.u, link.v, link.cost, best_ratio, covered)

    logger.info("greedy: picked %d links, cost %s", len(trace.iterations), trace.cost)
    return trace.picked, trace
