"""
Separation oracles
Exhaustive, exact separation for partition rows (every coarsening of every
base partition) and cut rows (every cut, or an exact minimum cut above the
enumeration cap). Scans run on integers: the point is scaled by the common
denominator of its coordinates first.
"""

import logging
import math
from fractions import Fraction

import networkx as nx

from modules.errors import InstanceTooLarge, TooManyBlocks
from modules.model.instance import (
    components_partition,
    graph_edges,
    nonleaf_nodes,
)
from modules.model.partition import Partition, enumerate_coarsenings
from modules.oracle.lp_model import Row
from modules.utils.config import resolve_limits
from modules.utils.connectivity import components_without

logger = logging.getLogger(__name__)


def scale_point(x):
    """Integer point X and scale D with X = D * x"""
    scale = math.lcm(*(Fraction(v).denominator for v in x)) if x else 1
    return [int(Fraction(v) * scale) for v in x], scale


def set_pairs_point(instance):
    """x = 1/2 on every link: feasible for the set-pairs LP on star/cycle instances"""
    return [Fraction(1, 2)] * len(instance.links)


# Partition rows

def _best_grouping(k, weight, scale):
    """
    Over all groupings of blocks 0..k-1 (restricted growth strings, in the
    order `set_partitions` yields them) maximise
        (groups - 1) * scale - crossing weight.
    Returns (violation, labels) for the first maximiser.
    """
    total = sum(weight[a][b] for a in range(k) for b in range(a + 1, k))
    labels = [0] * k
    best = [None, None]

    def extend(i, top, within):
        if i == k:
            violation = top * scale - (total - within)
            if best[0] is None or violation > best[0]:
                best[0], best[1] = violation, tuple(labels)
            return
        for label in range(top + 2):
            labels[i] = label
            gain = 0
            for j in range(i):
                if labels[j] == label:
                    gain += weight[i][j]
            extend(i + 1, max(top, label), within + gain)

    extend(1, 0, 0)
    return best[0], best[1]


def partition_row(node, partition, candidates):
    """
    The row  sum of x over candidate edges crossing `partition` >= |P| - 1.
    `candidates` are (variable index, a, b) for the edges of G - node.
    """
    coeffs = tuple((j, 1) for j, a, b in candidates if partition.crosses(a, b))
    blocks = [list(block) for block in partition.blocks]
    return Row(
        key=('partition', node, partition.blocks),
        coeffs=coeffs,
        rhs=Fraction(len(partition) - 1),
        label=f"V-{node} into {blocks}",
    )


def most_violated_coarsening(node, base, candidates, X, scale):
    """Most violated partition row over the coarsenings of `base`, or None"""
    k = len(base)
    if k < 2:
        return None, None
    index = base.block_index()
    weight = [[0] * k for _ in range(k)]
    for j, a, b in candidates:
        ba, bb = index[a], index[b]
        if ba != bb and X[j]:
            weight[ba][bb] += X[j]
            weight[bb][ba] += X[j]
    violation, labels = _best_grouping(k, weight, scale)
    if violation <= 0:
        return None, None
    groups = {}
    for i, label in enumerate(labels):
        groups.setdefault(label, []).append(i)
    partition = base.merge(list(groups.values()))
    return Fraction(violation, scale), partition_row(node, partition, candidates)


def tap_candidates(instance, u):
    """Links of G - u as (variable index, a, b)"""
    return [(j, l.u, l.v) for j, l in enumerate(instance.links) if u not in l.endpoints]


def tap_partition_rows(instance, x, limits=None):
    """Most violated partition row per non-leaf node, as (violation, row) pairs"""
    limits = resolve_limits(limits)
    X, scale = scale_point(x)
    found = []
    for u in nonleaf_nodes(instance):
        base = components_partition(instance, u)
        if len(base) > limits.max_blocks:
            raise TooManyBlocks(f"node {u} has degree {len(base)}, above the cap of {limits.max_blocks}")
        violation, row = most_violated_coarsening(u, base, tap_candidates(instance, u), X, scale)
        if row is not None:
            found.append((violation, row))
    return found


def _most_violated(found):
    best = None
    for violation, row in found:
        if best is None or violation > best[0]:
            best = (violation, row)
    return None if best is None else best[1]


def separate_tap(instance, x, limits=None):
    """
    Scan every non-leaf node and every coarsening of its base partition;
    returns a most violated row (first in scan order) or None.
    """
    if any(v < 0 for v in x):
        raise ValueError("separation expects x >= 0")
    return _most_violated(tap_partition_rows(instance, x, limits))


def zero_cost_partition(instance, w):
    """Partition of V - w by the components of G0 - w (G0: zero-cost edges)"""
    zero = [e.endpoints for e in graph_edges(instance) if e.cost == 0]
    return Partition.from_blocks(components_without(instance.n, zero, w))


def ncss_candidates(edges, w):
    return [(j, e.u, e.v) for j, e in enumerate(edges) if w not in e.endpoints]


def ncss_partition_rows(instance, x, limits=None):
    limits = resolve_limits(limits)
    X, scale = scale_point(x)
    edges = graph_edges(instance)
    found = []
    for w in range(instance.n):
        base = zero_cost_partition(instance, w)
        if len(base) < 2:
            continue
        if len(base) > limits.max_blocks:
            raise TooManyBlocks(f"G0 - {w} has {len(base)} components, above the cap of {limits.max_blocks}")
        violation, row = most_violated_coarsening(w, base, ncss_candidates(edges, w), X, scale)
        if row is not None:
            found.append((violation, row))
    return found


# Cut rows

def cut_row(edges, side):
    """x(delta(S)) >= 2 for the node set `side` (the side without node 0)"""
    side = frozenset(side)
    coeffs = tuple((j, 1) for j, e in enumerate(edges) if (e.u in side) != (e.v in side))
    return Row(key=('cut', side), coeffs=coeffs, rhs=Fraction(2), label=f"cut {sorted(side)}")


def _gray_min_cut(n, edges, X):
    """Minimum over all 2^(n-1) - 1 cuts, walked in Gray-code order"""
    adj = [[] for _ in range(n)]
    for (e, w) in zip(edges, X):
        if w:
            adj[e.u].append((e.v, w))
            adj[e.v].append((e.u, w))
    inside = [False] * n
    value = 0
    best, best_code = None, None
    for i in range(1, 2 ** (n - 1)):
        v = (i & -i).bit_length()
        for u, w in adj[v]:
            value += w if inside[u] == inside[v] else -w
        inside[v] = not inside[v]
        if best is None or value < best:
            best, best_code = value, i ^ (i >> 1)
    side = {b + 1 for b in range(n - 1) if best_code >> b & 1}
    return best, side


def _stoer_wagner_min_cut(n, edges, weights):
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for e, w in zip(edges, weights):
        graph.add_edge(e.u, e.v, weight=w)
    value, (left, right) = nx.stoer_wagner(graph)
    side = set(right) if 0 in left else set(left)
    return value, side


def min_cut(n, edges, x, limits=None, method='auto'):
    """
    Exact global minimum of x(delta(S)).

    method: 'enumerate' (every cut; InstanceTooLarge above the cap),
    'min-cut' (Stoer-Wagner) or 'auto' (enumerate within the cap).
    Returns (value, side) with node 0 outside `side`.
    """
    limits = resolve_limits(limits)
    if method == 'auto':
        method = 'enumerate' if n <= limits.max_cut_nodes else 'min-cut'
    X, scale = scale_point(x)
    if method == 'enumerate':
        if n > limits.max_cut_nodes:
            raise InstanceTooLarge(f"{n} nodes exceed the cut enumeration cap of {limits.max_cut_nodes}")
        value, side = _gray_min_cut(n, edges, X)
    elif method == 'min-cut':
        value, side = _stoer_wagner_min_cut(n, edges, X)
    else:
        raise ValueError(f"unknown cut method '{method}'")
    return Fraction(value, scale), side


def cut_rows(instance, x, limits=None, method='auto'):
    edges = graph_edges(instance)
    value, side = min_cut(instance.n, edges, x, limits, method)
    if value >= 2:
        return []
    return [(2 - value, cut_row(edges, side))]


def separate_cuts(instance, x, limits=None, method='auto'):
    """Most violated cut row over all graph edges, or None"""
    return _most_violated(cut_rows(instance, x, limits, method))


def separate_ncss(instance, x, limits=None, method='auto'):
    """
    Cut rows and, for every node w, partition rows over the coarsenings of
    the components of G0 - w; returns a most violated row or None.
    """
    if any(v < 0 or v > 1 for v in x):
        raise ValueError("separation expects 0 <= x <= 1")
    return _most_violated(cut_rows(instance, x, limits, method)
                          + ncss_partition_rows(instance, x, limits))


def violated_rows(instance, kind, x, limits=None):
    """Rows to add in one lazy round: per node (and for cuts) the most violated one"""
    if kind == 'tap-partition':
        found = tap_partition_rows(instance, x, limits)
    elif kind == 'ncss-partition':
        found = cut_rows(instance, x, limits) + ncss_partition_rows(instance, x, limits)
    else:
        found = cut_rows(instance, x, limits)
    for violation, row in found:
        logger.debug("violated by %s: %s", violation, row.label)
    return [row for _, row in found]


def initial_rows(instance, kind):
    """
    Warm-start pool: the base partition row of every non-leaf node (TAP),
    or every singleton cut (2NCSS and cut LP).
    """
    if kind == 'tap-partition':
        return [partition_row(u, components_partition(instance, u), tap_candidates(instance, u))
                for u in nonleaf_nodes(instance)]
    edges = graph_edges(instance)
    rows = []
    for v in range(instance.n):
        # node 0 lies outside every stored side; its singleton is the complement
        side = set(range(1, instance.n)) if v == 0 else {v}
        rows.append(cut_row(edges, side))
    return rows


# Full materialisation

def all_cut_rows(instance, limits=None):
    limits = resolve_limits(limits)
    n = instance.n
    if n > limits.max_cut_nodes:
        raise InstanceTooLarge(f"{n} nodes exceed the cut enumeration cap of {limits.max_cut_nodes}")
    edges = graph_edges(instance)
    for mask in range(1, 2 ** (n - 1)):
        yield cut_row(edges, {b + 1 for b in range(n - 1) if mask >> b & 1})


def all_partition_rows(instance, kind, limits=None):
    limits = resolve_limits(limits)
    if kind == 'tap-partition':
        for u in nonleaf_nodes(instance):
            base = components_partition(instance, u)
            candidates = tap_candidates(instance, u)
            for partition in enumerate_coarsenings(base, limits.max_blocks):
                if not partition.is_trivial():
                    yield partition_row(u, partition, candidates)
        return
    edges = graph_edges(instance)
    for w in range(instance.n):
        base = zero_cost_partition(instance, w)
        candidates = ncss_candidates(edges, w)
        for partition in enumerate_coarsenings(base, limits.max_blocks):
            if not partition.is_trivial():
                yield partition_row(w, partition, candidates)


def full_rows(instance, kind, limits=None):
    """Every row of the LP family (within the caps), in a fixed order"""
    if kind in ('ncss-partition', 'cut'):
        yield from all_cut_rows(instance, limits)
    if kind in ('tap-partition', 'ncss-partition'):
        yield from all_partition_rows(instance, kind, limits)


def rescan(instance, kind, x, limits=None):
    """
    Independent exhaustive check of a point against the complete LP, in
    plain rational arithmetic. Above the cut cap the cut family is checked
    by a Stoer-Wagner run on the unscaled point. Returns the first violated
    row or None.
    """
    limits = resolve_limits(limits)
    if kind in ('ncss-partition', 'cut') and instance.n > limits.max_cut_nodes:
        edges = graph_edges(instance)
        value, side = _stoer_wagner_min_cut(instance.n, edges, [Fraction(v) for v in x])
        if value < 2:
            return cut_row(edges, side)
        rows = all_partition_rows(instance, kind, limits) if kind == 'ncss-partition' else []
    else:
        rows = full_rows(instance, kind, limits)
    for row in rows:
        if row.violation(x) > 0:
            return row
    return None
