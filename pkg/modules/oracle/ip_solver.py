"""
Exact integer optima
Cost-ordered branch and bound over the optional edges with feasibility
pruning, plus an independent exhaustive enumeration for cross-checks.
Feasibility always goes through the connectivity predicates.
"""

import logging
from fractions import Fraction

from modules.errors import Infeasible, InstanceTooLarge
from modules.model.instance import NcssInstance
from modules.utils.config import resolve_limits
from modules.utils.connectivity import EdgeSubgraph, is_2ec, is_2nc

logger = logging.getLogger(__name__)

PREDICATES = {'2nc': is_2nc, '2ec': is_2ec}


def _split(instance, connectivity):
    """
    Fixed edges (always present) and optional costed items.

    TAP: the tree is fixed, links are optional.
    2NCSS: zero-cost edges are fixed, positive-cost edges optional.
    """
    if isinstance(instance, NcssInstance):
        fixed = [e.endpoints for e in instance.edges if e.cost == 0]
        optional = [e for e in instance.edges if e.cost > 0]
        connectivity = connectivity or '2nc'
    else:
        fixed = list(instance.tree_edges)
        optional = list(instance.links)
        connectivity = connectivity or instance.target
    if connectivity not in PREDICATES:
        raise ValueError(f"unknown connectivity '{connectivity}'")
    return fixed, optional, PREDICATES[connectivity]


def _checker(instance, fixed, predicate):
    def feasible(items):
        graph = EdgeSubgraph.of(instance.n, fixed + [item.endpoints for item in items])
        return predicate(graph)
    return feasible


def _check_size(optional, limits):
    if len(optional) > limits.max_ip_vars:
        raise InstanceTooLarge(f"{len(optional)} optional variables exceed the cap of {limits.max_ip_vars}")


def solve_ip(instance, connectivity=None, limits=None):
    """
    Minimum-cost feasible set of optional items

    Returns:
        list of Links/Edges (sorted by id), total cost
    """
    limits = resolve_limits(limits)
    fixed, optional, predicate = _split(instance, connectivity)
    _check_size(optional, limits)
    feasible = _checker(instance, fixed, predicate)
    if not feasible(optional):
        raise Infeasible("even the full instance is not feasible")

    order = sorted(optional, key=lambda item: (item.cost, item.link_id))
    best = {'cost': None, 'items': None}
    visited = [0]

    def visit(i, chosen, cost):
        visited[0] += 1
        if best['cost'] is not None and cost >= best['cost']:
            return
        if feasible(chosen):
            best['cost'], best['items'] = cost, list(chosen)
            return
        if i == len(order):
            return
        # adding items never breaks feasibility, so prune hopeless branches
        if not feasible(chosen + order[i:]):
            return
        chosen.append(order[i])
        visit(i + 1, chosen, cost + order[i].cost)
        chosen.pop()
        visit(i + 1, chosen, cost)

    visit(0, [], Fraction(0))
    items = sorted(best['items'], key=lambda item: item.link_id)
    logger.info("IP: optimum %s with %d of %d items (%d nodes)",
                best['cost'], len(items), len(optional), visited[0])
    return items, best['cost']


def brute_force_ip(instance, connectivity=None, limits=None):
    """
    Same optimum by plain enumeration: cost every subset, then test subsets
    in order of (cost, bitmask) until one is feasible.
    """
    limits = resolve_limits(limits)
    fixed, optional, predicate = _split(instance, connectivity)
    _check_size(optional, limits)
    feasible = _checker(instance, fixed, predicate)

    m = len(optional)
    costs = [Fraction(0)] * (1 << m)
    for mask in range(1, 1 << m):
        low = (mask & -mask).bit_length() - 1
        costs[mask] = costs[mask & (mask - 1)] + optional[low].cost
    for mask in sorted(range(1 << m), key=lambda mask: (costs[mask], mask)):
        items = [optional[b] for b in range(m) if mask >> b & 1]
        if feasible(items):
            return sorted(items, key=lambda item: item.link_id), costs[mask]
    raise Infeasible("no subset is feasible")
