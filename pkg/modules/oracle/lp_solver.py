"""
Lazy-constraint LP driver
Solve the pooled model exactly, separate, add the violated rows, repeat;
after convergence an independent exhaustive rescan confirms the point is
feasible for the complete LP.
"""

import logging
import time
from fractions import Fraction

from modules.errors import Infeasible, InstanceTooLarge, InternalError
from modules.model.instance import TapInstance, graph_edges
from modules.oracle.lp_model import LpSolution, build_model, default_kind
from modules.oracle.separation import (
    initial_rows,
    min_cut,
    rescan,
    violated_rows,
)
from modules.oracle.simplex import DualDictionary, LPResult, is_basic_point
from modules.utils.config import resolve_limits

logger = logging.getLogger(__name__)


def solve_lp(instance, kind=None, limits=None):
    """
    Optimal vertex of the chosen LP family

    kind: 'tap-partition' (TAP instances with target 2nc), 'cut' (TAP
    instances with target 2ec, or any graph), 'ncss-partition' (2NCSS);
    defaults by instance type and target.
    """
    limits = resolve_limits(limits)
    kind = kind or default_kind(instance)
    model = build_model(instance, kind)
    started = time.perf_counter()

    dictionary = DualDictionary(model.costs)
    for j, bound in enumerate(model.upper):
        if bound is not None:
            dictionary.add_row({j: -1}, -bound)
    for row in initial_rows(instance, kind):
        if model.add_row(row):
            dictionary.add_row(row.as_dict(), row.rhs)

    rounds = 0
    while True:
        rounds += 1
        if rounds > limits.max_lp_rounds:
            raise InstanceTooLarge(f"no convergence within {limits.max_lp_rounds} rounds")
        if dictionary.solve() is LPResult.INFEASIBLE:
            raise Infeasible(f"the {kind} LP has no feasible point")
        x = dictionary.primal_solution()
        added = 0
        for row in violated_rows(instance, kind, x, limits):
            if not model.add_row(row):
                raise InternalError(f"pooled row {row.label} is violated by the simplex point")
            dictionary.add_row(row.as_dict(), row.rhs)
            added += 1
        logger.debug("round %d: value %s, %d rows added", rounds, dictionary.value(), added)
        if not added:
            break

    missed = rescan(instance, kind, x, limits)
    if missed is not None:
        raise InternalError(f"separation missed the violated row {missed.label}")
    if not model.satisfies_pool(x):
        raise InternalError("simplex point violates a pooled row")

    bound_rows = [({j: -1}, -u) for j, u in enumerate(model.upper) if u is not None]
    pooled = [(row.as_dict(), row.rhs) for row in model.rows]
    solution = LpSolution(
        x=tuple(x),
        objective=model.objective(x),
        is_vertex=is_basic_point(x, pooled + bound_rows),
        rounds=rounds,
        model=model,
    )
    if solution.objective != dictionary.value():
        raise InternalError("primal and dual objective values differ")
    logger.info("%s LP: value %s after %d rounds, %d rows, %d pivots (%.2fs)",
                kind, solution.objective, rounds, len(model.rows), dictionary.pivots,
                time.perf_counter() - started)
    return solution


def check_extreme_point_bounds(instance, solution=None, limits=None):
    """
    True iff the optimal vertex of the TAP partition LP (which carries no
    x <= 1 bound) has every coordinate at most 1.
    """
    if solution is None:
        solution = solve_lp(instance, 'tap-partition', limits)
    if not solution.is_vertex:
        raise InternalError("LP solution is not a vertex")
    return all(v <= 1 for v in solution.x)


def extend_by_tree(instance, x):
    """A link vector extended by 1 on every tree edge, in graph_edges order"""
    return [Fraction(1)] * len(instance.tree_edges) + [Fraction(v) for v in x]


def check_cut_remark(instance, x, limits=None):
    """
    Extend a partition-LP point by 1 on tree edges and check every cut
    x(delta(S)) >= 2 by enumeration.
    """
    if not isinstance(instance, TapInstance):
        raise ValueError("the cut check applies to TAP instances")
    value, _ = min_cut(instance.n, graph_edges(instance), extend_by_tree(instance, x),
                       limits, method='enumerate')
    return value >= 2
