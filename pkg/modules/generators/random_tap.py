"""
Seeded random 2NC-TAP instances
A uniform random spanning tree (Aldous-Broder walk on the complete graph)
plus links sampled among node pairs whose tree path is short enough.
"""

import logging
from fractions import Fraction

import numpy as np

from modules.errors import BadParams, Infeasible
from modules.model.instance import TapInstance, tree_path
from modules.utils.config import resolve_limits
from modules.utils.connectivity import augmented_graph, is_2nc

logger = logging.getLogger(__name__)


def random_spanning_tree(n, rng):
    """Aldous-Broder: the first-entrance edges of a random walk on K_n"""
    current = int(rng.integers(n))
    visited = {current}
    edges = []
    while len(visited) < n:
        step = int(rng.integers(n - 1))
        nxt = step if step < current else step + 1
        if nxt not in visited:
            visited.add(nxt)
            edges.append((min(current, nxt), max(current, nxt)))
        current = nxt
    return edges


def candidate_pairs(tree_instance, max_lambda):
    """Non-tree pairs whose tree path has at most max_lambda edges"""
    tree = set(tree_instance.tree_edges)
    n = tree_instance.n
    return [
        (u, v) for u in range(n) for v in range(u + 1, n)
        if (u, v) not in tree and len(tree_path(tree_instance, (u, v))) <= max_lambda
    ]


def gen_random_tap(n, max_lambda=3, link_density=0.5, cost_range=(1, 10), seed=0,
                   denominator=1, limits=None):
    """
    Random instance whose full graph T + L is 2-node connected

    Costs are integers drawn from cost_range (inclusive) divided by
    `denominator`. Tree and links are redrawn until the graph is 2NC; after
    `limits.random_attempts` failures Infeasible is raised.
    """
    limits = resolve_limits(limits)
    if not isinstance(n, int) or n < 3:
        raise BadParams(f"n must be an integer >= 3, got {n}")
    if not isinstance(max_lambda, int) or max_lambda < 2:
        raise BadParams(f"max_lambda must be an integer >= 2, got {max_lambda}")
    if not 0 < link_density <= 1:
        raise BadParams(f"link_density must lie in (0, 1], got {link_density}")
    low, high = (int(c) for c in cost_range)
    if low < 0 or high < low:
        raise BadParams(f"cost_range must satisfy 0 <= low <= high, got {cost_range}")
    if not isinstance(denominator, int) or denominator < 1:
        raise BadParams(f"denominator must be a positive integer, got {denominator}")

    rng = np.random.default_rng(seed)
    for attempt in range(1, limits.random_attempts + 1):
        tree = random_spanning_tree(n, rng)
        bare = TapInstance.build(n, tree, [])
        pairs = candidate_pairs(bare, max_lambda)
        chosen = [pair for pair, draw in zip(pairs, rng.random(len(pairs))) if draw < link_density]
        costs = rng.integers(low, high + 1, size=len(chosen))
        links = [(u, v, Fraction(int(c), denominator)) for (u, v), c in zip(chosen, costs)]
        instance = TapInstance.build(n, tree, links)
        if chosen and is_2nc(augmented_graph(instance, instance.links)):
            logger.info("random instance (seed %s): n=%d, %d links, attempt %d",
                        seed, n, len(links), attempt)
            return instance
    raise Infeasible(f"no 2NC-augmentable instance after {limits.random_attempts} attempts "
                     f"(n={n}, max_lambda={max_lambda}, density={link_density})")
