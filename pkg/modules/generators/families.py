"""
Instance families
Deterministic generators for the tight path, its chained copies, the
star/cycle family, the 4/3 gap instance, the pendant-ladder 2EC instances and
the triangle, plus the registry the CLI generates from.
"""

import inspect
import logging
from fractions import Fraction

from modules.errors import BadParams, UnknownFamily
from modules.generators.random_tap import gen_random_tap
from modules.model.instance import TapInstance, graph_edges, validate_tap
from modules.model.rationals import to_cost

logger = logging.getLogger(__name__)


def _require(condition, message):
    if not condition:
        raise BadParams(message)


def gen_tight_path(lam, eps):
    """
    Path v1..v_{lam+1} (ids 0..lam), links {v_k, v_k+2} of cost 1/k for
    k = 1..lam-1 and the long link {v1, v_{lam+1}} of cost 1 + eps.

    For lam = 2 the long link would be parallel to the only short link and
    is left out (the cheaper of two parallel links is kept).
    """
    _require(isinstance(lam, int) and lam >= 2, f"lambda must be an integer >= 2, got {lam}")
    eps = Fraction(eps)
    _require(eps > 0, f"eps must be positive, got {eps}")
    tree = [(i, i + 1) for i in range(lam)]
    links = [(k - 1, k + 1, Fraction(1, k)) for k in range(1, lam)]
    if lam > 2:
        links.append((0, lam, 1 + eps))
    labels = [f"v{i + 1}" for i in range(lam + 1)]
    return TapInstance.build(lam + 1, tree, links, labels=labels)


def gen_chained(lam, k, eps):
    """
    k copies of the tight path joined by tree edges v1(i) - v1(i+1) and
    zero-cost links v2(i) - v2(i+1)
    """
    _require(isinstance(lam, int) and lam >= 3, f"lambda must be an integer >= 3, got {lam}")
    _require(isinstance(k, int) and k >= 1, f"k must be a positive integer, got {k}")
    copy = gen_tight_path(lam, eps)
    size = copy.n
    tree, links, labels = [], [], []
    for i in range(k):
        offset = i * size
        tree += [(u + offset, v + offset) for u, v in copy.tree_edges]
        links += [(l.u + offset, l.v + offset, l.cost) for l in copy.links]
        labels += [f"{name}^{i + 1}" for name in copy.labels]
    for i in range(k - 1):
        tree.append((i * size, (i + 1) * size))
        links.append((i * size + 1, (i + 1) * size + 1, Fraction(0)))
    return TapInstance.build(k * size, tree, links, labels=labels)


def gen_star_cycle(n):
    """Star with center 0 and leaves 1..n-1; unit links form a cycle on the leaves"""
    _require(isinstance(n, int) and n >= 4, f"n must be an integer >= 4, got {n}")
    tree = [(0, i) for i in range(1, n)]
    links = [(i, i + 1, 1) for i in range(1, n - 1)] + [(1, n - 1, 1)]
    return TapInstance.build(n, tree, links, labels=['c'] + [f"l{i}" for i in range(1, n)])


def gen_four_thirds_gap():
    """
    Root r joined to v1, v2, v3; each vi has two leaves pi and qi; unit links
    form the triangles p1p2p3 and q1q2q3
    """
    r, v, p, q = 0, [1, 2, 3], [4, 5, 6], [7, 8, 9]
    tree = [(r, vi) for vi in v] + [(v[i], p[i]) for i in range(3)] + [(v[i], q[i]) for i in range(3)]
    links = []
    for leaves in (p, q):
        links += [(leaves[0], leaves[1], 1), (leaves[1], leaves[2], 1), (leaves[0], leaves[2], 1)]
    labels = ['r', 'v1', 'v2', 'v3', 'p1', 'p2', 'p3', 'q1', 'q2', 'q3']
    return TapInstance.build(10, tree, links, labels=labels)


def gen_ladder_2ec(k=3):
    """
    Path a0..a_{k+1} with pendant leaves b_i on a_i (i = 1..k) and unit
    links a0b1, b_i b_{i+1}, b_k a_{k+1}, b_i a_{i+2}, a0a2. Read with
    2-edge-connectivity semantics.
    """
    _require(isinstance(k, int) and k >= 2, f"k must be an integer >= 2, got {k}")
    a = list(range(k + 2))
    b = [None] + [k + 1 + i for i in range(1, k + 1)]
    tree = [(a[i], a[i + 1]) for i in range(k + 1)] + [(a[i], b[i]) for i in range(1, k + 1)]
    links = [(a[0], b[1], 1)]
    links += [(b[i], b[i + 1], 1) for i in range(1, k)]
    links.append((b[k], a[k + 1], 1))
    links += [(b[i], a[i + 2], 1) for i in range(1, k)]
    links.append((a[0], a[2], 1))
    labels = [f"a{i}" for i in range(k + 2)] + [f"b{i}" for i in range(1, k + 1)]
    return TapInstance.build(2 * k + 2, tree, links, target='2ec', labels=labels)


def ladder_third_point(instance):
    """
    The half-integral style point of the k = 3 instance: 1 on tree edges,
    1/3 or 2/3 on the links, in graph_edges order. Cost 3.
    """
    if instance != gen_ladder_2ec(3):
        raise BadParams("this point is defined for the k = 3 instance only")
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    values = [third, third, third, two_thirds, third, third, two_thirds]
    return [Fraction(1)] * len(instance.tree_edges) + values


def gen_triangle(cost=5):
    """Path 0-1-2 and the single link {0, 2}"""
    return TapInstance.build(3, [(0, 1), (1, 2)], [(0, 2, to_cost(cost))])


FAMILIES = {
    'tight-path': (gen_tight_path, ('lam', 'eps')),
    'chained': (gen_chained, ('lam', 'k', 'eps')),
    'star-cycle': (gen_star_cycle, ('n',)),
    'four-thirds-gap': (gen_four_thirds_gap, ()),
    'ladder-2ec': (gen_ladder_2ec, ('k',)),
    'triangle': (gen_triangle, ('cost',)),
    'random': (gen_random_tap, ('n', 'max_lambda', 'link_density', 'cost_range', 'seed', 'denominator')),
}

# older family names
ALIASES = {
    'fig3-gap': 'four-thirds-gap',
    'ckkk': 'ladder-2ec',
}


def get_supported_families():
    """
    Returns the generator families and their parameters
    """
    return {name: params for name, (_, params) in FAMILIES.items()}


def generate_family(name, **params):
    """
    Build a family instance from keyword parameters; parameters the family
    does not take are ignored, missing ones use the generator's default.
    """
    name = ALIASES.get(name, name)
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown family '{name}'; known: {', '.join(sorted(FAMILIES))}")
    func, accepted = FAMILIES[name]
    kwargs = {key: value for key, value in params.items() if key in accepted and value is not None}
    signature = inspect.signature(func).parameters
    missing = [key for key in accepted
               if key not in kwargs and signature[key].default is inspect.Parameter.empty]
    if missing:
        raise BadParams(f"family '{name}' needs {', '.join(missing)}")
    try:
        instance = func(**kwargs)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise BadParams(f"bad parameters for '{name}': {e}")
    validate_tap(instance)
    logger.info("generated %s: n=%d, %d links, %d edges in total",
                name, instance.n, len(instance.links), len(graph_edges(instance)))
    return instance
