"""
Inflation
Replaces every node u of a 2-edge-connectivity instance by a zero-cost
clique on deg(u) nodes, one per incident edge, turning it into a 2NCSS
instance with the same integrality ratio. Solutions map across in both
directions.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from modules.errors import DegreeTooSmall, InfeasibleInput, SchemaError
from modules.model.instance import NcssInstance, graph_edges, validate_ncss
from modules.model.rationals import fmt
from modules.oracle.ip_solver import solve_ip
from modules.oracle.lp_solver import solve_lp
from modules.oracle.separation import separate_cuts, separate_ncss

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InflationMap:
    """
    cliques[u]: new nodes replacing u, one per incident edge (sorted edge order)
    edge_map[i]: index in the inflated instance of the image of edge i
    """
    cliques: dict
    edge_map: dict
    original_n: int
    original_edges: int

    def to_document(self):
        return {
            'original_n': self.original_n,
            'original_edges': self.original_edges,
            'cliques': {str(u): list(nodes) for u, nodes in sorted(self.cliques.items())},
            'edge_map': {str(i): j for i, j in sorted(self.edge_map.items())},
        }

    @classmethod
    def from_document(cls, doc):
        try:
            return cls(
                cliques={int(u): tuple(nodes) for u, nodes in doc['cliques'].items()},
                edge_map={int(i): int(j) for i, j in doc['edge_map'].items()},
                original_n=int(doc['original_n']),
                original_edges=int(doc['original_edges']),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise SchemaError(f"malformed inflation map: {e}", field='inflation')


def inflate(instance):
    """
    Build G' from a TAP instance (tree edges cost 0) or a 2NCSS instance

    Returns:
        NcssInstance, InflationMap
    """
    edges = graph_edges(instance)
    incident = {u: [] for u in range(instance.n)}
    for i, e in enumerate(edges):
        incident[e.u].append(i)
        incident[e.v].append(i)
    low = [u for u, inc in incident.items() if len(inc) < 2]
    if low:
        raise DegreeTooSmall(f"nodes {low} have degree < 2; their cliques would be too small")

    names = list(instance.labels) if instance.labels else [str(u) for u in range(instance.n)]
    node_of, cliques, labels = {}, {}, []
    for u in range(instance.n):
        clique = []
        for i in incident[u]:
            e = edges[i]
            node_of[(u, i)] = len(labels)
            clique.append(len(labels))
            labels.append(f"{names[u]}>{names[e.v if e.u == u else e.u]}")
        cliques[u] = tuple(clique)

    new_edges = [(node_of[(e.u, i)], node_of[(e.v, i)], e.cost) for i, e in enumerate(edges)]
    for u in range(instance.n):
        new_edges += [(a, b, Fraction(0)) for a, b in combinations(cliques[u], 2)]

    inflated = NcssInstance.build(len(labels), new_edges, labels=labels)
    validate_ncss(inflated)
    mapping = InflationMap(
        cliques=cliques,
        edge_map={i: i for i in range(len(edges))},
        original_n=instance.n,
        original_edges=len(edges),
    )
    logger.info("inflated n=%d, %d edges into n=%d, %d edges",
                instance.n, len(edges), inflated.n, len(inflated.edges))
    return inflated, mapping


def _check_box(x, what):
    bad = [j for j, v in enumerate(x) if not 0 <= v <= 1]
    if bad:
        raise InfeasibleInput(f"{what} leaves [0, 1] at coordinates {bad}")


def inflate_solution(instance, inflated, mapping, x, limits=None):
    """
    x on the edges of G (cut-LP feasible) -> x' on G': x on the images of
    the edges, 1 on every clique edge. Cost is unchanged.
    """
    x = [Fraction(v) for v in x]
    if len(x) != mapping.original_edges:
        raise InfeasibleInput(f"expected {mapping.original_edges} values, got {len(x)}")
    _check_box(x, 'x')
    violated = separate_cuts(instance, x, limits)
    if violated is not None:
        raise InfeasibleInput(f"x violates {violated.label}")
    image = [Fraction(1)] * len(inflated.edges)
    for i, j in mapping.edge_map.items():
        image[j] = x[i]
    return image


def deflate_solution(inflated, mapping, x_inflated, limits=None):
    """x' on G' (partition-LP feasible) -> its restriction to the images of the edges of G"""
    x_inflated = [Fraction(v) for v in x_inflated]
    if len(x_inflated) != len(inflated.edges):
        raise InfeasibleInput(f"expected {len(inflated.edges)} values, got {len(x_inflated)}")
    _check_box(x_inflated, "x'")
    violated = separate_ncss(inflated, x_inflated, limits)
    if violated is not None:
        raise InfeasibleInput(f"x' violates {violated.label}")
    return [x_inflated[mapping.edge_map[i]] for i in range(mapping.original_edges)]


def integrality_ratios(instance, limits=None):
    """
    IP / cut-LP on the input read with 2-edge connectivity, and
    2NC IP / partition LP on its inflation
    """
    inflated, _ = inflate(instance)
    lp = solve_lp(instance, 'cut', limits).objective
    _, ip = solve_ip(instance, connectivity='2ec', limits=limits)
    lp_inflated = solve_lp(inflated, 'ncss-partition', limits).objective
    _, ip_inflated = solve_ip(inflated, connectivity='2nc', limits=limits)
    result = {
        'lp': lp,
        'ip': ip,
        'ratio': ip / lp if lp else None,
        'inflated_n': inflated.n,
        'inflated_lp': lp_inflated,
        'inflated_ip': ip_inflated,
        'inflated_ratio': ip_inflated / lp_inflated if lp_inflated else None,
    }
    logger.info("integrality ratios: %s vs %s",
                fmt(result['ratio']) if result['ratio'] is not None else '-',
                fmt(result['inflated_ratio']) if result['inflated_ratio'] is not None else '-')
    return result
