"""
Instance families, random instances and inflation
"""

from fractions import Fraction

import pytest

from conftest import EPS
from modules.errors import (
    BadParams,
    DegreeTooSmall,
    Infeasible,
    InfeasibleInput,
    NegativeCost,
    SchemaError,
    UnknownFamily,
)
from modules.generators.families import (
    FAMILIES,
    ladder_third_point,
    gen_ladder_2ec,
    gen_tight_path,
    generate_family,
    get_supported_families,
)
from modules.generators.inflation import (
    InflationMap,
    deflate_solution,
    inflate,
    inflate_solution,
)
from modules.generators.random_tap import candidate_pairs, gen_random_tap
from modules.model.instance import (
    TapInstance,
    graph_edges,
    nonleaf_nodes,
    scale_costs,
    tree_diameter,
    tree_lambda,
    validate_ncss,
)
from modules.parsers.instance_parser import instance_digest, parse_instance, serialize_instance
from modules.utils.config import OracleLimits
from modules.utils.connectivity import augmented_graph, is_2nc


def test_tight_path_shape():
    instance = generate_family('tight-path', lam=4, eps=EPS)
    assert instance.n == 5
    assert tree_lambda(instance) == 4
    assert [l.cost for l in instance.links] == [1, Fraction(1, 2), Fraction(1, 3), 1 + EPS]
    assert instance.labels[0] == 'v1'


def test_tight_path_lambda_two_has_one_link():
    instance = gen_tight_path(2, EPS)
    assert len(instance.links) == 1
    assert tree_lambda(instance) == 2


def test_scaled_tight_path(scaled_tight4):
    assert [l.cost for l in scaled_tight4.links] == [6, 3, 2, 6 + Fraction(1, 100)]


def test_four_thirds_gap_instance():
    instance = generate_family('four-thirds-gap')
    assert instance.n == 10
    assert len(instance.links) == 6
    assert nonleaf_nodes(instance) == [0, 1, 2, 3]


def test_star_cycle():
    instance = generate_family('star-cycle', n=5)
    assert instance.n == 5
    assert len(instance.links) == 4
    assert tree_lambda(instance) == 2


def test_chained(chained):
    assert chained.n == 15
    assert tree_lambda(chained) == 4
    assert tree_diameter(chained) >= 4
    assert sum(1 for l in chained.links if l.cost == 0) == 2


def test_ladder(ladder):
    assert ladder.target == '2ec'
    assert ladder.n == 8
    assert len(ladder.links) == 7
    assert len(ladder_third_point(ladder)) == len(graph_edges(ladder))
    with pytest.raises(BadParams):
        ladder_third_point(gen_ladder_2ec(4))


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        generate_family('trades')


@pytest.mark.parametrize('name, params', [
    ('tight-path', {'lam': 1, 'eps': EPS}),
    ('tight-path', {'lam': 4, 'eps': 0}),
    ('tight-path', {'lam': 4}),
    ('chained', {'lam': 2, 'k': 3, 'eps': EPS}),
    ('star-cycle', {'n': 3}),
    ('random', {'n': 2}),
])
def test_bad_params(name, params):
    with pytest.raises(BadParams):
        generate_family(name, **params)


FAMILY_PARAMS = {
    'tight-path': {'lam': 5, 'eps': EPS},
    'chained': {'lam': 3, 'k': 2, 'eps': EPS},
    'star-cycle': {'n': 6},
    'random': {'n': 9, 'seed': 3},
}


@pytest.mark.parametrize('name', sorted(FAMILIES))
def test_family_serialization_round_trip(name):
    instance = generate_family(name, **FAMILY_PARAMS.get(name, {}))
    raw = serialize_instance(instance)
    assert parse_instance(raw) == instance
    assert serialize_instance(parse_instance(raw)) == raw


@pytest.mark.parametrize('alias, name', [('fig3-gap', 'four-thirds-gap'), ('ckkk', 'ladder-2ec')])
def test_family_aliases(alias, name):
    assert generate_family(alias) == generate_family(name)


def test_supported_families():
    families = get_supported_families()
    assert families['chained'] == ('lam', 'k', 'eps')
    assert 'random' in families


def test_scale_costs_rejects_negative(triangle):
    with pytest.raises(NegativeCost):
        scale_costs(triangle, -1)


# Random instances

def test_random_is_seeded():
    a = gen_random_tap(8, max_lambda=4, link_density=0.4, seed=3)
    b = gen_random_tap(8, max_lambda=4, link_density=0.4, seed=3)
    c = gen_random_tap(8, max_lambda=4, link_density=0.4, seed=4)
    assert instance_digest(a) == instance_digest(b)
    assert instance_digest(a) != instance_digest(c)


def test_random_respects_lambda_and_connectivity():
    for seed in range(10):
        instance = gen_random_tap(9, max_lambda=3, link_density=0.5, seed=seed)
        assert tree_lambda(instance) <= 3
        assert is_2nc(augmented_graph(instance, instance.links))


def test_random_rational_costs():
    instance = gen_random_tap(6, cost_range=(1, 5), denominator=4, seed=1)
    assert all(l.cost.denominator in (1, 2, 4) for l in instance.links)
    assert all(Fraction(1, 4) <= l.cost <= Fraction(5, 4) for l in instance.links)


def test_random_gives_up():
    # one link per hundred candidates is far too few for a 12-node instance
    with pytest.raises(Infeasible):
        gen_random_tap(12, max_lambda=2, link_density=0.01, seed=0, limits=OracleLimits(random_attempts=2))


def test_candidate_pairs_exclude_tree_edges():
    bare = TapInstance.build(4, [(0, 1), (1, 2), (2, 3)], [])
    assert candidate_pairs(bare, 2) == [(0, 2), (1, 3)]


# Inflation

def test_inflate_triangle(triangle):
    inflated, mapping = inflate(triangle)
    assert inflated.n == 6
    assert len(inflated.edges) == 6
    assert validate_ncss(inflated)
    assert sorted(len(c) for c in mapping.cliques.values()) == [2, 2, 2]
    assert inflated.edges[2].cost == 5
    assert sum(1 for e in inflated.edges if e.cost == 0) == 5


def test_inflate_ladder(ladder):
    inflated, mapping = inflate(ladder)
    degrees = {u: sum(u in e.endpoints for e in graph_edges(ladder)) for u in range(ladder.n)}
    assert inflated.n == sum(degrees.values()) == 28
    assert mapping.edge_map == {i: i for i in range(len(graph_edges(ladder)))}
    assert all(len(mapping.cliques[u]) == degrees[u] for u in range(ladder.n))
    original_costs = [e.cost for e in graph_edges(ladder)]
    assert [inflated.edges[mapping.edge_map[i]].cost for i in range(len(original_costs))] == original_costs


def test_inflate_rejects_low_degree():
    instance = TapInstance.build(4, [(0, 1), (1, 2), (2, 3)], [(0, 2, 1)])
    with pytest.raises(DegreeTooSmall):
        inflate(instance)


def test_inflation_map_document(triangle):
    _, mapping = inflate(triangle)
    assert InflationMap.from_document(mapping.to_document()) == mapping
    with pytest.raises(SchemaError):
        InflationMap.from_document({'cliques': {}})


def test_inflate_solution_checks_input(triangle):
    inflated, mapping = inflate(triangle)
    with pytest.raises(InfeasibleInput):
        inflate_solution(triangle, inflated, mapping, [1, 1, Fraction(1, 2)])
    with pytest.raises(InfeasibleInput):
        inflate_solution(triangle, inflated, mapping, [1, 1])
    with pytest.raises(InfeasibleInput):
        deflate_solution(inflated, mapping, [2] * len(inflated.edges))
