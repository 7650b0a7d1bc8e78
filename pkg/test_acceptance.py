"""
End-to-end checks on the named families and on seeded random batches
"""

from fractions import Fraction

import pytest

from conftest import EPS, random_instances
from modules.analysis.dual_certificate import link_load, ratio_certificate
from modules.analysis.greedy_solver import greedy_solve
from modules.generators.families import (
    ladder_third_point,
    gen_chained,
    gen_four_thirds_gap,
    gen_star_cycle,
    gen_tight_path,
)
from modules.generators.inflation import deflate_solution, inflate, inflate_solution, integrality_ratios
from modules.generators.random_tap import gen_random_tap
from modules.model.instance import graph_edges, tree_diameter, tree_lambda
from modules.model.rationals import harmonic
from modules.oracle.ip_solver import brute_force_ip, solve_ip
from modules.oracle.lp_solver import check_cut_remark, check_extreme_point_bounds, solve_lp
from modules.oracle.separation import separate_cuts, separate_ncss, separate_tap, set_pairs_point
from modules.utils.connectivity import is_feasible_augmentation


@pytest.mark.parametrize('lam', range(2, 9))
def test_tight_path(lam):
    instance = gen_tight_path(lam, EPS)
    _, trace = greedy_solve(instance)
    assert trace.cost == harmonic(lam - 1)
    _, opt = solve_ip(instance)
    if lam == 2:
        # the only link is the short one
        assert opt == 1
        return
    assert opt == 1 + EPS
    ratio = trace.cost / opt
    assert ratio == harmonic(lam - 1) / (1 + EPS)
    assert ratio > harmonic(lam - 1) * (1 - EPS)


@pytest.mark.parametrize('lam', [3, 4])
def test_tight_path_gap_within_one_fiftieth(lam):
    instance = gen_tight_path(lam, EPS)
    _, trace = greedy_solve(instance)
    assert trace.cost / solve_ip(instance)[1] > harmonic(lam - 1) - Fraction(1, 50)


def test_chained_family():
    instance = gen_chained(4, 3, EPS)
    picked, trace = greedy_solve(instance)
    long_links = {l.link_id for l in instance.links if l.cost == 1 + EPS}
    assert len(long_links) == 3
    assert {l.link_id for l in picked} == {l.link_id for l in instance.links} - long_links
    assert solve_ip(instance)[1] == 3 * (1 + EPS)
    assert tree_lambda(instance) == 4
    assert tree_diameter(instance) >= 4


@pytest.mark.parametrize('n', range(4, 10))
def test_star_cycle(n):
    instance = gen_star_cycle(n)
    _, trace = greedy_solve(instance)
    assert trace.cost == n - 2
    assert solve_ip(instance)[1] == n - 2
    assert solve_lp(instance).objective == n - 2


def test_four_thirds_gap():
    instance = gen_four_thirds_gap()
    lp = solve_lp(instance).objective
    _, ip = solve_ip(instance)
    assert (lp, ip) == (3, 4)
    assert ip / lp == Fraction(4, 3)
    assert separate_tap(instance, set_pairs_point(instance)) is None


def test_ladder_and_inflation(ladder):
    result = integrality_ratios(ladder)
    assert result['lp'] == result['inflated_lp'] == Fraction(23, 8)
    assert result['ip'] == result['inflated_ip'] == 4
    assert result['ratio'] == result['inflated_ratio'] == Fraction(32, 23)


def test_certificate_suite():
    for i, instance in enumerate(random_instances(200, max_n=10, max_lambda=5, seed=100)):
        result = ratio_certificate(instance)
        cert = result.certificate
        h = harmonic(tree_lambda(instance) - 1)
        assert all(s.y >= 0 for snaps in cert.nodes.values() for s in snaps)
        assert all(link_load(cert, l) <= h * l.cost for l in instance.links)
        assert result.passed, result.checks
        _, ip = solve_ip(instance)
        assert result.lower_bound <= ip <= result.greedy_cost
        if i % 10 == 0:
            lp = solve_lp(instance).objective
            assert result.lower_bound <= lp <= ip
            assert result.greedy_cost <= h * lp


def test_extreme_points_and_cut_remark():
    for instance in random_instances(50, max_n=8, max_lambda=4, seed=500):
        solution = solve_lp(instance)
        assert check_extreme_point_bounds(instance, solution)
        assert check_cut_remark(instance, solution.x)


@pytest.mark.parametrize('name', ['triangle', 'ladder'])
def test_solution_maps(name, request):
    instance = request.getfixturevalue(name)
    if name == 'ladder':
        x = ladder_third_point(instance)
    else:
        x = list(solve_lp(instance, 'cut').x)
    edges = graph_edges(instance)
    inflated, mapping = inflate(instance)

    image = inflate_solution(instance, inflated, mapping, x)
    assert sum(e.cost * v for e, v in zip(inflated.edges, image)) == sum(e.cost * v for e, v in zip(edges, x))
    assert separate_ncss(inflated, image) is None

    back = deflate_solution(inflated, mapping, image)
    assert back == list(x)
    assert separate_cuts(instance, back) is None


def test_ip_cross_check():
    checked, seed = 0, 0
    while checked < 100:
        instance = gen_random_tap(4 + seed % 5, max_lambda=4, link_density=0.4, seed=seed)
        seed += 1
        if len(instance.links) > 12:
            continue
        picked, _ = greedy_solve(instance)
        assert is_feasible_augmentation(instance, picked)
        assert solve_ip(instance)[1] == brute_force_ip(instance)[1]
        checked += 1
