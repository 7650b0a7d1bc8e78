"""
Shared fixtures for the test suite
"""

from fractions import Fraction

import pytest

from modules.generators.families import (
    gen_chained,
    gen_ladder_2ec,
    gen_four_thirds_gap,
    gen_star_cycle,
    gen_tight_path,
    gen_triangle,
)
from modules.generators.random_tap import gen_random_tap
from modules.model.instance import scale_costs
from modules.utils.config import OracleLimits

EPS = Fraction(1, 100)


@pytest.fixture
def triangle():
    return gen_triangle()


@pytest.fixture
def tight4():
    return gen_tight_path(4, EPS)


@pytest.fixture
def scaled_tight4():
    # tight path with costs 6, 3, 2 and 6 + 1/100
    return scale_costs(gen_tight_path(4, Fraction(1, 600)), 6)


@pytest.fixture
def star5():
    return gen_star_cycle(5)


@pytest.fixture
def four_thirds():
    return gen_four_thirds_gap()


@pytest.fixture
def ladder():
    return gen_ladder_2ec(3)


@pytest.fixture
def chained():
    return gen_chained(4, 3, EPS)


@pytest.fixture
def limits():
    return OracleLimits()


def random_instances(count, max_n=10, max_lambda=5, density=0.35, seed=0):
    """Seeded random instances with n cycling through 4..max_n"""
    sizes = range(4, max_n + 1)
    for i in range(count):
        n = sizes[i % len(sizes)]
        yield gen_random_tap(n, max_lambda=max_lambda, link_density=density, seed=seed + i)


@pytest.fixture
def write_json(tmp_path):
    """Write a document to a file under tmp_path and return its path"""
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
