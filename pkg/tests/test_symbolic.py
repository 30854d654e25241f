import math
import random

import pytest
from hypothesis import given, strategies as st

from ietlab import errors
from ietlab.iet import validate
from ietlab.numbers import golden_alpha
from ietlab.symbolic import (ForbiddenPairs, Ray, block_complexity,
                             block_stats, code_orbit, covering_index,
                             is_admissible, path_distance,
                             surface_parameters, transitivity_index,
                             uniform_distribution_test, uniformity_ratio)


def golden_ray(steps=2000):
    a = float(golden_alpha())
    spec = validate((1 - a, a), (2, 1), mode="float")
    return code_orbit(spec, 0.1, steps)


def test_code_orbit_symbols_match_partition():
    ray = golden_ray(100)
    assert len(ray) == 101
    assert set(ray.symbols) == {1, 2}


def test_path_distance_basic():
    x = Ray((1, 2, 1, 1))
    y = Ray((1, 2, 2, 1))
    assert path_distance(x, y) == 0.25
    assert path_distance(x, Ray((2,))) == 1.0
    # agreement over the whole common prefix: 0.0 is only a lower bound
    assert path_distance(x, Ray((1, 2))) == 0.0
    assert path_distance(x, x) == 0.0


# equal lengths: on truncated rays 0.0 only means "agree so far", and the
# ultrametric inequality is claimed for genuine infinite-path prefixes
@given(st.lists(st.integers(1, 2), min_size=12, max_size=12),
       st.lists(st.integers(1, 2), min_size=12, max_size=12),
       st.lists(st.integers(1, 2), min_size=12, max_size=12))
def test_path_distance_ultrametric(a, b, c):
    x, y, z = Ray(tuple(a)), Ray(tuple(b)), Ray(tuple(c))
    assert path_distance(x, z) <= max(path_distance(x, y),
                                      path_distance(y, z))


def test_is_admissible():
    forbidden = ForbiddenPairs(frozenset({(1, 1)}))
    assert is_admissible((1, 2, 1, 2), forbidden)
    assert not is_admissible((2, 1, 1), forbidden)
    assert is_admissible((1,), forbidden)


def test_block_complexity_sturmian():
    ray = golden_ray()
    for n in range(1, 9):
        assert block_complexity(ray, n) == n + 1


def test_block_complexity_needs_prefix():
    with pytest.raises(errors.PrefixTooShort):
        block_complexity(Ray((1, 2)), 5)


def test_transitivity_and_covering_indices():
    ray = Ray((1, 2, 1, 2, 1, 2))
    assert transitivity_index(ray, 2) == 3
    assert covering_index(ray, 2) == 3
    # indices respect theta >= p + N - 1
    p = block_complexity(ray, 2)
    assert covering_index(ray, 2) >= p + 1


def test_index_ordering_on_golden():
    ray = golden_ray()
    for n in range(1, 9):
        p = block_complexity(ray, n)
        phi = transitivity_index(ray, n)
        theta = covering_index(ray, n)
        assert phi >= theta >= p + n - 1


def test_uniform_distribution_test():
    # constant ray: phi(1) = 1 = p(1) * 1
    assert uniform_distribution_test(Ray((1,) * 10), 1)
    # 1,1,2 repeated: phi(1) = 3 > p(1) * 1 = 2
    assert not uniform_distribution_test(Ray((1, 1, 2) * 5), 1)


def test_uniformity_ratio_bounded_by_one_from_below():
    ray = golden_ray(500)
    for r in uniformity_ratio(ray, 6):
        assert r >= 1.0


def test_block_stats_fields():
    s = block_stats(golden_ray(300), 3)
    assert s.N == 3
    assert s.distinct_blocks == 4
    assert s.transitivity >= s.covering


def test_surface_parameters():
    assert surface_parameters(2) == [(1, 1)]
    assert surface_parameters(4) == [(1, 3), (2, 1)]
    assert surface_parameters(5) == [(1, 4), (2, 2)]
    with pytest.raises(ValueError):
        surface_parameters(1)


def test_surface_parameters_satisfy_relation():
    for n in range(2, 12):
        for g, m in surface_parameters(n):
            assert 2 * g + m - 1 == n
            assert 2 - 2 * g - m < 0
