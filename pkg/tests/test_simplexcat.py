import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from codescent.simplexcat import (
    MonotoneMap,
    compose,
    enumerate_maps,
    exact_cartesian_squares,
    identity,
    inclusion,
    is_exact_cartesian,
)


@pytest.mark.parametrize("m,n", [(0, 0), (0, 3), (1, 1), (2, 3), (3, 2), (3, 4), (4, 4)])
def test_map_counts(m, n):
    expected = 1 if m == 0 else (0 if n == 0 else comb(m + n - 1, m))
    maps = enumerate_maps(m, n)
    assert len(maps) == expected == len(set(maps))


def test_rejects_bad_maps():
    with pytest.raises(ValueError):
        MonotoneMap(2, 3, (3, 1))
    with pytest.raises(ValueError):
        MonotoneMap(2, 3, (1, 4))
    with pytest.raises(ValueError):
        compose(inclusion(3, 1), inclusion(3, 2))


maps_2_3 = st.sampled_from(enumerate_maps(2, 3))
maps_3_3 = st.sampled_from(enumerate_maps(3, 3))
maps_3_4 = st.sampled_from(enumerate_maps(3, 4))


@given(maps_2_3, maps_3_3, maps_3_4)
def test_composition_is_associative(f, g, h):
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(identity(3), f) == f == compose(f, identity(2))


def _brute_force_squares(top, low=1):
    found = set()
    for r, m, n in itertools.product(range(low, top + 1), repeat=3):
        t = m + n - r
        if not low <= t <= top or t < 1:
            continue
        for f, g, f2, g2 in itertools.product(enumerate_maps(r, m), enumerate_maps(r, n),
                                              enumerate_maps(n, t), enumerate_maps(m, t)):
            if compose(g2, f) == compose(f2, g) and is_exact_cartesian(f, g, f2, g2):
                found.add((f, g, f2, g2))
    return found


@pytest.mark.parametrize("top,low", [(2, 1), (3, 1), (3, 0)])
def test_square_enumeration_matches_brute_force(top, low):
    assert set(exact_cartesian_squares(top, min_object=low)) == _brute_force_squares(top, low)


def test_square_counts_at_level_three():
    assert len(list(exact_cartesian_squares(4))) == 450
    assert len(list(exact_cartesian_squares(4, min_object=0))) == 480


def test_exactness_examples():
    d0, d1 = inclusion(2, 2), inclusion(2, 1)
    # the two coface maps 1 -> 2 out of a point glue to the square over [1,2,3]
    assert is_exact_cartesian(d1, d0, inclusion(3, 1, 2), inclusion(3, 2, 3))
    # commutes, but the two legs into [1,2] both miss 2
    collapse = MonotoneMap(2, 2, (1, 1))
    assert not is_exact_cartesian(d1, identity(1), inclusion(2, 1), collapse)
    with pytest.raises(ValueError):
        is_exact_cartesian(d1, d0, inclusion(3, 2, 3), inclusion(3, 1, 2))
