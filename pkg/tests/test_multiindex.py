from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smoothtract.multiindex import (
    COUNT_LIMIT,
    count,
    count_by_degree,
    degree_block,
    degree_offsets,
    enumerate_indices,
    exponent_array,
    factorial_mi,
    monomial,
    parent_table,
    rank,
    unrank,
)


def brute_force(d, k):
    # every tuple in {0..k}^d with |a| <= k, sorted by degree then lexicographically
    import itertools

    return sorted((a for a in itertools.product(range(k + 1), repeat=d) if sum(a) <= k), key=lambda a: (sum(a), a))


def test_enumerate_examples():
    assert enumerate_indices(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert enumerate_indices(7, 0) == [(0,) * 7]
    assert enumerate_indices(1, 5) == [(j,) for j in range(6)]


def test_count_examples():
    assert count(10, 3) == 286
    assert count(100, 3) == 176851
    assert count(5, 0) == 1


@pytest.mark.parametrize("d", range(1, 9))
def test_enumeration_matches_count_and_brute_force(d):
    for k in range(0, 9 if d <= 5 else 6):
        idx = enumerate_indices(d, k)
        assert len(idx) == count(d, k) == len(set(idx))
        if d <= 4:
            assert idx == brute_force(d, k)


@pytest.mark.parametrize("d", range(1, 9))
@pytest.mark.parametrize("k", range(0, 9))
def test_count_identity(d, k):
    assert count_by_degree(d, k) == count(d, k) == comb(d + k, k)


def test_graded_order_and_prefix():
    for d in (1, 2, 3, 5):
        for k in range(5):
            idx = enumerate_indices(d, k)
            assert idx[0] == (0,) * d
            degrees = [sum(a) for a in idx]
            assert degrees == sorted(degrees)
            for m in range(k + 1):
                block = [a for a in idx if sum(a) == m]
                assert block == sorted(block) == degree_block(d, m)
            assert enumerate_indices(d, k + 1)[: len(idx)] == idx


def test_rank_unrank_roundtrip_exhaustive():
    for d in range(1, 6):
        for r, alpha in enumerate(enumerate_indices(d, 5)):
            assert rank(alpha) == r
            assert unrank(r, d) == alpha


@given(st.lists(st.integers(0, 12), min_size=1, max_size=9))
def test_rank_unrank_property(alpha):
    alpha = tuple(alpha)
    assert unrank(rank(alpha), len(alpha)) == alpha
    assert rank(alpha) < count(len(alpha), sum(alpha))


def test_count_overflow_is_signalled():
    with pytest.raises(OverflowError):
        count(10**6, 10**3)
    with pytest.raises(OverflowError):
        enumerate_indices(10**6, 10**3)
    # right at the boundary the value is exact
    d = 1
    while comb(d + 20, 20) <= COUNT_LIMIT:
        d *= 2
    with pytest.raises(OverflowError):
        count(d, 20)


def test_bad_arguments():
    with pytest.raises(ValueError):
        count(0, 2)
    with pytest.raises(ValueError):
        count(2, -1)
    with pytest.raises(ValueError):
        rank((1, -1))


def test_factorial_and_monomial_examples():
    assert factorial_mi((0, 0, 0)) == 1
    assert monomial(np.array([0.3, -2.0, 0.0]), (0, 0, 0)) == 1.0
    assert factorial_mi((2, 1)) == 2
    assert monomial(np.array([0.5, -0.5]), (2, 1)) == -0.125
    assert factorial_mi((3, 0)) == 6
    assert monomial(np.array([2.0, 9.0]), (3, 0)) == 8.0
    # 0^0 = 1
    assert monomial(np.zeros(2), (0, 3)) == 0.0
    assert monomial(np.zeros(2), (0, 0)) == 1.0


def test_factorial_guard():
    assert factorial_mi((170,)) == factorial(170)
    with pytest.raises(OverflowError):
        factorial_mi((171,))


def test_tables_consistent_with_enumeration():
    d, k = 4, 5
    idx = enumerate_indices(d, k)
    assert exponent_array(d, k).tolist() == [list(a) for a in idx]
    offsets = degree_offsets(d, k)
    assert offsets[0] == 0 and offsets[-1] == len(idx)
    parent, var = parent_table(d, k)
    for r in range(1, len(idx)):
        child = list(idx[parent[r]])
        child[var[r]] += 1
        assert tuple(child) == idx[r]
