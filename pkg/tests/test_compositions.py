import math

import pytest
from hypothesis import given, strategies as st

from oracles import compositions_bruteforce, weak_compositions_bruteforce
from powerproduct.compositions import (
    ExponentSet,
    count_weak_compositions,
    enumerate_B,
    enumerate_k_compositions,
    iter_compositions,
    multinomial,
    support_size,
)


@pytest.mark.parametrize("n,d,expected", [(3, 2, 6), (1, 7, 1), (4, 4, 35)])
def test_count_examples(n, d, expected):
    assert count_weak_compositions(n, d) == expected
    assert len(weak_compositions_bruteforce(n, d)) == expected


@pytest.mark.parametrize("n,d", [(0, 2), (2, 0), (-1, 3)])
def test_count_rejects_nonpositive(n, d):
    with pytest.raises(ValueError):
        count_weak_compositions(n, d)


def test_enumerate_B_small():
    assert enumerate_B(2, 2).members == ((2, 0), (1, 1), (0, 2))
    assert enumerate_B(1, 5).members == ((5,),)
    # same set as the columns of the printed B(3,2)
    printed = {(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)}
    B = enumerate_B(3, 2)
    assert set(B) == printed and B.order_tag == "lex"


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("d", range(1, 9))
def test_enumerate_B_exhaustive(n, d):
    B = enumerate_B(n, d)
    if n ** d <= 10**6 and (d + 1) ** n <= 10**6:
        assert set(B) == weak_compositions_bruteforce(n, d)
    assert len(B) == len(set(B)) == math.comb(d + n - 1, d)
    assert all(sum(a) == d and min(a) >= 0 for a in B)
    assert list(B) == sorted(B, reverse=True)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("d", range(1, 9))
def test_support_partition(n, d):
    total = sum(math.comb(n, k) * math.comb(d - 1, k - 1) for k in range(1, min(n, d) + 1))
    assert total == math.comb(d + n - 1, d)
    by_k = {}
    for a in enumerate_B(n, d):
        by_k[support_size(a)] = by_k.get(support_size(a), 0) + 1
    assert by_k == {k: math.comb(n, k) * math.comb(d - 1, k - 1) for k in range(1, min(n, d) + 1)}


def test_k_compositions():
    assert enumerate_k_compositions(2, 2).members == ((1, 1),)
    assert enumerate_k_compositions(4, 2).members == ((3, 1), (2, 2), (1, 3))
    assert len(enumerate_k_compositions(5, 3)) == 6
    for d in range(1, 9):
        for k in range(1, d + 1):
            assert set(enumerate_k_compositions(d, k)) == compositions_bruteforce(d, k)


@pytest.mark.parametrize("d,k", [(2, 3), (3, 0)])
def test_k_compositions_rejects(d, k):
    with pytest.raises(ValueError):
        enumerate_k_compositions(d, k)


def test_iter_compositions_edge_cases():
    assert list(iter_compositions(0, 0)) == [()]
    assert list(iter_compositions(3, 0)) == []
    assert list(iter_compositions(2, 3)) == []


def test_multinomial_examples():
    assert multinomial(2, (1, 1, 0)) == 2
    assert multinomial(4, (2, 2)) == 6
    assert multinomial(5, (5, 0)) == 1
    with pytest.raises(ValueError):
        multinomial(3, (1, 1))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_multinomial_times_factorials(alpha):
    d = sum(alpha)
    assert multinomial(d, alpha) * math.prod(math.factorial(a) for a in alpha) == math.factorial(d)


def test_exponent_set_rejects_duplicates():
    with pytest.raises(ValueError):
        ExponentSet(2, 2, ((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        ExponentSet(2, 2, ((1, 1),), "sorted")


def test_large_enumeration_is_iterative():
    # s(6, 20) = 53130; a recursive generator would be deep here
    assert len(enumerate_B(6, 20)) == 53130
