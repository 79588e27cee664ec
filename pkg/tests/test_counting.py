from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenjoin.counting import (
    CountError,
    k_copy_constants,
    n_cross,
    n_cross_oracle,
    p1,
    p1_oracle,
    p2,
    p2_oracle,
    q_cross,
    q_cross_oracle,
    x1x2,
)
from tenjoin.hypercore import WeightTable, complete_uniform
from tenjoin.matrices import adjacency
from tenjoin.tensorjoin import KCopyOp, k_copy_join


def test_n_cross_examples():
    assert n_cross((2, 2), 1, 2, 2) == 1
    assert n_cross((3, 3), 1, 1, 3) == 3
    assert n_cross((3, 3), 1, 2, 3) == 4


def test_q_cross_examples():
    assert q_cross((2, 2, 2), 1, 2, 3) == 2
    assert q_cross((2, 3, 4), 2, 2, 3) == 0
    assert q_cross((2, 3, 4), 1, 3, 4) == 0


def test_p_examples():
    assert p1(3, 2, 3) == 3
    assert all(p1(n, 2, 2) == 0 for n in range(2, 6))
    assert p2(2, 2, 2) == 1


def test_x1x2_examples():
    assert x1x2(3, 2) == (Fraction(2, 3), Fraction(1, 3))
    assert x1x2(5, 1) == (1, 0)
    assert x1x2(2, 2) == (Fraction(1, 3), Fraction(1, 3))


def test_k_copy_constants_examples():
    _, _, p12, p21, p22 = k_copy_constants(2, 2, 2, 1, WeightTable({2: 1}))
    assert (p12, p21, p22) == (0, 1, 0)
    _, p2s, p12, _, _ = k_copy_constants(3, 2, 2, 2, WeightTable({4: 1}))
    assert p12 == Fraction(2, 3)
    # the mirror construction realises p12 as an adjacency entry inside a copy
    h = complete_uniform(2, 2)
    a = adjacency(k_copy_join(h, 3, KCopyOp.MIRROR, 2, WeightTable({2: 0, 4: 1}), r=2))
    assert a[0, 1] == 1 + p12


def test_counting_errors():
    with pytest.raises(CountError):
        n_cross((1, 3), 1, 1, 2)
    with pytest.raises(CountError):
        p1(1, 2, 3)
    with pytest.raises(CountError):
        x1x2(3, 4)
    with pytest.raises(CountError):
        k_copy_constants(2, 3, 2, 1, WeightTable({}))


def _all_sizes(max_total):
    for k in range(1, 5):
        for sizes in product(range(1, max_total + 1), repeat=k):
            if sum(sizes) <= max_total:
                yield sizes


def test_n_cross_matches_oracle_exhaustively():
    for sizes in _all_sizes(12):
        if len(sizes) > 3 and sum(sizes) > 9:
            continue
        k = len(sizes)
        for i in range(1, k + 1):
            for j in range(i, k + 1):
                if i == j and sizes[i - 1] < 2:
                    continue
                for c in range(2, sum(sizes) + 1):
                    assert n_cross(sizes, i, j, c) == n_cross_oracle(sizes, i, j, c)


size_lists = st.lists(st.integers(1, 4), min_size=2, max_size=4).filter(lambda s: sum(s) <= 12)


@given(size_lists, st.data())
def test_q_cross_matches_oracle(sizes, data):
    k = len(sizes)
    i = data.draw(st.integers(1, k))
    j = data.draw(st.integers(1, k))
    for c in range(2, k + 2):
        assert q_cross(sizes, i, j, c) == q_cross_oracle(sizes, i, j, c)


@given(st.integers(2, 4), st.integers(2, 3))
def test_p_counts_match_oracle(n, l):
    for c in range(2, n * l + 1):
        assert p1(n, l, c) == p1_oracle(n, l, c)
        assert p2(n, l, c) == p2_oracle(n, l, c)


@given(st.integers(2, 5), st.integers(2, 3))
def test_p1_is_complement_of_inside_sets(n, l):
    # sets through an inside pair, minus those that stay inside the copy
    for c in range(3, n * l + 1):
        assert p1(n, l, c) == comb(n * l - 2, c - 2) - comb(n - 2, c - 2)


@given(st.integers(1, 9), st.data())
def test_x1x2_scaled_are_integers(n, data):
    r = data.draw(st.integers(1, n))
    x1, x2 = x1x2(n, r)
    assert (x1 * (2 * r - 1)).denominator == 1
    assert (x2 * (2 * r - 1)).denominator == 1
