"""Exact counts of join edges through a vertex pair, with brute-force oracles.

The closed forms are coefficient extractions: choosing ``t`` extra vertices
from a class of size ``s`` is the ``y**t`` coefficient of ``(1+y)**s``, and
"at least one" from a class is ``(1+y)**s - 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Sequence

import numpy as np

from .hypercore import WeightTable

__all__ = [
    "CountError",
    "n_cross",
    "n_cross_oracle",
    "n_cross_crossing",
    "q_cross",
    "q_cross_oracle",
    "p1",
    "p2",
    "p1_oracle",
    "p2_oracle",
    "x1x2",
    "k_copy_constants",
    "ORACLE_MAX_VERTICES",
]

ORACLE_MAX_VERTICES = 20


class CountError(ValueError):
    pass


def _mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _binom_row(s: int) -> list[int]:
    return [comb(s, t) for t in range(s + 1)] if s >= 0 else [0]


def _at_least_one(s: int) -> list[int]:
    row = _binom_row(s)
    row[0] -= 1
    return row


def _coeff(factors: list[list[int]], t: int) -> int:
    if t < 0:
        return 0
    acc = [1]
    for f in factors:
        acc = _mul(acc, f)
    return acc[t] if t < len(acc) else 0


def _check_pair(sizes: Sequence[int], i: int, j: int) -> None:
    k = len(sizes)
    if not (1 <= i <= k and 1 <= j <= k):
        raise CountError(f"class index out of range 1..{k}: ({i}, {j})")
    if i == j and sizes[i - 1] < 2:
        raise CountError(f"class {i} has fewer than two vertices")


def n_cross(sizes: Sequence[int], i: int, j: int, c: int) -> int:
    """Members of the all-classes-spanning family of size ``c`` through a pair.

    The pair is ``p`` in class ``i`` and ``q`` in class ``j`` (1-based, may be
    equal classes). Every other class must contribute at least one vertex.
    """
    _check_pair(sizes, i, j)
    if c < 2:
        return 0
    row = _spanning_coeffs(sizes[i - 1], sizes[j - 1], i == j, _others(sizes, i, j))
    return row[c - 2] if c - 2 < len(row) else 0


def _others(sizes: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    return tuple(sorted(s for t, s in enumerate(sizes, start=1) if t not in (i, j)))


@lru_cache(maxsize=None)
def _spanning_coeffs(ni: int, nj: int, same: bool, others: tuple[int, ...]) -> tuple[int, ...]:
    if same:
        factors = [_binom_row(ni - 2)]
    else:
        factors = [_binom_row(ni - 1), _binom_row(nj - 1)]
    factors += [_at_least_one(s) for s in others]
    acc = [1]
    for f in factors:
        acc = _mul(acc, f)
    return tuple(acc)


def n_cross_crossing(sizes: Sequence[int], i: int, j: int, c: int) -> int:
    """Same count for the family of all ``c``-subsets not inside one class."""
    _check_pair(sizes, i, j)
    if c < 2:
        return 0
    total = sum(sizes)
    if i != j:
        return comb(total - 2, c - 2)
    return comb(total - 2, c - 2) - comb(sizes[i - 1] - 2, c - 2)


def q_cross(sizes: Sequence[int], i: int, j: int, c: int) -> int:
    """Transversal count: one vertex from each of ``c-2`` further classes."""
    k = len(sizes)
    if not (1 <= i <= k and 1 <= j <= k):
        raise CountError(f"class index out of range 1..{k}: ({i}, {j})")
    if i == j or c < 2:
        return 0
    return _elementary(_others(sizes, i, j), c - 2)


@lru_cache(maxsize=None)
def _elementary(others: tuple[int, ...], t: int) -> int:
    return sum(prod(ch) for ch in combinations(others, t))


def _check_copies(n: int, l: int) -> None:
    if n < 2 or l < 2:
        raise CountError(f"need n >= 2 and l >= 2, got n={n}, l={l}")


def p1(n: int, l: int, c: int) -> int:
    """Subsets of ``l`` copies of an ``n``-set through a pair in copy 1 that
    reach at least one other copy."""
    _check_copies(n, l)
    if c - 2 <= 0:
        return 0
    full = _coeff([_binom_row(n - 2)] + [_binom_row(n)] * (l - 1), c - 2)
    inside = comb(n - 2, c - 2)
    return full - inside


def p2(n: int, l: int, c: int) -> int:
    """Subsets of ``l`` copies through a pair split across copies 1 and 2."""
    _check_copies(n, l)
    if c < 2:
        return 0
    return _coeff([_binom_row(n - 1)] * 2 + [_binom_row(n)] * (l - 2), c - 2)


def x1x2(n: int, r: int) -> tuple[Fraction, Fraction]:
    if not 1 <= r <= n:
        raise CountError(f"r={r} outside 1..{n}")
    x1 = Fraction(comb(n - 1, r - 1), 2 * r - 1)
    x2 = Fraction(0) if r == 1 else Fraction(comb(n - 2, r - 2), 2 * r - 1)
    return x1, x2


def k_copy_constants(
    k: int, l: int, n: int, r: int, w: WeightTable
) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
    """``(p1', p2', p12, p21, p22)`` for ``k`` copies joined ``l`` at a time."""
    if not 2 <= l <= k:
        raise CountError(f"need 2 <= l <= k, got l={l}, k={k}")
    if not 1 <= r <= n:
        raise CountError(f"r={r} outside 1..{n}")
    X = range(2, l * n + 1)
    if n >= 2:
        p1s = comb(k - 1, l - 1) * sum((w(c) * p1(n, l, c) / (c - 1) for c in X), Fraction(0))
        p2s = comb(k - 2, l - 2) * sum((w(c) * p2(n, l, c) / (c - 1) for c in X), Fraction(0))
    else:
        # single-vertex copies: no pair inside a copy, and a cross pair lies
        # in every subset of the l copies that contains both
        p1s = Fraction(0)
        p2s = comb(k - 2, l - 2) * sum((w(c) * comb(l - 2, c - 2) / (c - 1) for c in X), Fraction(0))
    wl = w(l * r) / (l * r - 1)
    p12 = Fraction(0) if r == 1 else wl * comb(k - 1, l - 1) * comb(n - 2, r - 2)
    p21 = wl * comb(k - 2, l - 2) * comb(n - 1, r - 1)
    p22 = Fraction(0) if r == 1 else wl * comb(k - 2, l - 2) * comb(n - 2, r - 2)
    return p1s, p2s, p12, p21, p22


# -- oracles -----------------------------------------------------------------


def _popcounts(total: int) -> np.ndarray:
    x = np.arange(1 << total, dtype=np.int64)
    pc = np.zeros_like(x)
    for b in range(total):
        pc += (x >> b) & 1
    return pc


@lru_cache(maxsize=None)
def _spanning_histogram(ni: int, nj: int, same: bool, others: tuple[int, ...]) -> tuple[int, ...]:
    """Histogram by total size of sets through the pair that meet every other class."""
    rest_i = ni - 2 if same else ni - 1
    rest_j = 0 if same else nj - 1
    total = rest_i + rest_j + sum(others)
    if total > ORACLE_MAX_VERTICES:
        raise CountError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices")
    masks = np.arange(1 << total, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    pos = rest_i + rest_j
    for s in others:
        cm = ((1 << s) - 1) << pos
        ok &= (masks & cm) != 0
        pos += s
    pc = _popcounts(total)[ok] + 2
    return tuple(np.bincount(pc, minlength=total + 3).tolist())


def n_cross_oracle(sizes: Sequence[int], i: int, j: int, c: int) -> int:
    """Enumerate every candidate set around a fixed pair and count."""
    _check_pair(sizes, i, j)
    if sum(sizes) > ORACLE_MAX_VERTICES:
        raise CountError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices")
    if c < 2:
        return 0
    hist = _spanning_histogram(sizes[i - 1], sizes[j - 1], i == j, _others(sizes, i, j))
    return hist[c] if c < len(hist) else 0


def q_cross_oracle(sizes: Sequence[int], i: int, j: int, c: int) -> int:
    """Enumerate sets through a fixed pair with at most one vertex per class."""
    if sum(sizes) > ORACLE_MAX_VERTICES:
        raise CountError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices")
    if c < 2 or i == j:
        return 0
    hist = _transversal_histogram(_others(sizes, i, j))
    return hist[c] if c < len(hist) else 0


@lru_cache(maxsize=None)
def _transversal_histogram(others: tuple[int, ...]) -> tuple[int, ...]:
    # the pair's own classes are used up, so extra vertices come from others
    total = sum(others)
    masks = np.arange(1 << total, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    pos = 0
    for s in others:
        hits = np.zeros(len(masks), dtype=np.int64)
        for b in range(pos, pos + s):
            hits += (masks >> b) & 1
        ok &= hits <= 1
        pos += s
    pc = _popcounts(total)[ok] + 2
    return tuple(np.bincount(pc, minlength=total + 3).tolist())


def _copies_oracle(n: int, l: int, c: int, same_copy: bool) -> int:
    total = n * l
    if total > ORACLE_MAX_VERTICES:
        raise CountError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices")
    copy = [v // n for v in range(total)]
    p, q = (0, 1) if same_copy else (0, n)
    rest = [v for v in range(total) if v not in (p, q)]
    count = 0
    for extra in combinations(rest, c - 2):
        if same_copy and all(copy[v] == 0 for v in extra):
            continue
        count += 1
    return count


def p1_oracle(n: int, l: int, c: int) -> int:
    _check_copies(n, l)
    return _copies_oracle(n, l, c, True) if c > 2 else 0


def p2_oracle(n: int, l: int, c: int) -> int:
    _check_copies(n, l)
    return _copies_oracle(n, l, c, False) if c >= 2 else 0
