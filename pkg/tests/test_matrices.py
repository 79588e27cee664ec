from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from tenjoin.eigen import charpoly_exact, eig_sym
from tenjoin.hypercore import Hypergraph, build, complete_uniform
from tenjoin.matrices import (
    MatrixError,
    MatrixKind,
    adjacency,
    laplacian,
    normalized_laplacian,
    similar_rational,
)

from conftest import K43, TRIANGLE, small_hypergraphs


def test_adjacency_single_edge_weight_two():
    a = adjacency(build(3, [({1, 2, 3}, 2)]))
    assert all(a[i, j] == (1 if i != j else 0) for i in range(3) for j in range(3))


def test_adjacency_edgeless_is_zero():
    a = adjacency(Hypergraph(4))
    assert all(x == 0 for row in a.rows for x in row)


def test_adjacency_of_k43_is_j_minus_i():
    a = adjacency(K43)
    assert a.rows == tuple(tuple(Fraction(int(i != j)) for j in range(4)) for i in range(4))


def test_laplacian_triangle():
    assert laplacian(TRIANGLE).rows == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    assert all(x == 0 for row in laplacian(Hypergraph(3)).rows for x in row)


def test_normalized_laplacian_triangle():
    nl = normalized_laplacian(TRIANGLE)
    assert np.allclose(nl, np.eye(3) - adjacency(TRIANGLE).to_float() / 2)
    assert np.allclose(eig_sym(nl), [0, 1.5, 1.5], atol=1e-12)


def test_normalized_laplacian_regular_shortcut():
    nl = normalized_laplacian(K43)
    assert np.allclose(nl, np.eye(4) - adjacency(K43).to_float() / 3)


def test_isolated_vertex_is_named():
    h = build(3, [({1, 2}, 1)])
    with pytest.raises(MatrixError, match="vertex 3"):
        normalized_laplacian(h)
    with pytest.raises(MatrixError, match="vertex 3"):
        similar_rational(h)


def test_parallel_edges_add():
    h = build(2, [({1, 2}, 1), ({1, 2}, 2)])
    assert adjacency(h)[0, 1] == 3


def test_kind_parse():
    assert MatrixKind.parse("lap") is MatrixKind.LAPLACIAN
    with pytest.raises(MatrixError):
        MatrixKind.parse("signless")


@given(small_hypergraphs(max_n=7))
def test_laplacian_invariants(h):
    a, lap = adjacency(h), laplacian(h)
    assert a.is_symmetric() and lap.is_symmetric()
    assert all(s == 0 for s in lap.row_sums())
    assert eig_sym(lap).min() >= -1e-9


@given(small_hypergraphs(max_n=8))
def test_similar_rational_matches_normalized(h):
    d = [sum(row) for row in adjacency(h).rows]
    if min(d) <= 0:
        return
    exact = charpoly_exact(similar_rational(h)).float_roots()
    approx = eig_sym(normalized_laplacian(h))
    assert np.allclose(np.sort(np.real(exact)), approx, atol=1e-9)
