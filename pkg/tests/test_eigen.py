from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenjoin.eigen import (
    EigenError,
    charpoly_exact,
    co_eigen,
    commutes,
    eig_sym,
    polys_equal,
    spectra_equal,
)
from tenjoin.matrices import MatrixError, RatMatrix, SymMatrix, adjacency
from tenjoin.poly import RationalPoly

from conftest import C4, C4_K1, P3, STAR, graph

X = RationalPoly.x()


def J(n):
    return SymMatrix([[1] * n for _ in range(n)])


def I(n):
    return SymMatrix([[int(i == j) for j in range(n)] for i in range(n)])


def test_eig_sym_examples():
    assert np.allclose(eig_sym(I(3)), [1, 1, 1])
    assert np.allclose(eig_sym(J(3)), [0, 0, 3], atol=1e-12)
    k6 = graph(6, [(i, j) for i in range(1, 7) for j in range(i + 1, 7)])
    assert np.allclose(eig_sym(adjacency(k6)), [-1] * 5 + [5], atol=1e-12)


def test_eig_sym_rejects_asymmetric():
    with pytest.raises(MatrixError):
        eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_sym_vectors_are_orthonormal():
    w, v = eig_sym(adjacency(C4), vectors=True)
    assert np.allclose(v.T @ v, np.eye(4), atol=1e-12)
    assert np.allclose(v @ np.diag(w) @ v.T, adjacency(C4).to_float(), atol=1e-12)


def test_charpoly_examples():
    assert charpoly_exact(RatMatrix.zeros(3)) == X**3
    assert charpoly_exact(J(2)) == X**2 - 2 * X
    assert charpoly_exact(adjacency(P3)) == X**3 - 2 * X


def test_co_eigen_identity_pair():
    sys = co_eigen([I(3), I(3)])
    assert all(np.allclose(t, (1, 1)) for t in sys.tuples())


def test_co_eigen_c4_and_j():
    sys = co_eigen([adjacency(C4), J(4)])
    got = sorted(tuple(round(x, 9) + 0.0 for x in t) for t in sys.tuples())
    assert got == [(-2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (2.0, 4.0)]
    for idx, m in enumerate([adjacency(C4), J(4)]):
        assert np.linalg.norm(sys.reconstruct(idx) - m.to_float()) < 1e-8


def test_co_eigen_noncommuting():
    with pytest.raises(MatrixError, match="0 and 1"):
        co_eigen([adjacency(P3), J(3)])


def test_spectra_and_polys_equal():
    assert spectra_equal([0, 1.5, 1.5], [0, 1.5, 1.5])
    tol = 1e-9
    assert not spectra_equal([0, 1], [0, 1 + 2 * tol], tol)
    p, q = charpoly_exact(adjacency(C4_K1)), charpoly_exact(adjacency(STAR))
    assert polys_equal(p, q) and p == X**5 - 4 * X**3


rat_entries = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


@st.composite
def sym_matrices(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(rat_entries)
    return SymMatrix(m)


@given(sym_matrices())
def test_charpoly_roots_match_jacobi(m):
    p = charpoly_exact(m)
    w = eig_sym(m)
    roots = np.sort(np.real(p.float_roots()))
    assert np.allclose(roots, w, atol=1e-8)
    assert abs(w.sum() - float(m.trace())) < 1e-9
    n = m.order
    det = float((-1) ** n * p.coeffs[0])
    assert abs(np.prod(w) - det) <= 1e-8 * max(1.0, abs(det))


@given(st.integers(2, 7), st.data())
def test_co_eigen_reconstructs_circulants(n, data):
    # circulant matrices commute
    def circ(c):
        return SymMatrix([[c[(j - i) % n] for j in range(n)] for i in range(n)])

    ms = []
    for _ in range(data.draw(st.integers(1, 3))):
        half = [data.draw(st.integers(-3, 3)) for _ in range(n // 2 + 1)]
        c = [half[min(t, n - t)] for t in range(n)]
        ms.append(circ(c))
    for a in ms:
        for b in ms:
            assert commutes(a, b)
    sys = co_eigen(ms)
    for idx, m in enumerate(ms):
        assert np.linalg.norm(sys.reconstruct(idx) - m.to_float()) < 1e-8


def test_jacobi_sweep_cap(monkeypatch):
    import tenjoin.eigen as eigen

    monkeypatch.setattr(eigen, "MAX_SWEEPS", 0)
    with pytest.raises(EigenError):
        eigen.eig_sym(adjacency(C4))
