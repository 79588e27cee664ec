"""Floating eigensolver, exact characteristic polynomials, common eigenbases.

These are the independent oracles used to check every closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .matrices import MatrixError, RatMatrix
from .poly import RationalPoly

__all__ = [
    "EigenError",
    "CoEigenSystem",
    "eig_sym",
    "charpoly_exact",
    "charpoly_integer",
    "co_eigen",
    "commutes",
    "spectra_equal",
    "polys_equal",
]

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


class EigenError(ArithmeticError):
    pass


def _as_float(m) -> np.ndarray:
    if isinstance(m, RatMatrix):
        return m.to_float().copy()
    return np.array(m, dtype=float, copy=True)


def eig_sym(m, tol: float = DEFAULT_TOL, vectors: bool = False):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps continue until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||m||_F)``. Returns the ascending eigenvalues, and the
    matching orthonormal eigenvectors (columns) when ``vectors`` is set.
    """
    a = _as_float(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise MatrixError("matrix is not square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0))):
        raise MatrixError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    # theta^2 would overflow; t ~ 1/(2 theta)
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise EigenError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], v[:, order]
    return w[order]


def charpoly_integer(b: np.ndarray) -> list[int]:
    """Faddeev-LeVerrier on an integer object matrix; descending coefficients."""
    n = b.shape[0]
    ident = np.zeros((n, n), dtype=object)
    for i in range(n):
        ident[i, i] = 1
    coeffs = [1]
    m = ident.copy()
    for k in range(1, n + 1):
        am = b.dot(m)
        tr = sum(am[i, i] for i in range(n))
        ck, rem = divmod(-tr, k)
        if rem:
            raise EigenError("non-integral Faddeev-LeVerrier step")
        coeffs.append(ck)
        m = am + ck * ident
    return coeffs


def charpoly_exact(m: RatMatrix) -> RationalPoly:
    """Monic ``det(xI - m)`` with exact rational coefficients."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.order == 0:
        return RationalPoly.one()
    b, d = m.scaled_integer()
    ints = charpoly_integer(b)
    desc = [Fraction(c, d**k) for k, c in enumerate(ints)]
    return RationalPoly.from_descending(desc)


def commutes(a: RatMatrix, b: RatMatrix) -> bool:
    ba, _ = a.scaled_integer()
    bb, _ = b.scaled_integer()
    return bool(np.all(ba.dot(bb) == bb.dot(ba)))


@dataclass(frozen=True)
class CoEigenSystem:
    vectors: np.ndarray  # columns
    values: np.ndarray  # shape (n, number of matrices)

    def __len__(self) -> int:
        return self.vectors.shape[1]

    def tuples(self) -> list[tuple[float, ...]]:
        return [tuple(row) for row in self.values]

    def reconstruct(self, idx: int) -> np.ndarray:
        v = self.vectors
        return (v * self.values[:, idx]) @ v.T


def _clusters(w: np.ndarray, tol: float) -> list[np.ndarray]:
    groups, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol * max(1.0, abs(w[i - 1])):
            groups.append(np.arange(start, i))
            start = i
    return groups


def co_eigen(ms: Sequence[RatMatrix], tol: float = 1e-8) -> CoEigenSystem:
    """Common orthonormal eigenbasis of pairwise-commuting symmetric matrices."""
    if not ms:
        raise MatrixError("no matrices given")
    n = ms[0].order
    for i, m in enumerate(ms):
        if m.order != n:
            raise MatrixError("matrices have different orders")
        if not m.is_symmetric():
            raise MatrixError(f"matrix {i} is not symmetric")
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if not commutes(ms[i], ms[j]):
                raise MatrixError(f"matrices {i} and {j} do not commute")
    floats = [m.to_float() for m in ms]
    basis = _refine(np.eye(n), floats, tol)
    values = np.column_stack([np.einsum("ij,ik,kj->j", basis, f, basis) for f in floats])
    return CoEigenSystem(basis, values)


def _refine(basis: np.ndarray, floats: list[np.ndarray], tol: float) -> np.ndarray:
    if not floats or basis.shape[1] <= 1:
        return basis
    head, rest = floats[0], floats[1:]
    w, v = eig_sym(basis.T @ head @ basis, vectors=True)
    rotated = basis @ v
    parts = [_refine(rotated[:, idx], rest, tol) for idx in _clusters(w, tol)]
    return np.hstack(parts)


def spectra_equal(a, b, tol: float = 1e-9) -> bool:
    a, b = np.sort(np.asarray(a, dtype=float)), np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"spectra have different lengths {len(a)} and {len(b)}")
    return bool(np.all(np.abs(a - b) <= tol))


def polys_equal(p: RationalPoly, q: RationalPoly) -> bool:
    if p.degree != q.degree:
        raise ValueError(f"polynomials have different degrees {p.degree} and {q.degree}")
    return p == q
