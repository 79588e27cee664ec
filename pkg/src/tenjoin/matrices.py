"""Adjacency, Laplacian and normalized Laplacian of a weighted hypergraph."""

from __future__ import annotations

import enum
from collections import defaultdict
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .hypercore import Hypergraph, valencies
from .poly import as_fraction

__all__ = [
    "MatrixKind",
    "RatMatrix",
    "SymMatrix",
    "MatrixError",
    "adjacency",
    "laplacian",
    "normalized_laplacian",
    "similar_rational",
    "matrix_of",
    "float_matrix_of",
]


class MatrixError(ValueError):
    pass


class MatrixKind(enum.Enum):
    ADJACENCY = "adj"
    LAPLACIAN = "lap"
    NORMALIZED = "nlap"

    @classmethod
    def parse(cls, s: "str | MatrixKind") -> "MatrixKind":
        if isinstance(s, MatrixKind):
            return s
        aliases = {
            "adj": cls.ADJACENCY, "a": cls.ADJACENCY, "adjacency": cls.ADJACENCY,
            "lap": cls.LAPLACIAN, "l": cls.LAPLACIAN, "laplacian": cls.LAPLACIAN,
            "nlap": cls.NORMALIZED, "normalized": cls.NORMALIZED,
        }
        try:
            return aliases[s.lower()]
        except KeyError:
            raise MatrixError(f"unknown matrix kind {s!r}") from None


class RatMatrix:
    """Dense square matrix of Fractions, not necessarily symmetric."""

    __slots__ = ("rows", "_float")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(as_fraction(x) for x in row) for row in rows
        )
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise MatrixError("matrix is not square")
        self._float = None

    @classmethod
    def zeros(cls, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_float(self) -> np.ndarray:
        if self._float is None:
            self._float = np.array(
                [[float(x) for x in row] for row in self.rows], dtype=float
            ).reshape(self.order, self.order)
        return self._float

    def to_object(self) -> np.ndarray:
        out = np.empty((self.order, self.order), dtype=object)
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                out[i, j] = x
        return out

    def scaled_integer(self) -> tuple[np.ndarray, int]:
        """Integer object array ``B`` and ``d`` with ``self == B / d``."""
        d = 1
        for row in self.rows:
            for x in row:
                d = lcm(d, x.denominator)
        out = np.empty((self.order, self.order), dtype=object)
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                out[i, j] = x.numerator * (d // x.denominator)
        return out, d

    def is_symmetric(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.order)), Fraction(0))

    def row_sums(self) -> list[Fraction]:
        return [sum(r, Fraction(0)) for r in self.rows]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        n = self.order
        cols = list(zip(*other.rows))
        return RatMatrix([[sum((a * b for a, b in zip(self.rows[i], c)), Fraction(0)) for c in cols] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"


class SymMatrix(RatMatrix):
    """Exactly symmetric rational matrix with a cached float view."""

    __slots__ = ()

    def __init__(self, rows: Sequence[Sequence]):
        super().__init__(rows)
        if not self.is_symmetric():
            raise MatrixError("matrix is not symmetric")


def _reject_loops(h: Hypergraph) -> None:
    for e in h.edges:
        if e.size == 1:
            raise MatrixError(f"loop {e.vertices} has no adjacency contribution (|e|-1 = 0)")


def _adjacency_rows(h: Hypergraph) -> list[list[Fraction]]:
    _reject_loops(h)
    n = h.n
    # group edges by their per-pair contribution and count pair incidences
    by_key: dict[tuple[int, int, int], list[tuple[int, ...]]] = defaultdict(list)
    for e in h.edges:
        if e.weight:
            by_key[(e.weight.numerator, e.weight.denominator, len(e.vertices))].append(e.vertices)
    groups: dict[Fraction, list[tuple[int, ...]]] = defaultdict(list)
    for (p, q, size), vsets in by_key.items():
        groups[Fraction(p, q * (size - 1))].extend(vsets)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for coeff, vsets in groups.items():
        lengths = np.fromiter((len(vs) for vs in vsets), dtype=np.int64, count=len(vsets))
        cols = np.fromiter((v - 1 for vs in vsets for v in vs), dtype=np.int64, count=int(lengths.sum()))
        inc = np.zeros((len(vsets), n), dtype=np.int64)
        inc[np.repeat(np.arange(len(vsets)), lengths), cols] = 1
        counts = inc.T @ inc
        np.fill_diagonal(counts, 0)
        for i, j in zip(*np.nonzero(counts)):
            acc[i][j] += coeff * int(counts[i, j])
    return acc


def adjacency(h: Hypergraph) -> SymMatrix:
    return SymMatrix(_adjacency_rows(h))


def laplacian(h: Hypergraph) -> SymMatrix:
    rows = _adjacency_rows(h)
    d = valencies(h)
    lap = [[-x for x in row] for row in rows]
    for i in range(h.n):
        lap[i][i] = d[i]
    return SymMatrix(lap)


def _positive_valencies(h: Hypergraph) -> list[Fraction]:
    d = valencies(h)
    for i, x in enumerate(d):
        if x <= 0:
            raise MatrixError(f"vertex {i + 1} is isolated (valency 0); normalized Laplacian undefined")
    return d


def normalized_laplacian(h: Hypergraph) -> np.ndarray:
    """Floating ``D^{-1/2} L D^{-1/2}``."""
    d = _positive_valencies(h)
    lap = laplacian(h).to_float()
    s = 1.0 / np.sqrt(np.array([float(x) for x in d]))
    return lap * s[:, None] * s[None, :]


def similar_rational(h: Hypergraph) -> RatMatrix:
    """Exact ``D^{-1} L``; similar to the normalized Laplacian."""
    d = _positive_valencies(h)
    lap = laplacian(h)
    return RatMatrix([[x / d[i] for x in row] for i, row in enumerate(lap.rows)])


def matrix_of(h: Hypergraph, kind: MatrixKind) -> RatMatrix:
    """Exact matrix whose spectrum is the ``kind`` spectrum of ``h``."""
    kind = MatrixKind.parse(kind)
    if kind is MatrixKind.ADJACENCY:
        return adjacency(h)
    if kind is MatrixKind.LAPLACIAN:
        return laplacian(h)
    return similar_rational(h)


def float_matrix_of(h: Hypergraph, kind: MatrixKind) -> np.ndarray:
    kind = MatrixKind.parse(kind)
    if kind is MatrixKind.NORMALIZED:
        return normalized_laplacian(h)
    return matrix_of(h, kind).to_float()
