"""Weighted hypergraphs with exact rational weights.

Vertices are the integers ``1..n``. Edges form a multiset: the same vertex
set may appear several times, possibly with different weights. Every value
here is immutable, so hypergraphs can be shared freely.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, NamedTuple, Optional

from .poly import as_fraction

__all__ = [
    "Edge",
    "Hypergraph",
    "WeightTable",
    "StructuralProfile",
    "HypergraphError",
    "build",
    "valency",
    "degree",
    "is_regular",
    "is_uniform",
    "profile",
    "complete",
    "complete_uniform",
    "s_complement",
    "total_complement",
    "disjoint_union",
    "reweight",
    "relabel",
]


class HypergraphError(ValueError):
    pass


class Edge(NamedTuple):
    vertices: tuple[int, ...]
    weight: Fraction

    @property
    def size(self) -> int:
        return len(self.vertices)


def _edge_key(e: Edge):
    return (len(e.vertices), e.vertices, e.weight)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=_edge_key)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_sets(self) -> list[tuple[int, ...]]:
        return [e.vertices for e in self.edges]

    def has_loops(self) -> bool:
        return any(e.size == 1 for e in self.edges)

    def has_repeated_sets(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.vertices in seen:
                return True
            seen.add(e.vertices)
        return False

    def cardinalities(self) -> frozenset[int]:
        return frozenset(e.size for e in self.edges)

    def edge_multiset(self) -> Counter:
        return Counter((e.vertices, e.weight) for e in self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class WeightTable:
    """Weight ``w_c`` given to a new edge of cardinality ``c``."""

    weights: Mapping[int, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(0)

    def __post_init__(self):
        ws = {int(c): as_fraction(w) for c, w in dict(self.weights).items()}
        d = as_fraction(self.default)
        for c, w in ws.items():
            if c < 2:
                raise HypergraphError(f"weight table cardinality {c} < 2")
            if w < 0:
                raise HypergraphError(f"negative weight {w} for cardinality {c}")
        if d < 0:
            raise HypergraphError("negative default weight")
        object.__setattr__(self, "weights", dict(sorted(ws.items())))
        object.__setattr__(self, "default", d)

    @classmethod
    def constant(cls, w=1) -> "WeightTable":
        return cls({}, as_fraction(w))

    def __call__(self, c: int) -> Fraction:
        return self.weights.get(c, self.default)

    def __hash__(self) -> int:
        return hash((tuple(self.weights.items()), self.default))


@dataclass(frozen=True)
class StructuralProfile:
    rank: int
    corank: int
    uniform: Optional[int]
    regular: Optional[Fraction]
    cardinalities: frozenset


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 1 <= v <= h.n:
        raise HypergraphError(f"vertex {v} outside 1..{h.n}")


def build(n: int, edges: Iterable = ()) -> Hypergraph:
    """Validate ``(vertex-set, weight)`` pairs and return a hypergraph."""
    if n < 0:
        raise HypergraphError("negative vertex count")
    out = []
    for item in edges:
        verts, w = item
        w = as_fraction(w)
        vs = tuple(sorted(set(verts)))
        if len(vs) != len(tuple(verts)):
            raise HypergraphError(f"repeated vertex in edge {tuple(verts)}")
        if not vs:
            raise HypergraphError("empty edge")
        if vs[0] < 1 or vs[-1] > n:
            raise HypergraphError(f"edge {vs} has a vertex outside 1..{n}")
        if w < 0:
            raise HypergraphError(f"negative weight {w} on edge {vs}")
        out.append(Edge(vs, w))
    return Hypergraph(n, tuple(out))


def valency(h: Hypergraph, v: int) -> Fraction:
    _check_vertex(h, v)
    return sum((e.weight for e in h.edges if v in e.vertices), Fraction(0))


def valencies(h: Hypergraph) -> list[Fraction]:
    """All valencies, index 0 holding vertex 1."""
    # integer incidence counts per distinct weight keep Fraction work small
    counts: dict[tuple[int, int], list[int]] = {}
    for e in h.edges:
        key = (e.weight.numerator, e.weight.denominator)
        row = counts.get(key)
        if row is None:
            row = counts[key] = [0] * h.n
        for v in e.vertices:
            row[v - 1] += 1
    out = [Fraction(0)] * h.n
    for (p, q), row in counts.items():
        for i, c in enumerate(row):
            if c:
                out[i] += Fraction(p * c, q)
    return out


def degree(h: Hypergraph, v: int) -> int:
    _check_vertex(h, v)
    return sum(1 for e in h.edges if v in e.vertices)


def is_regular(h: Hypergraph) -> Optional[Fraction]:
    vals = set(valencies(h))
    if len(vals) == 1:
        return vals.pop()
    if h.n == 0:
        return Fraction(0)
    return None


def is_uniform(h: Hypergraph) -> Optional[int]:
    cs = h.cardinalities()
    return next(iter(cs)) if len(cs) == 1 else None


def profile(h: Hypergraph) -> StructuralProfile:
    cs = h.cardinalities()
    rank = max(cs) if cs else 0
    corank = min(cs) if cs else 0
    return StructuralProfile(rank, corank, is_uniform(h), is_regular(h), cs)


def complete(n: int, w: WeightTable) -> Hypergraph:
    if n < 2:
        raise HypergraphError("complete hypergraph needs n >= 2")
    edges = [
        Edge(s, w(c))
        for c in range(2, n + 1)
        for s in combinations(range(1, n + 1), c)
    ]
    return Hypergraph(n, tuple(edges))


def complete_uniform(n: int, r: int, w=1) -> Hypergraph:
    if not 0 <= r <= n:
        raise HypergraphError(f"r={r} outside 0..{n}")
    if r == 0:
        return Hypergraph(n)
    w = as_fraction(w)
    return Hypergraph(n, tuple(Edge(s, w) for s in combinations(range(1, n + 1), r)))


def _require_simple(h: Hypergraph) -> None:
    if h.has_repeated_sets():
        raise HypergraphError("complement undefined: repeated vertex sets")


def s_complement(h: Hypergraph, w: WeightTable) -> Hypergraph:
    """Missing subsets whose cardinality already occurs in ``h``."""
    _require_simple(h)
    present = set(h.vertex_sets())
    edges = [
        Edge(s, w(c))
        for c in sorted(h.cardinalities())
        for s in combinations(range(1, h.n + 1), c)
        if s not in present
    ]
    return Hypergraph(h.n, tuple(edges))


def total_complement(h: Hypergraph, w: WeightTable) -> Hypergraph:
    """Every subset of size at least two that is not an edge of ``h``."""
    _require_simple(h)
    present = set(h.vertex_sets())
    edges = [
        Edge(s, w(c))
        for c in range(2, h.n + 1)
        for s in combinations(range(1, h.n + 1), c)
        if s not in present
    ]
    return Hypergraph(h.n, tuple(edges))


def disjoint_union(hs: Iterable[Hypergraph]) -> tuple[Hypergraph, tuple[int, ...]]:
    edges: list[Edge] = []
    offsets: list[int] = []
    shift = 0
    for h in hs:
        offsets.append(shift)
        edges.extend(Edge(tuple(v + shift for v in e.vertices), e.weight) for e in h.edges)
        shift += h.n
    return Hypergraph(shift, tuple(edges)), tuple(offsets)


def reweight(h: Hypergraph, w: WeightTable) -> Hypergraph:
    """Replace every edge weight by ``w(|e|)``."""
    return Hypergraph(h.n, tuple(Edge(e.vertices, w(e.size)) for e in h.edges))


def relabel(h: Hypergraph, perm: Mapping[int, int] | list[int]) -> Hypergraph:
    """Apply a vertex bijection; a list maps vertex ``i`` to ``perm[i-1]``."""
    get = (lambda v: perm[v - 1]) if isinstance(perm, list) else perm.__getitem__
    edges = [Edge(tuple(sorted(get(v) for v in e.vertices)), e.weight) for e in h.edges]
    return Hypergraph(h.n, tuple(edges))


def mu_sum(n: int, cards: Iterable[int], w: WeightTable) -> Fraction:
    """Pair coverage ``sum_c w_c C(n-2,c-2)/(c-1)`` of all c-subsets of [n]."""
    return sum((w(c) * comb(n - 2, c - 2) / (c - 1) for c in cards if c >= 2), Fraction(0))


def valency_sum(n: int, cards: Iterable[int], w: WeightTable) -> Fraction:
    """Vertex valency ``sum_c w_c C(n-1,c-1)`` of all c-subsets of [n]."""
    return sum((w(c) * comb(n - 1, c - 1) for c in cards if c >= 1), Fraction(0))
