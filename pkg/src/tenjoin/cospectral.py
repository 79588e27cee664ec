"""Small-hypergraph enumeration, cospectral pair discovery and certification."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .eigen import charpoly_exact
from .hgr import serialize_hgr
from .hypercore import Edge, Hypergraph, WeightTable, is_regular, valencies
from .matrices import adjacency, laplacian, similar_rational
from .poly import RationalPoly
from .tensorjoin import EdgeFamily, NonConstant, backbone_join, cross_counts, tensor_join

__all__ = [
    "CospectralError",
    "CanonicalForm",
    "CospectralReport",
    "SearchReport",
    "MAX_VERTICES",
    "canonical_form",
    "enumerate_hypergraphs",
    "find_cospectral_pairs",
    "cospectral_join_family",
    "cospectral_backbone_join",
    "verify",
    "search",
    "write_certificate",
]

MAX_VERTICES = 8
MAX_FREE_CANDIDATES = 16  # unfiltered enumeration walks 2**candidates subsets


class CospectralError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Lexicographically minimal sorted edge encoding over relabelings.

    Each edge is encoded as ``(vertex bitmask, weight rank)``; weights are
    kept alongside so weighted hypergraphs compare correctly.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]


def _mask(vs: Iterable[int]) -> int:
    return sum(1 << (v - 1) for v in vs)


def _check_size(n: int) -> None:
    if n > MAX_VERTICES:
        raise CospectralError(f"n={n} exceeds the supported maximum {MAX_VERTICES}")


def _colors(n: int, masks: Sequence[int], wr: Sequence[int]) -> list[int]:
    """Iterated vertex colouring from codegrees (one matrix per weight class).

    Colours are ranks of isomorphism-invariant signatures, so isomorphic
    inputs get matching colourings.
    """
    arr = np.array(masks, dtype=np.int64)
    inc = ((arr[:, None] >> np.arange(n)) & 1).astype(np.int64)
    k = max(wr) + 1
    wr_arr = np.array(wr)
    co = sum(
        (inc[wr_arr == t].T @ inc[wr_arr == t]) * (len(masks) + 1) ** t for t in range(k)
    )
    rows = [tuple(int(x) for x in row) for row in co]
    colors = [0] * n
    count = 1
    while True:
        sigs = [
            (colors[v], rows[v][v], tuple(sorted((rows[v][u], colors[u]) for u in range(n) if u != v)))
            for v in range(n)
        ]
        ranks = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        colors = [ranks[sig] for sig in sigs]
        if len(ranks) == count:
            return colors
        count = len(ranks)


@lru_cache(maxsize=4096)
def _cell_bits(colors: tuple[int, ...]) -> np.ndarray:
    """``out[p, v] = 1 << position`` over every relabeling that lists the
    colour classes in colour order and permutes freely inside each class."""
    n = len(colors)
    cells = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    rows = [[0] * n]
    start = 0
    for cell in cells:
        slots = range(start, start + len(cell))
        rows = [_assign(row, cell, order) for row in rows for order in permutations(slots)]
        start += len(cell)
    return np.left_shift(np.int64(1), np.array(rows, dtype=np.int64).reshape(-1, n))


def _assign(row: list[int], cell: list[int], order) -> list[int]:
    out = row[:]
    for v, pos in zip(cell, order):
        out[v] = pos
    return out


def _min_code(n: int, masks: Sequence[int], wr: Sequence[int], k: int) -> np.ndarray:
    colors = _colors(n, masks, wr)
    bits = _cell_bits(tuple(colors))
    arr = np.array(masks, dtype=np.int64)
    imgs = np.zeros((bits.shape[0], len(arr)), dtype=np.int64)
    for v in range(n):
        has = ((arr >> v) & 1).astype(bool)
        imgs[:, has] |= bits[:, v : v + 1]
    codes = imgs * k + np.array(wr, dtype=np.int64)
    codes.sort(axis=1)
    return codes[np.lexsort(codes.T[::-1])[0]]


def canonical_form(h: Hypergraph) -> CanonicalForm:
    _check_size(h.n)
    weights = tuple(sorted({e.weight for e in h.edges}))
    if not h.edges:
        return CanonicalForm(h.n, (), weights)
    rank = {w: i for i, w in enumerate(weights)}
    masks = [_mask(e.vertices) for e in h.edges]
    wr = [rank[e.weight] for e in h.edges]
    k = len(weights)
    best = _min_code(h.n, masks, wr, k)
    return CanonicalForm(h.n, tuple((int(c) // k, int(c) % k) for c in best), weights)


def _set_key(n: int, masks: Sequence[int]) -> bytes:
    if not masks:
        return b""
    return _min_code(n, masks, [0] * len(masks), 1).tobytes()


def _from_masks(n: int, masks: Iterable[int]) -> Hypergraph:
    edges = []
    for m in masks:
        vs = tuple(v + 1 for v in range(n) if (m >> v) & 1)
        edges.append(Edge(vs, Fraction(1)))
    return Hypergraph(n, tuple(edges))


def _candidates(n: int, cardinalities: Iterable[int]) -> list[int]:
    out = []
    for c in sorted(set(cardinalities)):
        if 1 <= c <= n:
            out.extend(_mask(s) for s in combinations(range(1, n + 1), c))
    return out


@lru_cache(maxsize=64)
def _regular_sets_cached(n: int, cands: tuple[int, ...], r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(s) for s in _regular_sets(n, list(cands), r))


def _regular_sets(n: int, cands: list[int], r: int) -> list[list[int]]:
    """One subset of ``cands`` per isomorphism class in which every vertex
    lies in exactly ``r`` sets.

    Vertices are saturated one at a time: the lowest vertex short of ``r``
    takes all its remaining sets at once, avoiding saturated vertices. The
    completions of a partial choice are relabeling-equivariant, so partial
    choices are deduplicated up to isomorphism after every step.
    """
    if r == 0:
        return [[]]
    by_vertex = [[m for m in cands if (m >> v) & 1] for v in range(n)]
    level: dict[bytes, list[int]] = {b"": []}
    done: dict[bytes, list[int]] = {}
    while level:
        nxt: dict[bytes, list[int]] = {}
        for chosen in level.values():
            deg = [sum(1 for m in chosen if (m >> v) & 1) for v in range(n)]
            v = next((u for u in range(n) if deg[u] < r), None)
            if v is None:
                done.setdefault(_set_key(n, chosen), chosen)
                continue
            saturated = sum(1 << u for u in range(n) if deg[u] >= r)
            taken = set(chosen)
            opts = [m for m in by_vertex[v] if not m & saturated and m not in taken]
            for pick in combinations(opts, r - deg[v]):
                d = deg[:]
                ok = True
                for m in pick:
                    for u in range(n):
                        if (m >> u) & 1:
                            d[u] += 1
                            ok &= d[u] <= r
                if ok:
                    child = chosen + list(pick)
                    nxt.setdefault(_set_key(n, child), child)
        level = nxt
    return list(done.values())


def _regular_family(n: int, cands: list[int], r: int) -> list[list[int]]:
    """Regular subsets; high valencies come from complements of low ones."""
    top = max((sum(1 for m in cands if (m >> v) & 1) for v in range(n)), default=0)
    if r > top:
        return []
    if 2 * r > top:
        full = set(cands)
        return [sorted(full - set(s)) for s in _regular_sets_cached(n, tuple(cands), top - r)]
    return [list(s) for s in _regular_sets_cached(n, tuple(cands), r)]


def _all_sets(cands: list[int]):
    if len(cands) > MAX_FREE_CANDIDATES:
        raise CospectralError(
            f"{len(cands)} candidate edges; unfiltered enumeration is capped at {MAX_FREE_CANDIDATES}"
        )
    for bits in range(1 << len(cands)):
        yield [m for i, m in enumerate(cands) if (bits >> i) & 1]


def enumerate_hypergraphs(
    n: int,
    cardinalities: Iterable[int],
    uniform_m: Optional[int] = None,
    regular_r: Union[None, bool, int] = None,
) -> list[Hypergraph]:
    """One unweighted simple hypergraph per isomorphism class.

    ``regular_r`` may be an exact valency, ``True`` for any valency, or None.
    With ``uniform_m`` only edges of that cardinality are used.
    """
    _check_size(n)
    cards = set(cardinalities)
    if uniform_m is not None:
        cards &= {uniform_m}
    cands = _candidates(n, cards)
    if regular_r is None or regular_r is False:
        labeled = _all_sets(cands)
    else:
        if regular_r is True:
            top = max((sum(1 for m in cands if (m >> v) & 1) for v in range(n)), default=0)
            rs = range(0, top + 1)
        else:
            rs = [int(regular_r)]
        if len(cards) == 1:
            # the edge count n * r / m must be whole
            m = next(iter(cards))
            rs = [r for r in rs if (n * r) % m == 0]
        labeled = [s for r in rs for s in _regular_family(n, cands, r)]
    reps: dict[bytes, list[int]] = {}
    for masks in labeled:
        reps.setdefault(_set_key(n, masks), masks)
    hs = [_from_masks(n, m) for m in reps.values()]
    return sorted(hs, key=canonical_form)


def _adj_poly(h: Hypergraph) -> RationalPoly:
    return charpoly_exact(adjacency(h))


def find_cospectral_pairs(hs: Sequence[Hypergraph]) -> list[tuple[Hypergraph, Hypergraph]]:
    """All non-isomorphic pairs with equal adjacency characteristic polynomial."""
    buckets: dict[tuple, list[tuple[CanonicalForm, Hypergraph]]] = {}
    for h in hs:
        key = (h.n, tuple(_adj_poly(h).coeffs))
        buckets.setdefault(key, []).append((canonical_form(h), h))
    pairs = []
    for key in sorted(buckets, key=lambda k: (k[0], [(x.numerator, x.denominator) for x in k[1]])):
        uniq: dict[CanonicalForm, Hypergraph] = {}
        for cf, h in buckets[key]:
            uniq.setdefault(cf, h)
        items = sorted(uniq.items())
        pairs.extend((a[1], b[1]) for a, b in combinations(items, 2))
    return pairs


@dataclass(frozen=True)
class CospectralReport:
    adjacency: bool
    laplacian: bool
    normalized: Optional[bool]  # None when a zero valency makes it undefined
    polys: Mapping[str, tuple[RationalPoly, Optional[RationalPoly]]]
    note: str = ""

    @property
    def all_true(self) -> bool:
        return bool(self.adjacency and self.laplacian and self.normalized)


def verify(h1: Hypergraph, h2: Hypergraph) -> CospectralReport:
    if h1.n != h2.n:
        raise CospectralError(f"orders differ: {h1.n} and {h2.n}")
    pa = (_adj_poly(h1), _adj_poly(h2))
    pl = (charpoly_exact(laplacian(h1)), charpoly_exact(laplacian(h2)))
    polys = {"adjacency": pa, "laplacian": pl}
    zero = [i + 1 for i, h in enumerate((h1, h2)) if any(z == 0 for z in valencies(h))]
    if zero:
        norm = None
        note = "normalized Laplacian undefined: zero valency in hypergraph " + ", ".join(map(str, zero))
    else:
        pn = (charpoly_exact(similar_rational(h1)), charpoly_exact(similar_rational(h2)))
        polys["normalized"] = pn
        norm = pn[0] == pn[1]
        note = ""
    return CospectralReport(pa[0] == pa[1], pl[0] == pl[1], norm, polys, note)


def _check_slots(pairs: Sequence[tuple[Hypergraph, Hypergraph]]) -> None:
    for i, (a, b) in enumerate(pairs, start=1):
        ra, rb = is_regular(a), is_regular(b)
        if ra is None or rb is None:
            raise CospectralError(f"slot {i}: constituents must be regular")
        if ra != rb:
            raise CospectralError(f"slot {i}: valencies {ra} and {rb} differ")
        if a.n != b.n or _adj_poly(a) != _adj_poly(b):
            raise CospectralError(f"slot {i}: adjacency characteristic polynomials differ")


def cospectral_join_family(
    pairs: Sequence[tuple[Hypergraph, Hypergraph]], f: EdgeFamily, w: WeightTable
) -> tuple[Hypergraph, Hypergraph]:
    """Join both sides of every slot with the same family and weights."""
    _check_slots(pairs)
    if isinstance(cross_counts(f), NonConstant):
        raise CospectralError("the family does not have constant pair counts")
    left = tensor_join([a for a, _ in pairs], f, w)
    right = tensor_join([b for _, b in pairs], f, w)
    return left, right


def cospectral_backbone_join(
    h: Hypergraph, pairs: Sequence[tuple[Hypergraph, Hypergraph]], families, w: WeightTable
) -> tuple[Hypergraph, Hypergraph]:
    """Backbone version: each per-edge family needs constant pair counts."""
    _check_slots(pairs)
    fams = list(families.values()) if isinstance(families, Mapping) else list(families)
    for f in fams:
        if isinstance(cross_counts(f), NonConstant):
            raise CospectralError("a backbone family does not have constant pair counts")
    return backbone_join(h, [a for a, _ in pairs], families, w), backbone_join(h, [b for _, b in pairs], families, w)


@dataclass
class SearchReport:
    m: int
    max_n: int
    scales: list[tuple[int, int]] = field(default_factory=list)  # (n, classes enumerated)
    pairs: list[tuple[Hypergraph, Hypergraph]] = field(default_factory=list)
    found_at: Optional[int] = None

    def summary(self) -> str:
        done = ", ".join(f"n={n}: {c} classes" for n, c in self.scales)
        if self.found_at is None:
            return f"none found for m={self.m} up to n={self.max_n} ({done})"
        return f"{len(self.pairs)} pair(s) at n={self.found_at} for m={self.m} ({done})"


def search(m: int, max_n: int = MAX_VERTICES, min_n: Optional[int] = None, regular_r=True) -> SearchReport:
    """Regular ``m``-uniform A-cospectral pairs, by increasing ``n``.

    Stops at the first ``n`` that yields a pair. Edgeless hypergraphs are
    skipped since they carry no structure.
    """
    _check_size(max_n)
    report = SearchReport(m, max_n)
    for n in range(min_n if min_n is not None else m, max_n + 1):
        hs = [h for h in enumerate_hypergraphs(n, {m}, uniform_m=m, regular_r=regular_r) if h.edges]
        report.scales.append((n, len(hs)))
        pairs = [(a, b) for a, b in find_cospectral_pairs(hs) if is_regular(a) == is_regular(b)]
        if pairs:
            report.pairs = pairs
            report.found_at = n
            break
    return report


def _poly_line(name: str, p: RationalPoly) -> str:
    from .hgr import format_fraction

    return f"# {name} " + " ".join(format_fraction(c) for c in p.descending())


def write_certificate(directory, stem: str, h1: Hypergraph, h2: Hypergraph, w: Optional[WeightTable] = None) -> tuple[str, str]:
    """Write both hypergraphs as hgr files whose header comments carry the
    shared characteristic polynomials (descending coefficients)."""
    rep = verify(h1, h2)
    os.makedirs(directory, exist_ok=True)
    paths = []
    for tag, h in (("a", h1), ("b", h2)):
        lines = [f"# cospectral certificate {stem}, member {tag}"]
        for name in ("adjacency", "laplacian", "normalized"):
            if name in rep.polys:
                p, q = rep.polys[name]
                status = "shared" if p == q else "differs"
                lines.append(_poly_line(f"{name} ({status})", p if tag == "a" else q))
        path = os.path.join(str(directory), f"{stem}_{tag}.hgr")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n" + serialize_hgr(h, w))
        paths.append(path)
    return paths[0], paths[1]
