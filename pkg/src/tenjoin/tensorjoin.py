"""Indicating tensors as edge families, and the joins built from them.

An indicating tensor is never stored as a dense array. Its symmetry makes it
equivalent to the set of vertex subsets it marks, so everything here works on
that set (an :class:`EdgeFamily`). Families are always canonically sorted.
"""

from __future__ import annotations

import enum
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .hypercore import (
    Edge,
    Hypergraph,
    HypergraphError,
    WeightTable,
    complete,
    disjoint_union,
    reweight,
    s_complement,
    total_complement,
)

__all__ = [
    "FamilyError",
    "FamilyTooLarge",
    "ClassSequence",
    "EdgeFamily",
    "FamilyKind",
    "ConstantCounts",
    "NonConstant",
    "family_explicit",
    "family_b_spanning",
    "family_uniform_max",
    "family_full",
    "family_aligned",
    "family_identity",
    "family_backbone",
    "family_minus",
    "family_plus",
    "cross_counts",
    "tensor_join",
    "backbone_join",
    "star_join",
    "flatten",
    "subset_families",
    "split_to_backbone",
    "decompose",
    "mjoin_convert",
    "family_to_mjoin",
    "ConstituentKind",
    "constituent",
    "two_copy_family",
    "two_copy_join",
    "KCopyOp",
    "k_copy_join",
    "lexicographic_product",
    "strong_partite",
    "max_family_size",
]

DEFAULT_MAX_FAMILY = 10**6


class FamilyError(ValueError):
    pass


class FamilyTooLarge(FamilyError):
    pass


def max_family_size() -> int:
    raw = os.environ.get("TENJOIN_MAX_FAMILY")
    return int(raw) if raw else DEFAULT_MAX_FAMILY


def _guard(count: int, allow_huge: bool) -> None:
    limit = max_family_size()
    if count > limit and not allow_huge:
        raise FamilyTooLarge(
            f"family would have {count} members (limit {limit}); "
            "pass allow_huge=True or raise TENJOIN_MAX_FAMILY"
        )


@dataclass(frozen=True)
class ClassSequence:
    """Ordered, pairwise disjoint vertex classes with a fixed order inside each."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cls = tuple(tuple(int(v) for v in c) for c in self.classes)
        seen: set[int] = set()
        for i, c in enumerate(cls):
            if not c:
                raise FamilyError(f"class {i + 1} is empty")
            for v in c:
                if v in seen:
                    raise FamilyError(f"vertex {v} appears in two classes or twice")
                seen.add(v)
        object.__setattr__(self, "classes", cls)

    @classmethod
    def consecutive(cls, sizes: Sequence[int], start: int = 1) -> "ClassSequence":
        out, v = [], start
        for s in sizes:
            out.append(tuple(range(v, v + s)))
            v += s
        return cls(tuple(out))

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def vertices(self) -> tuple[int, ...]:
        return tuple(v for c in self.classes for v in c)

    def class_of(self) -> dict[int, int]:
        """Vertex to 0-based class index."""
        return {v: i for i, c in enumerate(self.classes) for v in c}

    def restrict(self, idx: Iterable[int]) -> "ClassSequence":
        return ClassSequence(tuple(self.classes[i] for i in idx))

    def equal_sizes(self) -> int:
        sz = set(self.sizes)
        if len(sz) != 1:
            raise FamilyError(f"classes must have equal sizes, got {self.sizes}")
        return sz.pop()


def _member_key(m: tuple[int, ...]):
    return (len(m), m)


@dataclass(frozen=True)
class EdgeFamily:
    classes: ClassSequence
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        where = self.classes.class_of()
        canon = []
        for m in self.members:
            s = tuple(sorted(m))
            if len(set(s)) != len(s):
                raise FamilyError(f"member {m} repeats a vertex")
            if len(s) < 2:
                raise FamilyError(f"member {s} has fewer than two vertices")
            for v in s:
                if v not in where:
                    raise FamilyError(f"member {s} uses vertex {v} outside every class")
            if len({where[v] for v in s}) < 2:
                raise FamilyError(f"member {s} lies inside a single class")
            canon.append(s)
        canon.sort(key=_member_key)
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise FamilyError(f"duplicate member {a}")
        object.__setattr__(self, "members", tuple(canon))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in set(self.members)

    def touched(self, member: tuple[int, ...]) -> frozenset[int]:
        where = self.classes.class_of()
        return frozenset(where[v] for v in member)


class FamilyKind(enum.Enum):
    EXPLICIT = "explicit"
    UNIFORM_MAX = "uniform"
    B_SPANNING = "bspan"
    FULL = "full"
    ALIGNED = "aligned"
    IDENTITY = "identity"
    BACKBONE = "backbone"
    FULL_MINUS_ALIGNED = "full-minus-aligned"
    FULL_MINUS_IDENTITY = "full-minus-identity"
    BACKBONE_PLUS_ALIGNED = "backbone-plus-aligned"


# -- family constructors ---------------------------------------------------


def family_explicit(cs: ClassSequence, subsets: Iterable[Iterable[int]]) -> EdgeFamily:
    return EdgeFamily(cs, tuple(tuple(s) for s in subsets))


def _class_masks(cs: ClassSequence) -> tuple[np.ndarray, np.ndarray]:
    """Bit masks per class over the concatenated vertex order, plus that order."""
    verts = np.array(cs.vertices(), dtype=np.int64)
    masks, pos = [], 0
    for size in cs.sizes:
        masks.append(((1 << size) - 1) << pos)
        pos += size
    return np.array(masks, dtype=np.int64), verts


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


def _masks_to_members(masks: np.ndarray, verts: np.ndarray) -> list[tuple[int, ...]]:
    n = len(verts)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(bool)
    return [tuple(int(v) for v in verts[row]) for row in bits]


def _subset_masks(cs: ClassSequence, sizes_wanted: Optional[set[int]], spanning: bool) -> np.ndarray:
    total = cs.total
    if total > 40:
        raise FamilyTooLarge(f"{total} vertices is beyond bitmask enumeration")
    cmasks, _ = _class_masks(cs)
    allm = np.arange(1, 1 << total, dtype=np.int64)
    pc = _popcount(allm)
    keep = pc >= 2
    if sizes_wanted is not None:
        keep &= np.isin(pc, sorted(sizes_wanted))
    hits = np.stack([(allm & cm) != 0 for cm in cmasks])
    if spanning:
        keep &= hits.all(axis=0)
    else:
        keep &= hits.sum(axis=0) >= 2
    return allm[keep]


def _count_subsets(sizes: Sequence[int], cards: Iterable[int], spanning: bool) -> int:
    """Number of members a mask-based constructor would produce."""
    total = sum(sizes)
    out = 0
    for c in cards:
        if spanning:
            # inclusion-exclusion over classes missed
            k = len(sizes)
            acc = 0
            for r in range(k + 1):
                for missed in combinations(range(k), r):
                    rest = total - sum(sizes[i] for i in missed)
                    acc += (-1) ** r * comb(rest, c)
            out += acc
        else:
            out += comb(total, c) - sum(comb(s, c) for s in sizes)
    return out


def _from_masks(cs: ClassSequence, masks: np.ndarray) -> EdgeFamily:
    _, verts = _class_masks(cs)
    return EdgeFamily(cs, tuple(_masks_to_members(masks, verts)))


def family_b_spanning(cs: ClassSequence, B: Iterable[int], allow_huge: bool = False) -> EdgeFamily:
    """Subsets with cardinality in ``B`` that meet every class."""
    B = set(int(b) for b in B)
    if not B:
        raise FamilyError("B must be non-empty")
    for b in B:
        if not cs.k <= b <= cs.total:
            raise FamilyError(f"cardinality {b} outside {cs.k}..{cs.total}")
    _guard(_count_subsets(cs.sizes, B, True), allow_huge)
    return _from_masks(cs, _subset_masks(cs, B, spanning=True))


def family_uniform_max(cs: ClassSequence, m: int, allow_huge: bool = False) -> EdgeFamily:
    """All ``m``-subsets not contained in a single class."""
    if not 2 <= m <= cs.total:
        raise FamilyError(f"m={m} outside 2..{cs.total}")
    _guard(_count_subsets(cs.sizes, [m], False), allow_huge)
    return _from_masks(cs, _subset_masks(cs, {m}, spanning=False))


def family_full(cs: ClassSequence, allow_huge: bool = False) -> EdgeFamily:
    """Every subset of size at least two that crosses classes."""
    _guard(_count_subsets(cs.sizes, range(2, cs.total + 1), False), allow_huge)
    return _from_masks(cs, _subset_masks(cs, None, spanning=False))


def family_aligned(cs: ClassSequence, r: int) -> EdgeFamily:
    """For each r-set of positions, the union of those positions in every class."""
    n = cs.equal_sizes()
    if not 1 <= r <= n:
        raise FamilyError(f"r={r} outside 1..{n}")
    members = [
        tuple(c[l] for c in cs.classes for l in L) for L in combinations(range(n), r)
    ]
    return EdgeFamily(cs, tuple(members))


def family_identity(cs: ClassSequence) -> EdgeFamily:
    return family_aligned(cs, 1)


def _surjections(size: int, k: int):
    for f in product(range(k), repeat=size):
        if len(set(f)) == k:
            yield f


def family_backbone(cs: ClassSequence, h: Hypergraph) -> EdgeFamily:
    """Ordered partitions of each edge of ``h`` spread over the classes."""
    n = cs.equal_sizes()
    k = cs.k
    if h.n != n:
        raise FamilyError(f"backbone has {h.n} vertices, classes have {n}")
    if not h.edges:
        return EdgeFamily(cs, ())
    corank = min(e.size for e in h.edges)
    if not 1 < k <= corank:
        raise FamilyError(f"need 1 < k <= corank(h) = {corank}, got k={k}")
    members = set()
    for e in h.edges:
        for f in _surjections(e.size, k):
            members.add(tuple(sorted(cs.classes[f[t]][l - 1] for t, l in enumerate(e.vertices))))
    return EdgeFamily(cs, tuple(members))


def family_minus(f: EdgeFamily, g: EdgeFamily) -> EdgeFamily:
    if f.classes != g.classes:
        raise FamilyError("families use different class sequences")
    fs = set(f.members)
    missing = [m for m in g.members if m not in fs]
    if missing:
        raise FamilyError(f"member {missing[0]} of the subtrahend is not in the family")
    gs = set(g.members)
    return EdgeFamily(f.classes, tuple(m for m in f.members if m not in gs))


def family_plus(f: EdgeFamily, g: EdgeFamily) -> EdgeFamily:
    if f.classes != g.classes:
        raise FamilyError("families use different class sequences")
    common = set(f.members) & set(g.members)
    if common:
        raise FamilyError(f"families overlap in {min(common)}")
    return EdgeFamily(f.classes, f.members + g.members)


# -- pair counts -------------------------------------------------------------


@dataclass(frozen=True)
class ConstantCounts:
    """``counts[(i, j, c)]`` for 1-based classes ``i <= j``; absent keys are 0."""

    counts: Mapping[tuple[int, int, int], int]

    def get(self, i: int, j: int, c: int) -> int:
        if i > j:
            i, j = j, i
        return self.counts.get((i, j, c), 0)

    def cardinalities(self) -> list[int]:
        return sorted({c for (_, _, c) in self.counts})


@dataclass(frozen=True)
class NonConstant:
    i: int
    j: int
    c: int
    first: tuple[int, int, int]  # (p, q, count)
    second: tuple[int, int, int]


def _incidence(members: Sequence[tuple[int, ...]], index: Mapping[int, int], n: int) -> np.ndarray:
    inc = np.zeros((len(members), n), dtype=np.int64)
    for r, m in enumerate(members):
        inc[r, [index[v] for v in m]] = 1
    return inc


def cross_counts(f: EdgeFamily) -> Union[ConstantCounts, NonConstant]:
    """Per class pair and cardinality, the number of members through a vertex pair."""
    cs = f.classes
    verts = cs.vertices()
    index = {v: t for t, v in enumerate(verts)}
    bounds = np.cumsum((0,) + cs.sizes)
    by_size: dict[int, list] = defaultdict(list)
    for m in f.members:
        by_size[len(m)].append(m)
    out: dict[tuple[int, int, int], int] = {}
    for c in sorted(by_size):
        inc = _incidence(by_size[c], index, len(verts))
        pairs = inc.T @ inc
        for i in range(cs.k):
            for j in range(i, cs.k):
                block = pairs[bounds[i]:bounds[i + 1], bounds[j]:bounds[j + 1]]
                if i == j:
                    if block.shape[0] < 2:
                        continue
                    vals = block[~np.eye(block.shape[0], dtype=bool)]
                else:
                    vals = block.ravel()
                lo, hi = int(vals.min()), int(vals.max())
                if lo != hi:
                    a = np.argwhere(block == lo)
                    b = np.argwhere(block == hi)
                    a = next(x for x in a if i != j or x[0] != x[1])
                    b = next(x for x in b if i != j or x[0] != x[1])
                    return NonConstant(
                        i + 1, j + 1, c,
                        (cs.classes[i][a[0]], cs.classes[j][a[1]], lo),
                        (cs.classes[i][b[0]], cs.classes[j][b[1]], hi),
                    )
                if lo:
                    out[(i + 1, j + 1, c)] = lo
    return ConstantCounts(out)


# -- joins -------------------------------------------------------------------


def _placement(gs: Sequence[Hypergraph], cs: ClassSequence) -> list[Edge]:
    """Constituent edges moved onto the class vertex ids."""
    if cs.k != len(gs):
        raise FamilyError(f"{len(gs)} constituents but {cs.k} classes")
    for i, (g, c) in enumerate(zip(gs, cs.classes)):
        if g.n != len(c):
            raise FamilyError(f"constituent {i + 1} has {g.n} vertices, class has {len(c)}")
    if sorted(cs.vertices()) != list(range(1, cs.total + 1)):
        raise FamilyError("classes must partition 1..N to host a join")
    edges = []
    for g, c in zip(gs, cs.classes):
        for e in g.edges:
            edges.append(Edge(tuple(sorted(c[v - 1] for v in e.vertices)), e.weight))
    return edges


def tensor_join(gs: Sequence[Hypergraph], f: EdgeFamily, w: WeightTable) -> Hypergraph:
    """Constituents plus one new edge per family member, weighted by size.

    Vertex ``v`` of constituent ``i`` becomes ``f.classes.classes[i][v-1]``;
    with consecutive classes that is the usual offset numbering.
    """
    edges = _placement(gs, f.classes)
    edges.extend(Edge(m, w(len(m))) for m in f.members)
    return Hypergraph(f.classes.total, tuple(edges))


def _backbone_keys(h: Hypergraph, families) -> list:
    if isinstance(families, Mapping):
        return [families[i] for i in range(len(h.edges))]
    fam = list(families)
    if len(fam) != len(h.edges):
        raise FamilyError(f"{len(fam)} families for {len(h.edges)} backbone edges")
    return fam


def _check_backbone_family(e: Edge, fam: EdgeFamily, where: Mapping[int, int]) -> None:
    want = frozenset(i - 1 for i in e.vertices)
    for m in fam.members:
        got = frozenset(where[v] for v in m)
        if got != want:
            raise FamilyError(
                f"member {m} touches classes {sorted(x + 1 for x in got)}, "
                f"backbone edge is {e.vertices}"
            )


def backbone_join(
    h: Hypergraph,
    gs: Sequence[Hypergraph],
    families,
    w: WeightTable,
) -> Hypergraph:
    """Join guided by a backbone hypergraph on the constituent indices.

    ``families`` lists one family per edge of ``h`` (in ``h.edges`` order, or
    a mapping from edge index). Each family lives on the global consecutive
    numbering, and every member must meet every class of its backbone edge.
    Members are weighted by their own cardinality. Members produced by two
    backbone edges are kept as parallel edges.
    """
    if h.n != len(gs):
        raise FamilyError(f"backbone has {h.n} vertices but {len(gs)} constituents")
    cs = ClassSequence.consecutive([g.n for g in gs])
    where = cs.class_of()
    edges = _placement(gs, cs)
    for e, fam in zip(h.edges, _backbone_keys(h, families)):
        _check_backbone_family(e, fam, where)
        edges.extend(Edge(m, w(len(m))) for m in fam.members)
    return Hypergraph(cs.total, tuple(edges))


def star_join(
    gs: Sequence[Hypergraph],
    families: Mapping[frozenset, EdgeFamily],
    w: WeightTable,
    spanning: bool = True,
) -> Hypergraph:
    """Join with one family per set ``S`` of class indices (0-based).

    With ``spanning`` every member of the family for ``S`` must meet every
    class of ``S``. Without it members only need to stay inside the classes
    of ``S``, and the families are combined as a multiset.
    """
    cs = ClassSequence.consecutive([g.n for g in gs])
    where = cs.class_of()
    edges = _placement(gs, cs)
    for S in sorted(families, key=lambda s: (len(s), sorted(s))):
        fam = families[S]
        for m in fam.members:
            got = frozenset(where[v] for v in m)
            if spanning and got != S or not got <= S:
                raise FamilyError(f"member {m} does not fit the class set {sorted(S)}")
            edges.append(Edge(m, w(len(m))))
    return Hypergraph(cs.total, tuple(edges))


def flatten(cs: ClassSequence, families: Iterable[EdgeFamily]) -> EdgeFamily:
    """Merge families on sub-sequences of ``cs`` into one family (set union)."""
    members: set[tuple[int, ...]] = set()
    for fam in families:
        members.update(fam.members)
    return EdgeFamily(cs, tuple(members))


def subset_families(f: EdgeFamily) -> dict[frozenset, EdgeFamily]:
    """Split by the (0-based) set of classes each member touches."""
    groups: dict[frozenset, list] = defaultdict(list)
    where = f.classes.class_of()
    for m in f.members:
        groups[frozenset(where[v] for v in m)].append(m)
    return {S: EdgeFamily(f.classes, tuple(ms)) for S, ms in sorted(groups.items(), key=lambda kv: sorted(kv[0]))}


def split_to_backbone(f: EdgeFamily) -> tuple[Hypergraph, list[EdgeFamily]]:
    """Backbone on ``[k]`` with one edge per touched class set, and its families."""
    parts = subset_families(f)
    h = Hypergraph(f.classes.k, tuple(Edge(tuple(sorted(i + 1 for i in S)), Fraction(1)) for S in parts))
    lookup = {tuple(sorted(i + 1 for i in S)): fam for S, fam in parts.items()}
    return h, [lookup[e.vertices] for e in h.edges]


def decompose(
    h: Hypergraph, partition: Sequence[Iterable[int]]
) -> tuple[list[Hypergraph], EdgeFamily, WeightTable]:
    """Write ``h`` as a tensor join over the given vertex partition.

    Returns the induced constituents, the family of crossing edges (classes
    carry the original vertex ids) and the weight table that reproduces the
    crossing edges. ``tensor_join`` of these gives back ``h`` exactly.
    """
    parts = [tuple(sorted(p)) for p in partition]
    cs = ClassSequence(tuple(parts))
    if sorted(cs.vertices()) != list(h.vertices):
        raise FamilyError("partition must cover the vertices exactly once")
    where = cs.class_of()
    pos = {v: t + 1 for c in parts for t, v in enumerate(c)}
    inner: list[list[Edge]] = [[] for _ in parts]
    cross: list[Edge] = []
    for e in h.edges:
        touched = {where[v] for v in e.vertices}
        if len(touched) == 1:
            i = touched.pop()
            inner[i].append(Edge(tuple(sorted(pos[v] for v in e.vertices)), e.weight))
        else:
            cross.append(e)
    weights: dict[int, Fraction] = {}
    for e in cross:
        prev = weights.setdefault(e.size, e.weight)
        if prev != e.weight:
            raise FamilyError(
                f"crossing edges of size {e.size} carry weights {prev} and {e.weight}; "
                "one weight per cardinality is required"
            )
    counts = Counter(e.vertices for e in cross)
    dup = [s for s, c in counts.items() if c > 1]
    if dup:
        raise FamilyError(f"crossing edge {dup[0]} repeats; a family is a set")
    gs = [Hypergraph(len(c), tuple(es)) for c, es in zip(parts, inner)]
    fam = EdgeFamily(cs, tuple(e.vertices for e in cross))
    return gs, fam, WeightTable(weights)


def mjoin_convert(cs: ClassSequence, matrices: Mapping[tuple[int, int], np.ndarray]) -> EdgeFamily:
    """0-1 matrices ``M[(i, j)]`` (1-based, i < j) to the family of cross pairs."""
    members = []
    for (i, j), m in matrices.items():
        if not 1 <= i < j <= cs.k:
            raise FamilyError(f"matrix index {(i, j)} out of range")
        m = np.asarray(m)
        if m.shape != (cs.sizes[i - 1], cs.sizes[j - 1]):
            raise FamilyError(f"matrix {(i, j)} has shape {m.shape}")
        if not np.isin(m, (0, 1)).all():
            raise FamilyError(f"matrix {(i, j)} is not 0-1")
        for r, t in zip(*np.nonzero(m)):
            members.append((cs.classes[i - 1][r], cs.classes[j - 1][t]))
    return EdgeFamily(cs, tuple(members))


def family_to_mjoin(f: EdgeFamily) -> dict[tuple[int, int], np.ndarray]:
    cs = f.classes
    where = cs.class_of()
    pos = {v: t for c in cs.classes for t, v in enumerate(c)}
    out = {
        (i + 1, j + 1): np.zeros((cs.sizes[i], cs.sizes[j]), dtype=np.int64)
        for i in range(cs.k)
        for j in range(i + 1, cs.k)
    }
    for m in f.members:
        if len(m) != 2:
            raise FamilyError(f"member {m} is not a pair")
        p, q = sorted(m, key=lambda v: where[v])
        out[(where[p] + 1, where[q] + 1)][pos[p], pos[q]] = 1
    return out


# -- named constructions -----------------------------------------------------


class ConstituentKind(enum.Enum):
    SELF = "H"
    COMPLEMENT = "Hc"
    COMPLETE = "Kn"
    EMPTY = "Knc"
    TOTAL_COMPLEMENT = "Hbar"


def constituent(h: Hypergraph, kind: ConstituentKind, w: WeightTable) -> Hypergraph:
    """One of the five hypergraphs derived from ``h``, all weighted by ``w``."""
    kind = ConstituentKind(kind)
    if kind is ConstituentKind.SELF:
        return reweight(h, w)
    if kind is ConstituentKind.COMPLEMENT:
        return s_complement(h, w)
    if kind is ConstituentKind.COMPLETE:
        return complete(h.n, w) if h.n >= 2 else Hypergraph(h.n)
    if kind is ConstituentKind.EMPTY:
        return Hypergraph(h.n)
    return total_complement(h, w)


def two_copy_family(n: int, kind: FamilyKind, r: int = 1) -> EdgeFamily:
    cs = ClassSequence.consecutive([n, n])
    kind = FamilyKind(kind)
    if kind is FamilyKind.ALIGNED:
        return family_aligned(cs, r)
    if kind is FamilyKind.IDENTITY:
        return family_identity(cs)
    if kind is FamilyKind.FULL:
        return family_full(cs)
    if kind is FamilyKind.FULL_MINUS_ALIGNED:
        return family_minus(family_full(cs), family_aligned(cs, r))
    if kind is FamilyKind.FULL_MINUS_IDENTITY:
        return family_minus(family_full(cs), family_identity(cs))
    raise FamilyError(f"{kind} is not a two-copy family")


def two_copy_join(
    h: Hypergraph,
    g1: ConstituentKind,
    g2: ConstituentKind,
    kind: FamilyKind,
    w: WeightTable,
    r: int = 1,
) -> Hypergraph:
    gs = [constituent(h, g1, w), constituent(h, g2, w)]
    return tensor_join(gs, two_copy_family(h.n, kind, r), w)


class KCopyOp(enum.Enum):
    MIRROR = "mirror"
    JOIN_NEIGHBOURHOOD = "join"
    VC_NEIGHBOURHOOD = "vc"


def k_copy_join(h: Hypergraph, k: int, op: KCopyOp, l: int, w: WeightTable, r: int = 1) -> Hypergraph:
    """``k`` copies of ``h`` with a family on every ``l``-set of copies.

    Each ``l``-set of copies receives the aligned, full, or full-minus-aligned
    family on those copies; the contributions are combined as a multiset.
    """
    op = KCopyOp(op)
    if not 2 <= l <= k:
        raise FamilyError(f"need 2 <= l <= k, got l={l}, k={k}")
    gs = [h] * k
    cs = ClassSequence.consecutive([h.n] * k)
    fams: dict[frozenset, EdgeFamily] = {}
    for S in combinations(range(k), l):
        sub = cs.restrict(S)
        if op is KCopyOp.MIRROR:
            fam = family_aligned(sub, r)
        elif op is KCopyOp.JOIN_NEIGHBOURHOOD:
            fam = family_full(sub)
        else:
            fam = family_minus(family_full(sub), family_aligned(sub, r))
        fams[frozenset(S)] = fam
    return star_join(gs, fams, w, spanning=False)


def lexicographic_product(h: Hypergraph, h2: Hypergraph, w: WeightTable) -> Hypergraph:
    """Backbone ``h`` over copies of ``h2``; each edge picks one vertex per class."""
    gs = [h2] * h.n
    cs = ClassSequence.consecutive([h2.n] * h.n)
    fams = []
    for e in h.edges:
        sub = cs.restrict([i - 1 for i in e.vertices])
        fams.append(EdgeFamily(cs, tuple(product(*sub.classes))) if e.size >= 2 else None)
    if any(f is None for f in fams):
        raise FamilyError("backbone loops are not allowed")
    return backbone_join(h, gs, fams, w)


def strong_partite(sizes: Sequence[int], m: Optional[int], w: WeightTable) -> Hypergraph:
    """Edgeless classes; every ``m``-set (or every set of size >= 2) of classes
    gets all transversals picking one vertex per chosen class."""
    k = len(sizes)
    if m is not None and not 2 <= m <= k:
        raise FamilyError(f"need 2 <= m <= k={k}, got m={m}")
    cs = ClassSequence.consecutive(sizes)
    members = []
    cards = [m] if m is not None else range(2, k + 1)
    for c in cards:
        for S in combinations(range(k), c):
            members.extend(product(*(cs.classes[i] for i in S)))
    return tensor_join([Hypergraph(s) for s in sizes], EdgeFamily(cs, tuple(members)), w)
