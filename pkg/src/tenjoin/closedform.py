"""Closed-form characteristic polynomials of tensor joins.

Every result is a :class:`CharPolyFactored`: exact linear factors, exact
polynomial factors (typically the image of a constituent's non-perron part),
and a small quotient matrix. ``expand()`` multiplies everything out so it can
be compared coefficient by coefficient with ``charpoly_exact`` of the matrix
built directly.

Matrix kinds are handled on one exact track. The normalized Laplacian is
represented by the similar rational matrix ``D^{-1} L``, so its closed form is
an exact polynomial too; a floating symmetric quotient is also available.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .counting import k_copy_constants, n_cross, p1, p2, q_cross, x1x2
from .eigen import charpoly_exact, co_eigen, eig_sym
from .hypercore import (
    Hypergraph,
    WeightTable,
    is_regular,
    is_uniform,
    mu_sum,
    reweight,
    valency_sum,
)
from .matrices import MatrixKind, RatMatrix, adjacency, float_matrix_of, matrix_of
from .poly import RationalPoly, as_fraction
from .tensorjoin import (
    ConstantCounts,
    ConstituentKind,
    EdgeFamily,
    FamilyKind,
    KCopyOp,
    NonConstant,
    cross_counts,
)

__all__ = [
    "ClosedFormError",
    "CharPolyFactored",
    "Constituent",
    "JoinSpec",
    "TableValues",
    "table_values",
    "block_spectrum",
    "join_charpoly",
    "uniform_join_charpoly",
    "backbone_join_charpoly",
    "two_copy_constants",
    "two_copy_charpoly",
    "two_copy_spectrum_coeigen",
    "two_copy_equal_charpoly",
    "k_copy_charpoly",
    "k_copy_scaled_product",
    "lexicographic_charpoly",
    "lexicographic_uniform_charpoly",
    "strong_partite_charpoly",
    "CatalogRow",
    "catalog_charpoly",
    "certify",
    "Certificate",
]

X = RationalPoly.x()


class ClosedFormError(ValueError):
    pass


@dataclass
class CharPolyFactored:
    roots: list[tuple[Fraction, int]] = field(default_factory=list)
    factors: list[tuple[RationalPoly, int]] = field(default_factory=list)
    quotient: Optional[RatMatrix] = None
    valencies: list[Fraction] = field(default_factory=list)
    float_quotient: Optional[np.ndarray] = None

    @property
    def degree(self) -> int:
        d = sum(m for _, m in self.roots) + sum(p.degree * m for p, m in self.factors)
        return d + (self.quotient.order if self.quotient is not None else 0)

    def quotient_poly(self) -> RationalPoly:
        return charpoly_exact(self.quotient) if self.quotient is not None else RationalPoly.one()

    def expand(self) -> RationalPoly:
        out = self.quotient_poly()
        for root, m in self.roots:
            out = out * RationalPoly.linear_root(root) ** m
        for p, m in self.factors:
            out = out * p**m
        return out

    def spectrum(self) -> np.ndarray:
        vals: list[float] = []
        for root, m in self.roots:
            vals.extend([float(root)] * m)
        for p, m in self.factors:
            vals.extend(list(p.float_roots()) * m)
        if self.quotient is not None:
            if self.float_quotient is not None:
                vals.extend(np.real(np.linalg.eigvals(self.float_quotient)).tolist())
            else:
                vals.extend(self.quotient_poly().float_roots().tolist())
        return np.sort(np.array(vals, dtype=float))

    def split_rational(self) -> "CharPolyFactored":
        """Move every rational root of the polynomial factors into ``roots``."""
        roots = dict(self.roots)
        factors = []
        for p, m in self.factors:
            found, rest = p.rational_roots()
            for r, k in found:
                roots[r] = roots.get(r, 0) + k * m
            if rest.degree > 0:
                factors.append((rest, m))
        return CharPolyFactored(sorted(roots.items()), factors, self.quotient, self.valencies, self.float_quotient)


def _add_root(roots: dict, r, m: int = 1) -> None:
    r = as_fraction(r)
    roots[r] = roots.get(r, 0) + m


# -- constituents and specs ---------------------------------------------------


@dataclass(frozen=True)
class Constituent:
    """What the closed forms need from a regular constituent."""

    n: int
    r: Fraction
    charpoly: RationalPoly  # of its adjacency matrix

    @classmethod
    def from_hypergraph(cls, g: Hypergraph) -> "Constituent":
        r = is_regular(g)
        if r is None:
            raise ClosedFormError("constituent is not regular")
        return cls(g.n, r, charpoly_exact(adjacency(g)))

    @classmethod
    def edgeless(cls, n: int) -> "Constituent":
        return cls(n, Fraction(0), X**n)

    def non_perron(self) -> RationalPoly:
        """The adjacency charpoly with one factor ``x - r`` removed."""
        try:
            return self.charpoly.exact_div(RationalPoly.linear_root(self.r))
        except ArithmeticError:
            raise ClosedFormError(f"valency {self.r} is not an adjacency eigenvalue") from None


@dataclass(frozen=True)
class JoinSpec:
    constituents: tuple[Constituent, ...]
    counts: ConstantCounts
    w: WeightTable
    kind: MatrixKind = MatrixKind.ADJACENCY

    @classmethod
    def from_join(cls, gs: Sequence[Hypergraph], f: EdgeFamily, w: WeightTable, kind=MatrixKind.ADJACENCY) -> "JoinSpec":
        counts = cross_counts(f)
        if isinstance(counts, NonConstant):
            raise ClosedFormError(
                f"pair counts differ between ({counts.first[0]}, {counts.first[1]}) and "
                f"({counts.second[0]}, {counts.second[1]}) for classes {counts.i},{counts.j}, size {counts.c}"
            )
        return cls(tuple(Constituent.from_hypergraph(g) for g in gs), counts, w, MatrixKind.parse(kind))

    @property
    def k(self) -> int:
        return len(self.constituents)

    def coverage(self) -> list[list[Fraction]]:
        """``s[i][j] = sum_c w_c n_ij^(c) / (c - 1)``, 0-based."""
        k = self.k
        s = [[Fraction(0)] * k for _ in range(k)]
        for (i, j, c), cnt in self.counts.counts.items():
            if not (1 <= i <= k and 1 <= j <= k):
                raise ClosedFormError(f"count for classes ({i},{j}) outside 1..{k}")
            v = self.w(c) * cnt / (c - 1)
            s[i - 1][j - 1] += v
            if i != j:
                s[j - 1][i - 1] += v
        return s

    def valencies(self) -> list[Fraction]:
        s = self.coverage()
        out = []
        for i, g in enumerate(self.constituents):
            z = g.r + (g.n - 1) * s[i][i]
            z += sum(self.constituents[j].n * s[i][j] for j in range(self.k) if j != i)
            out.append(z)
        return out


@dataclass(frozen=True)
class TableValues:
    """Per-class coefficients: a non-perron eigenvalue ``lam`` of constituent
    ``i`` becomes ``alpha[i] * lam + beta[i]``, and ``gamma[i]`` multiplies
    the all-ones block. ``delta`` scales the cross blocks."""

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    delta: tuple[tuple[float, ...], ...]
    cross: tuple[tuple[Fraction, ...], ...]  # exact per-pair entry of the cross block
    z: tuple[Fraction, ...]


def table_values(spec: JoinSpec) -> TableValues:
    s = spec.coverage()
    z = spec.valencies()
    k = spec.k
    kind = spec.kind
    if kind is MatrixKind.ADJACENCY:
        alpha = [Fraction(1)] * k
        gamma = [s[i][i] for i in range(k)]
        beta = [-g for g in gamma]
        delta = [[1.0] * k for _ in range(k)]
        cross = [[s[i][j] for j in range(k)] for i in range(k)]
    elif kind is MatrixKind.LAPLACIAN:
        alpha = [Fraction(-1)] * k
        gamma = [-s[i][i] for i in range(k)]
        beta = [z[i] - gamma[i] for i in range(k)]
        delta = [[-1.0] * k for _ in range(k)]
        cross = [[-s[i][j] for j in range(k)] for i in range(k)]
    else:
        for i, zi in enumerate(z):
            if zi <= 0:
                raise ClosedFormError(f"class {i + 1} has valency {zi}; normalized Laplacian undefined")
        alpha = [-1 / z[i] for i in range(k)]
        gamma = [-s[i][i] / z[i] for i in range(k)]
        beta = [1 - gamma[i] for i in range(k)]
        delta = [[-1.0 / math.sqrt(float(z[i]) * float(z[j])) for j in range(k)] for i in range(k)]
        # exact track works on D^{-1} L, whose cross blocks are row-scaled
        cross = [[-s[i][j] / z[i] for j in range(k)] for i in range(k)]
    return TableValues(
        tuple(alpha), tuple(beta), tuple(gamma),
        tuple(tuple(r) for r in delta), tuple(tuple(r) for r in cross), tuple(z),
    )


# -- the block engine ----------------------------------------------------------


def block_spectrum(diag: Sequence[tuple], rho) -> CharPolyFactored:
    """Spectrum of a block matrix whose blocks all have constant row sums.

    ``diag`` lists ``(spectrum, a_i, n_i)`` per diagonal block, where
    ``spectrum`` is a RationalPoly (the block's charpoly) or a list of
    eigenvalues, and ``a_i`` its row sum. ``rho[i][j]`` is the constant entry
    of off-diagonal block ``(i, j)``. One copy of each ``a_i`` is replaced by
    the quotient matrix with diagonal ``a_i`` and entries ``rho_ij * n_j``.
    """
    k = len(diag)
    roots: dict[Fraction, int] = {}
    factors: list[tuple[RationalPoly, int]] = []
    floats: list[float] = []
    for idx, (spec, a, n) in enumerate(diag):
        if isinstance(spec, RationalPoly):
            try:
                rest = spec.exact_div(RationalPoly.linear_root(a))
            except ArithmeticError:
                raise ClosedFormError(f"row sum {a} is not an eigenvalue of block {idx + 1}") from None
            if rest.degree > 0:
                factors.append((rest, 1))
        else:
            vals = list(spec)
            exact = all(isinstance(v, (int, Fraction)) for v in vals) and isinstance(a, (int, Fraction))
            if exact:
                if as_fraction(a) not in [as_fraction(v) for v in vals]:
                    raise ClosedFormError(f"row sum {a} is not an eigenvalue of block {idx + 1}")
                vals.remove(next(v for v in vals if as_fraction(v) == as_fraction(a)))
                for v in vals:
                    _add_root(roots, v)
            else:
                hits = [t for t, v in enumerate(vals) if abs(float(v) - float(a)) <= 1e-9 * max(1.0, abs(float(a)))]
                if not hits:
                    raise ClosedFormError(f"row sum {a} is not an eigenvalue of block {idx + 1}")
                vals.pop(hits[0])
                floats.extend(float(v) for v in vals)
    exact_q = all(isinstance(a, (int, Fraction)) for _, a, _ in diag) and all(
        isinstance(x, (int, Fraction)) for row in rho for x in row
    )
    rows = [
        [diag[i][1] if i == j else rho[i][j] * diag[j][2] for j in range(k)] for i in range(k)
    ]
    if exact_q and not floats:
        return CharPolyFactored(sorted(roots.items()), factors, RatMatrix(rows))
    # floating fallback: fold everything into float_quotient-only result
    fq = np.array(rows, dtype=float)
    out = CharPolyFactored(sorted(roots.items()), factors, RatMatrix.zeros(k), float_quotient=fq)
    out.float_extra = floats  # type: ignore[attr-defined]
    return out


def join_charpoly(spec: JoinSpec) -> CharPolyFactored:
    """Characteristic polynomial of a join with regular constituents and
    constant pair counts, for the matrix kind in ``spec``."""
    tv = table_values(spec)
    k = spec.k
    factors = []
    for i, g in enumerate(spec.constituents):
        rest = g.non_perron()
        if rest.degree > 0:
            factors.append((rest.affine_image(tv.alpha[i], tv.beta[i]), 1))
    rows = []
    for i, g in enumerate(spec.constituents):
        row = []
        for j, h in enumerate(spec.constituents):
            if i == j:
                row.append(g.r * tv.alpha[i] + tv.beta[i] + g.n * tv.gamma[i])
            else:
                row.append(h.n * tv.cross[i][j])
        rows.append(row)
    fq = None
    if spec.kind is MatrixKind.NORMALIZED:
        s = spec.coverage()
        fq = np.array(
            [
                [float(rows[i][i]) if i == j else spec.constituents[j].n * float(s[i][j]) * tv.delta[i][j]
                 for j in range(k)]
                for i in range(k)
            ]
        )
    return CharPolyFactored([], factors, RatMatrix(rows), list(tv.z), fq)


def uniform_join_charpoly(spec: JoinSpec, m: Optional[int] = None) -> CharPolyFactored:
    """The join theorem when every new edge has the same cardinality ``m``."""
    cards = set(spec.counts.cardinalities())
    if m is None:
        if len(cards) > 1:
            raise ClosedFormError(f"counts use several cardinalities {sorted(cards)}")
    elif cards - {m}:
        raise ClosedFormError(f"counts use cardinalities {sorted(cards)}, expected only {m}")
    return join_charpoly(spec)


def _sum_counts(parts: Iterable[ConstantCounts]) -> ConstantCounts:
    total: dict = {}
    for p in parts:
        for key, v in p.counts.items():
            total[key] = total.get(key, 0) + v
    return ConstantCounts(total)


def backbone_join_charpoly(
    h: Hypergraph,
    constituents: Sequence[Constituent],
    per_edge: Sequence[Union[ConstantCounts, EdgeFamily]],
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
) -> CharPolyFactored:
    """Join on a backbone: per-edge counts are summed over backbone edges."""
    if h.n != len(constituents):
        raise ClosedFormError(f"backbone has {h.n} vertices, {len(constituents)} constituents")
    if len(per_edge) != len(h.edges):
        raise ClosedFormError("one count table per backbone edge is required")
    tables = []
    for e, item in zip(h.edges, per_edge):
        if isinstance(item, EdgeFamily):
            item = cross_counts(item)
            if isinstance(item, NonConstant):
                raise ClosedFormError(f"pair counts of the family on backbone edge {e.vertices} are not constant")
        for (i, j, _c) in item.counts:
            if i not in e.vertices or j not in e.vertices:
                raise ClosedFormError(f"count for classes ({i},{j}) outside backbone edge {e.vertices}")
        tables.append(item)
    spec = JoinSpec(tuple(constituents), _sum_counts(tables), w, MatrixKind.parse(kind))
    return join_charpoly(spec)


# -- two copies -------------------------------------------------------------------


@dataclass(frozen=True)
class _TwoCopyShape:
    sigma: Fraction  # A(G) = sigma A(h) + tau (J - I)
    tau: Fraction
    r: Fraction


def _constituent_shape(kind: ConstituentKind, n: int, rh: Fraction, cards, w: WeightTable) -> _TwoCopyShape:
    kind = ConstituentKind(kind)
    every = range(2, n + 1)
    if kind is ConstituentKind.SELF:
        return _TwoCopyShape(Fraction(1), Fraction(0), rh)
    if kind is ConstituentKind.COMPLEMENT:
        return _TwoCopyShape(Fraction(-1), mu_sum(n, cards, w), valency_sum(n, cards, w) - rh)
    if kind is ConstituentKind.COMPLETE:
        return _TwoCopyShape(Fraction(0), mu_sum(n, every, w), valency_sum(n, every, w))
    if kind is ConstituentKind.EMPTY:
        return _TwoCopyShape(Fraction(0), Fraction(0), Fraction(0))
    return _TwoCopyShape(Fraction(-1), mu_sum(n, every, w), valency_sum(n, every, w) - rh)


def two_copy_constants(n: int, family: FamilyKind, w: WeightTable, r: int = 1) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``(beta, gamma, a, b)``: the family adds ``gamma (J - I)`` inside each
    copy (so ``beta = -gamma``) and ``a I + b J`` between the copies."""
    family = FamilyKind(family)
    if family is FamilyKind.IDENTITY:
        family, r = FamilyKind.ALIGNED, 1
    if family is FamilyKind.FULL_MINUS_IDENTITY:
        family, r = FamilyKind.FULL_MINUS_ALIGNED, 1
    P1 = sum((w(c) * p1(n, 2, c) / (c - 1) for c in range(2, 2 * n + 1)), Fraction(0)) if n >= 2 else Fraction(0)
    P2 = (
        sum((w(c) * p2(n, 2, c) / (c - 1) for c in range(2, 2 * n + 1)), Fraction(0))
        if n >= 2
        else w(2)
    )
    if family is FamilyKind.FULL:
        return -P1, P1, Fraction(0), P2
    x1, x2 = x1x2(n, r)
    wr = w(2 * r)
    if family is FamilyKind.ALIGNED:
        return -x2 * wr, x2 * wr, wr * (x1 - x2), x2 * wr
    if family is FamilyKind.FULL_MINUS_ALIGNED:
        return -P1 + x2 * wr, P1 - x2 * wr, -wr * (x1 - x2), P2 - x2 * wr
    raise ClosedFormError(f"{family} is not a two-copy family")


@dataclass(frozen=True)
class _TwoCopyModel:
    """Per co-eigenvector ``(lam, jt)`` the join matrix acts as a 2x2 matrix
    ``[[d1, c1], [c2, d2]]`` with ``d_i = s_i lam + e_i + f_i jt`` and
    ``c_i = g_i (a + b jt)``."""

    n: int
    rh: Fraction
    s: tuple[Fraction, Fraction]
    e: tuple[Fraction, Fraction]
    f: tuple[Fraction, Fraction]
    g: tuple[Fraction, Fraction]
    a: Fraction
    b: Fraction
    z: tuple[Fraction, Fraction]

    def block(self, lam, jt):
        d = [self.s[i] * lam + self.e[i] + self.f[i] * jt for i in range(2)]
        c = [self.g[i] * (self.a + self.b * jt) for i in range(2)]
        return [[d[0], c[0]], [c[1], d[1]]]


def _two_copy_model(h: Hypergraph, g1, g2, family, w: WeightTable, kind, r: int) -> _TwoCopyModel:
    kind = MatrixKind.parse(kind)
    hw = reweight(h, w)
    rh = is_regular(hw)
    if rh is None:
        raise ClosedFormError("the base hypergraph is not regular under the weight table")
    n = h.n
    cards = sorted(h.cardinalities())
    shapes = [_constituent_shape(g, n, rh, cards, w) for g in (g1, g2)]
    beta, gamma, a, b = two_copy_constants(n, family, w, r)
    z = tuple(sh.r + (n - 1) * gamma + a + n * b for sh in shapes)
    s, e, f, g = [], [], [], []
    for sh, zi in zip(shapes, z):
        # adjacency block: sigma A + (beta - tau) I + (tau + gamma) J
        if kind is MatrixKind.ADJACENCY:
            s.append(sh.sigma), e.append(beta - sh.tau), f.append(sh.tau + gamma), g.append(Fraction(1))
        elif kind is MatrixKind.LAPLACIAN:
            s.append(-sh.sigma), e.append(zi - beta + sh.tau), f.append(-(sh.tau + gamma)), g.append(Fraction(-1))
        else:
            if zi <= 0:
                raise ClosedFormError(f"valency {zi} in the join; normalized Laplacian undefined")
            s.append(-sh.sigma / zi), e.append((zi - beta + sh.tau) / zi)
            f.append(-(sh.tau + gamma) / zi), g.append(-1 / zi)
    return _TwoCopyModel(n, rh, tuple(s), tuple(e), tuple(f), tuple(g), a, b, z)


def _companion(q: RationalPoly) -> list[list[Fraction]]:
    d = q.degree
    q = q.monic()
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = Fraction(1)
    for i in range(d):
        rows[i][d - 1] = -q.coeffs[i]
    return rows


def _paired_factor(model: _TwoCopyModel, q: RationalPoly) -> RationalPoly:
    """``prod over roots lam of q`` of the 2x2 charpoly at ``(lam, 0)``.

    Realized as the charpoly of the block matrix obtained by substituting
    the companion matrix of ``q`` for ``lam``.
    """
    d = q.degree
    comp = _companion(q)
    big = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
    for bi in range(2):
        for bj in range(2):
            for i in range(d):
                for j in range(d):
                    if bi == bj:
                        v = model.s[bi] * comp[i][j] + (model.e[bi] if i == j else 0)
                    else:
                        v = model.g[bi] * model.a if i == j else Fraction(0)
                    big[bi * d + i][bj * d + j] = v
    return charpoly_exact(RatMatrix(big))


def _two_by_two_poly(m) -> RationalPoly:
    (p, q), (r, s) = m
    return RationalPoly((p * s - q * r, -(p + s), 1))


def two_copy_charpoly(
    h: Hypergraph,
    g1: ConstituentKind,
    g2: ConstituentKind,
    family: FamilyKind,
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
    r: int = 1,
) -> CharPolyFactored:
    """Two constituents derived from one regular hypergraph, joined by one of
    the two-copy families."""
    model = _two_copy_model(h, g1, g2, family, w, kind, r)
    hw = reweight(h, w)
    q = Constituent.from_hypergraph(hw).non_perron()
    roots: dict[Fraction, int] = {}
    factors: list[tuple[RationalPoly, int]] = []
    found, rest = q.rational_roots()
    for lam, mult in found:
        quad = _two_by_two_poly(model.block(lam, 0))
        lin, leftover = quad.rational_roots()
        for root, m in lin:
            _add_root(roots, root, m * mult)
        if leftover.degree > 0:
            factors.append((leftover, mult))
    if rest.degree > 0:
        for part, mult in rest.squarefree():
            factors.append((_paired_factor(model, part), mult))
    quotient = RatMatrix(model.block(model.rh, model.n))
    return CharPolyFactored(sorted(roots.items()), factors, quotient, list(model.z))


def two_copy_spectrum_coeigen(
    h: Hypergraph,
    g1: ConstituentKind,
    g2: ConstituentKind,
    family: FamilyKind,
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
    r: int = 1,
) -> np.ndarray:
    """Floating route: common eigenbasis of ``A(h)`` and ``J``, one 2x2
    eigenproblem per basis vector."""
    model = _two_copy_model(h, g1, g2, family, w, kind, r)
    n = h.n
    ahw = adjacency(reweight(h, w))
    ones = RatMatrix([[1] * n for _ in range(n)])
    system = co_eigen([ahw, ones])
    vals = []
    for lam, jt in system.values:
        m = np.array(model.block(lam, jt), dtype=float)
        vals.extend(np.real(np.linalg.eigvals(m)).tolist())
    return np.sort(np.array(vals))


def two_copy_equal_charpoly(
    h: Hypergraph,
    g: ConstituentKind,
    family: FamilyKind,
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
    r: int = 1,
) -> CharPolyFactored:
    """Both constituents equal: every 2x2 block is ``d I + c`` swap, so each
    co-eigenvector contributes the two linear factors ``x - d -+ c``."""
    model = _two_copy_model(h, g, g, family, w, kind, r)
    hw = reweight(h, w)
    q = Constituent.from_hypergraph(hw).non_perron()
    c = model.g[0] * model.a
    factors = []
    if q.degree > 0:
        for shift in (c, -c):
            factors.append((q.affine_image(model.s[0], model.e[0] + shift), 1))
    top = model.block(model.rh, model.n)
    d, cp = top[0][0], top[0][1]
    roots: dict[Fraction, int] = {}
    _add_root(roots, d + cp)
    _add_root(roots, d - cp)
    return CharPolyFactored(sorted(roots.items()), factors, None, list(model.z)).split_rational()


# -- k copies ----------------------------------------------------------------------


def _k_copy_values(h: Hypergraph, k: int, op: KCopyOp, l: int, w: WeightTable, r: int):
    rh = is_regular(h)
    if rh is None:
        raise ClosedFormError("the base hypergraph is not regular")
    n = h.n
    p1s, p2s, p12, p21, p22 = k_copy_constants(k, l, n, r, w)
    op = KCopyOp(op)
    if op is KCopyOp.MIRROR:
        gam, a, b = p12, p21 - p22, p22
    elif op is KCopyOp.JOIN_NEIGHBOURHOOD:
        gam, a, b = p1s, Fraction(0), p2s
    else:
        gam, a, b = p1s - p12, p22 - p21, p2s - p22
    z = rh + (n - 1) * gam + (k - 1) * (a + n * b)
    return rh, gam, a, b, z


def _k_copy_coefficients(h, k, op, l, w, kind, r):
    rh, gam, a, b, z = _k_copy_values(h, k, op, l, w, r)
    kind = MatrixKind.parse(kind)
    if kind is MatrixKind.ADJACENCY:
        return rh, Fraction(1), -gam, gam, a, b, z
    if kind is MatrixKind.LAPLACIAN:
        return rh, Fraction(-1), z + gam, -gam, -a, -b, z
    if z <= 0:
        raise ClosedFormError(f"valency {z}; normalized Laplacian undefined")
    return rh, -1 / z, 1 + gam / z, -gam / z, -a / z, -b / z, z


def k_copy_charpoly(
    h: Hypergraph,
    k: int,
    op: KCopyOp,
    l: int,
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
    r: int = 1,
) -> CharPolyFactored:
    """``k`` copies of a regular hypergraph joined ``l`` at a time.

    The matrix is ``I_k (x) (alpha A + beta I + gamma J) + (J_k - I_k) (x) (a I + b J)``.
    For each co-eigenpair ``(d, mu)`` it contributes
    ``(x - d + mu)^(k-1) (x - d - (k-1) mu)``.
    """
    if k < 2:
        raise ClosedFormError("need at least two copies")
    rh, alpha, beta, gamma, a, b, z = _k_copy_coefficients(h, k, op, l, w, kind, r)
    n = h.n
    q = Constituent.from_hypergraph(h).non_perron()
    factors = []
    if q.degree > 0:
        factors.append((q.affine_image(alpha, beta - a), k - 1))
        factors.append((q.affine_image(alpha, beta + (k - 1) * a), 1))
    d = alpha * rh + beta + n * gamma
    mu = a + n * b
    rows = [[d if i == j else mu for j in range(k)] for i in range(k)]
    return CharPolyFactored([], factors, RatMatrix(rows), [z] * k)


def k_copy_scaled_product(
    h: Hypergraph, k: int, op: KCopyOp, l: int, w: WeightTable, kind=MatrixKind.ADJACENCY, r: int = 1
) -> RationalPoly:
    """The product ``prod_t [k (x - d_t + mu_t)^k - mu_t (x - d_t + mu_t)^(k-1)]``
    taken literally, over exact rational co-eigenpairs.

    Only available when every adjacency eigenvalue of ``h`` is rational. Kept
    to document how this form compares with the true characteristic polynomial.
    """
    rh, alpha, beta, gamma, a, b, _ = _k_copy_coefficients(h, k, op, l, w, kind, r)
    n = h.n
    q = Constituent.from_hypergraph(h).non_perron()
    found, rest = q.rational_roots()
    if rest.degree > 0:
        raise ClosedFormError("irrational eigenvalues; the literal product is not formed")
    pairs = [(alpha * rh + beta + n * gamma, a + n * b)]
    for lam, m in found:
        pairs.extend([(alpha * lam + beta, a)] * m)
    out = RationalPoly.one()
    for d, mu in pairs:
        base = X - d + mu
        out = out * (base**k * k - base ** (k - 1) * mu)
    return out


# -- backbone catalog -----------------------------------------------------------


def lexicographic_charpoly(h: Hypergraph, h2: Hypergraph, w: WeightTable, kind=MatrixKind.ADJACENCY) -> CharPolyFactored:
    """Lexicographic product through the backbone theorem."""
    g = Constituent.from_hypergraph(h2)
    m = h2.n
    per_edge = []
    for e in h.edges:
        if e.size < 2:
            raise ClosedFormError("backbone loops are not allowed")
        cnt = m ** (e.size - 2)
        per_edge.append(ConstantCounts({(i, j, e.size): cnt for i in e.vertices for j in e.vertices if i < j}))
    return backbone_join_charpoly(h, [g] * h.n, per_edge, w, kind)


def lexicographic_uniform_charpoly(h: Hypergraph, h2: Hypergraph, w: WeightTable) -> CharPolyFactored:
    """Adjacency fast path when the backbone is uniform: the quotient is
    ``r I + m^(u-1) w_u A(h)`` with ``A(h)`` taken with unit weights."""
    u = is_uniform(h)
    if u is None:
        if h.edges:
            raise ClosedFormError("backbone is not uniform")
        u = 2
    g = Constituent.from_hypergraph(h2)
    m = h2.n
    q = g.non_perron()
    factors = [(q, h.n)] if q.degree > 0 else []
    unit = Hypergraph(h.n, tuple(e._replace(weight=Fraction(1)) for e in h.edges))
    top = charpoly_exact(adjacency(unit)).affine_image(Fraction(m) ** (u - 1) * w(u), g.r)
    factors.append((top, 1))
    return CharPolyFactored([], factors, None).split_rational()


def strong_partite_charpoly(
    sizes: Sequence[int], m: Optional[int], w: WeightTable, kind=MatrixKind.ADJACENCY
) -> CharPolyFactored:
    """Edgeless classes joined by transversal edges of ``m`` classes (or of
    every size from 2 to ``k`` when ``m`` is None)."""
    k = len(sizes)
    if m is not None and not 2 <= m <= k:
        raise ClosedFormError(f"need 2 <= m <= k={k}, got m={m}")
    cards = [m] if m is not None else range(2, k + 1)
    counts = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for c in cards:
                v = q_cross(sizes, i, j, c)
                if v:
                    counts[(i, j, c)] = v
    spec = JoinSpec(tuple(Constituent.edgeless(s) for s in sizes), ConstantCounts(counts), w, MatrixKind.parse(kind))
    return join_charpoly(spec)


class CatalogRow(enum.IntEnum):
    COMPLETE_UNIFORM_PARTITE = 1  # k = m, B = {m}, edgeless classes
    COMPLETE_UNIFORM_WEAK_PARTITE = 2  # k <= m, B = {m}, edgeless classes
    COMPLETE_WEAK_PARTITE = 3  # B = {k, ..., N}, edgeless classes
    NON_UNIFORM_JOIN = 4  # given constituents, B a subset of {k, ..., N}
    UNIFORM_JOIN = 5  # given constituents, k <= m, B = {m}


def catalog_counts(sizes: Sequence[int], B: Iterable[int]) -> ConstantCounts:
    k = len(sizes)
    counts = {}
    if k < 2:
        return ConstantCounts({})
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            if i == j and sizes[i - 1] < 2:
                continue
            for c in B:
                v = n_cross(sizes, i, j, c)
                if v:
                    counts[(i, j, c)] = v
    return ConstantCounts(counts)


def catalog_charpoly(
    row: CatalogRow,
    sizes: Sequence[int],
    w: WeightTable,
    kind=MatrixKind.ADJACENCY,
    m: Optional[int] = None,
    B: Optional[Iterable[int]] = None,
    constituents: Optional[Sequence[Constituent]] = None,
) -> CharPolyFactored:
    row = CatalogRow(row)
    k, N = len(sizes), sum(sizes)
    if row in (CatalogRow.COMPLETE_UNIFORM_PARTITE, CatalogRow.COMPLETE_UNIFORM_WEAK_PARTITE, CatalogRow.UNIFORM_JOIN):
        if m is None:
            raise ClosedFormError("this row needs m")
        if row is CatalogRow.COMPLETE_UNIFORM_PARTITE and m != k:
            raise ClosedFormError(f"row 1 needs k = m, got k={k}, m={m}")
        if k > m:
            raise ClosedFormError(f"need k <= m, got k={k}, m={m}")
        cards = [m]
    elif row is CatalogRow.COMPLETE_WEAK_PARTITE:
        cards = list(range(k, N + 1))
    else:
        if B is None:
            raise ClosedFormError("row 4 needs B")
        cards = sorted(set(B))
        if any(not k <= c <= N for c in cards):
            raise ClosedFormError(f"B must lie in {k}..{N}")
    if row in (CatalogRow.NON_UNIFORM_JOIN, CatalogRow.UNIFORM_JOIN):
        if constituents is None or len(constituents) != k:
            raise ClosedFormError("rows 4 and 5 need one constituent per class")
        cons = tuple(constituents)
        if any(c.n != s for c, s in zip(cons, sizes)):
            raise ClosedFormError("constituent sizes do not match the classes")
    else:
        cons = tuple(Constituent.edgeless(s) for s in sizes)
    spec = JoinSpec(cons, catalog_counts(sizes, cards), w, MatrixKind.parse(kind))
    return join_charpoly(spec)


# -- certification -------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    exact: bool
    max_deviation: float
    closed: np.ndarray
    direct: np.ndarray
    closed_poly: RationalPoly
    direct_poly: RationalPoly


def certify(h: Hypergraph, kind, factored: CharPolyFactored, tol: float = 1e-9) -> Certificate:
    """Compare a closed form with the matrix of the hypergraph itself."""
    kind = MatrixKind.parse(kind)
    direct_poly = charpoly_exact(matrix_of(h, kind))
    closed_poly = factored.expand()
    direct = eig_sym(float_matrix_of(h, kind))
    closed = factored.spectrum()
    dev = float(np.max(np.abs(direct - closed))) if len(direct) else 0.0
    return Certificate(closed_poly == direct_poly, dev, closed, direct, closed_poly, direct_poly)
