import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenjoin.cospectral import (
    CospectralError,
    canonical_form,
    cospectral_backbone_join,
    cospectral_join_family,
    enumerate_hypergraphs,
    find_cospectral_pairs,
    search,
    verify,
    write_certificate,
)
from tenjoin.hgr import read_hgr
from tenjoin.hypercore import Edge, Hypergraph, WeightTable, build, complete_uniform
from tenjoin.tensorjoin import (
    ClassSequence,
    EdgeFamily,
    family_aligned,
    family_b_spanning,
    family_full,
    tensor_join,
)

from conftest import C4, C4_K1, K43, STAR, TRIANGLE, graph

ONES = WeightTable.constant(1)


def relabel(h, perm):
    return Hypergraph(h.n, tuple(Edge(tuple(sorted(perm[v - 1] for v in e.vertices)), e.weight) for e in h.edges))


def brute_isomorphic(a, b):
    if a.n != b.n:
        return False
    target = sorted((e.vertices, e.weight) for e in b.edges)
    for p in permutations(range(1, a.n + 1)):
        if sorted((e.vertices, e.weight) for e in relabel(a, p).edges) == target:
            return True
    return False


@st.composite
def simple_hypergraphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    subsets = [s for c in range(2, n + 1) for s in combinations(range(1, n + 1), c)]
    chosen = draw(st.lists(st.sampled_from(subsets), unique=True, max_size=6)) if subsets else []
    return build(n, [(s, 1) for s in chosen])


@given(simple_hypergraphs(), st.randoms())
def test_canonical_form_is_relabeling_invariant(h, rnd):
    perm = list(range(1, h.n + 1))
    rnd.shuffle(perm)
    assert canonical_form(relabel(h, perm)) == canonical_form(h)


@given(simple_hypergraphs(4), simple_hypergraphs(4))
def test_canonical_form_matches_brute_force(a, b):
    if a.n != b.n:
        return
    assert (canonical_form(a) == canonical_form(b)) == brute_isomorphic(a, b)


def test_canonical_form_brute_force_on_regular_triples():
    # hard cases for refinement: every vertex looks alike
    hs = enumerate_hypergraphs(6, {3}, uniform_m=3, regular_r=True)
    for a, b in combinations(hs, 2):
        if a.num_edges == b.num_edges and a.num_edges <= 4:
            assert not brute_isomorphic(a, b)


def test_enumerate_examples():
    assert len(enumerate_hypergraphs(3, {2})) == 4
    assert len(enumerate_hypergraphs(4, {2})) == 11
    assert len(enumerate_hypergraphs(5, {2})) == 34
    k43 = canonical_form(K43)
    assert k43 in {canonical_form(h) for h in enumerate_hypergraphs(4, {3}, uniform_m=3, regular_r=True)}
    assert enumerate_hypergraphs(2, {3}) == [Hypergraph(2)]
    with pytest.raises(CospectralError):
        enumerate_hypergraphs(9, {2})


def test_enumerate_regular_graphs_on_eight_vertices():
    # regular graphs on 8 vertices, all valencies 0..7
    assert len(enumerate_hypergraphs(8, {2}, uniform_m=2, regular_r=True)) == 22


def test_find_pairs_examples():
    pairs = find_cospectral_pairs([C4_K1, STAR])
    assert len(pairs) == 1
    assert find_cospectral_pairs([C4, relabel(C4, [2, 4, 1, 3])]) == []


@given(st.lists(simple_hypergraphs(4), max_size=8))
def test_find_pairs_never_isomorphic(hs):
    for a, b in find_cospectral_pairs(hs):
        assert canonical_form(a) != canonical_form(b)


def test_verify_examples():
    assert verify(C4, C4).all_true
    rep = verify(C4_K1, STAR)
    assert rep.adjacency and not rep.laplacian and rep.normalized is None
    k6 = graph(6, combinations(range(1, 7), 2))
    joined = tensor_join([TRIANGLE, TRIANGLE], family_b_spanning(ClassSequence.consecutive((3, 3)), {2}), ONES)
    assert verify(joined, k6).all_true
    with pytest.raises(CospectralError):
        verify(C4, TRIANGLE)


@given(simple_hypergraphs(4), simple_hypergraphs(4))
def test_verify_is_symmetric(a, b):
    if a.n != b.n:
        return
    x, y = verify(a, b), verify(b, a)
    assert (x.adjacency, x.laplacian, x.normalized) == (y.adjacency, y.laplacian, y.normalized)


@pytest.fixture(scope="module")
def triple_pair():
    report = search(3, max_n=7, min_n=7)
    assert report.found_at == 7
    return report.pairs[0]


def test_search_report_at_seven(triple_pair):
    a, b = triple_pair
    assert verify(a, b).adjacency
    assert canonical_form(a) != canonical_form(b)


def test_search_finds_nothing_small():
    report = search(3, max_n=6)
    assert report.found_at is None and report.pairs == []
    assert "none found" in report.summary()


def test_join_family_is_cospectral(triple_pair):
    a, b = triple_pair
    cs = ClassSequence.consecutive((7, 3))
    f = family_b_spanning(cs, {2, 3})
    w = WeightTable({2: Fraction(1, 2), 3: 2})
    left, right = cospectral_join_family([(a, b), (TRIANGLE, TRIANGLE)], f, w)
    assert verify(left, right).all_true


def test_backbone_join_family_is_cospectral(triple_pair):
    a, b = triple_pair
    h = graph(3, [(1, 2), (2, 3)])
    cs = ClassSequence.consecutive((7, 3, 3))
    fams = [
        EdgeFamily(cs, family_b_spanning(cs.restrict([0, 1]), {2}).members),
        EdgeFamily(cs, family_full(cs.restrict([1, 2])).members),
    ]
    left, right = cospectral_backbone_join(h, [(a, b), (TRIANGLE, TRIANGLE), (TRIANGLE, TRIANGLE)], fams, ONES)
    assert verify(left, right).all_true


def test_isomorphic_slots_give_isomorphic_joins():
    f = family_full(ClassSequence.consecutive((4, 3)))
    left, right = cospectral_join_family([(C4, relabel(C4, [2, 3, 4, 1])), (TRIANGLE, TRIANGLE)], f, ONES)
    assert canonical_form(left) == canonical_form(right)


def test_join_family_errors():
    f = family_full(ClassSequence.consecutive((5, 5)))
    with pytest.raises(CospectralError, match="regular"):
        cospectral_join_family([(C4_K1, STAR), (C4_K1, STAR)], f, ONES)
    aligned = family_aligned(ClassSequence.consecutive((3, 3)), 2)
    with pytest.raises(CospectralError, match="constant"):
        cospectral_join_family([(TRIANGLE, TRIANGLE)] * 2, aligned, ONES)


def test_write_certificate(tmp_path, triple_pair):
    a, b = triple_pair
    pa, pb = write_certificate(tmp_path, "pair", a, b)
    assert read_hgr(pa).h == a and read_hgr(pb).h == b
    head = open(pa).read().splitlines()
    assert any(line.startswith("# adjacency (shared)") for line in head)
