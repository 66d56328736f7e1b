from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coronaorbits.matchgraph import (
    Edge,
    GraphSpec,
    HorizontalEdgeError,
    Matching,
    MatchingError,
    NotMinusInvariant,
    OddSizeError,
    build_graph,
    center_pendant,
    count_matchings,
    count_minus_invariant,
    dual_matching,
    enumerate_matchings,
    enumerate_minus_invariant,
    from_positions,
    horizontal_edges,
    is_minus_invariant,
    lift_matching,
    matching,
    matching_from_json,
    minus_matching,
    quotient_matching,
    to_positions,
)

P = Edge.pendant
I = Edge.internal


def brute_force_count(spec, k):
    """Every k-subset of edges checked for disjointness."""
    edges = build_graph(spec).edges
    total = 0
    for sub in combinations(edges, k):
        verts = [v for e in sub for v in e.core]
        total += len(verts) == len(set(verts))
    return total


# --- graphs ---------------------------------------------------------------


def test_plain_c6():
    g = build_graph(GraphSpec("plain", 6))
    assert len(g.vertices) == 12 and len(g.edges) == 21


def test_double_c4():
    g = build_graph(GraphSpec("double", 4))
    assert len(g.vertices) == 8 and len(g.edges) == 16


@pytest.mark.parametrize("p", range(0, 8))
def test_edge_counts(p):
    assert len(build_graph(GraphSpec("plain", p)).edges) == p * (p - 1) // 2 + p
    assert len(build_graph(GraphSpec("double", p)).edges) == p * p


def test_empty_graph():
    g = build_graph(GraphSpec("plain", 0))
    assert g.vertices == () and g.edges == ()


def test_labelings():
    assert GraphSpec("signed", 4).indices() == (-2, -1, 1, 2)
    assert GraphSpec("signed0", 5).indices() == (-2, -1, 0, 1, 2)
    with pytest.raises(ValueError):
        GraphSpec("signed", 3)
    with pytest.raises(ValueError):
        GraphSpec("plain", -1)
    with pytest.raises(ValueError):
        GraphSpec("signed0", 4)


def test_canonical_edge_order():
    g = build_graph(GraphSpec("double", 2))
    assert [repr(e) for e in g.edges] == ["v1w1", "v2w2", "v1v2", "v1v2'2"]
    assert I(3, 1) == I(1, 3)
    with pytest.raises(MatchingError):
        I(2, 2)


# --- matchings ------------------------------------------------------------


def test_enumerate_c2():
    got = [repr(S) for S in enumerate_matchings(GraphSpec("plain", 2), 1)]
    assert got == ["{v1w1}", "{v2w2}", "{v1v2}"]


def test_enumerate_trivial():
    assert [S.edges for S in enumerate_matchings(GraphSpec("plain", 3), 0)] == [()]
    assert [repr(S) for S in enumerate_matchings(GraphSpec("plain", 1), 1)] == ["{v1w1}"]
    assert list(enumerate_matchings(GraphSpec("plain", 2), 3)) == []


@pytest.mark.parametrize("spec,k,want", [
    (GraphSpec("plain", 2), 1, 3),
    (GraphSpec("double", 2), 1, 4),
    (GraphSpec("plain", 5), 0, 1),
    (GraphSpec("plain", 6), 3, 215),
])
def test_count_examples(spec, k, want):
    assert count_matchings(spec, k) == want


@pytest.mark.parametrize("variant,p", [("plain", p) for p in range(7)] + [("double", p) for p in range(5)]
                         + [("signed", 4), ("signed0", 5)])
def test_count_matches_brute_force(variant, p):
    spec = GraphSpec(variant, p)
    for k in range(p + 2):
        assert count_matchings(spec, k) == brute_force_count(spec, k)


@pytest.mark.parametrize("p", range(0, 9))
def test_stream_length_equals_count(p):
    spec = GraphSpec("plain", p)
    for k in range(p + 1):
        stream = list(enumerate_matchings(spec, k))
        assert len(stream) == count_matchings(spec, k)
        assert [S.edges for S in stream] == sorted(S.edges for S in stream)
        assert len({S.edges for S in stream}) == len(stream)


def test_count_large_p():
    # k = 1: p pendants plus p(p-1)/2 internal edges per channel
    assert count_matchings(GraphSpec("plain", 60), 1) == 60 + 60 * 59 // 2
    assert count_matchings(GraphSpec("double", 60), 1) == 60 + 60 * 59
    # k = p forces every core vertex onto its own pendant
    assert count_matchings(GraphSpec("plain", 60), 60) == 1
    assert count_matchings(GraphSpec("double", 40), 20) > 2 ** 53


def test_invalid_matchings():
    spec = GraphSpec("plain", 3)
    with pytest.raises(MatchingError):
        matching(spec, [P(1), I(1, 2)])
    with pytest.raises(MatchingError):
        matching(spec, [P(4)])
    with pytest.raises(MatchingError):
        matching(spec, [I(1, 2, 2)])


def test_json_roundtrip():
    S = matching(GraphSpec("signed", 4), [I(-2, 1), P(2)])
    assert matching_from_json(S.to_json()) == S
    assert '"i":-2' in S.to_json()


# --- duality --------------------------------------------------------------


def test_dual_figure_example():
    spec = GraphSpec("plain", 6)
    S = matching(spec, [I(2, 4), P(1)])
    assert dual_matching(S) == matching(spec, [I(2, 4), P(3), P(5), P(6)])


def test_dual_of_empty():
    spec = GraphSpec("plain", 4)
    assert dual_matching(matching(spec, [])) == matching(spec, [P(i) for i in range(1, 5)])


def test_dual_rejects_signed():
    with pytest.raises(MatchingError):
        dual_matching(matching(GraphSpec("signed", 2), []))


@pytest.mark.parametrize("p", range(0, 8))
def test_dual_is_size_complementing_involution(p):
    spec = GraphSpec("plain", p)
    for k in range(p + 1):
        for S in enumerate_matchings(spec, k):
            D = dual_matching(S)
            assert len(D) == p - k and dual_matching(D) == S


# --- minus involution, horizontal edges, quotient -------------------------


def test_minus_examples():
    spec = GraphSpec("signed", 4)
    S = matching(spec, [I(1, 2), P(-1)])
    assert minus_matching(S) == matching(spec, [I(-1, -2), P(1)])
    assert not is_minus_invariant(S)
    T = matching(spec, [I(1, -1)])
    assert is_minus_invariant(T) and horizontal_edges(T) == {I(-1, 1)}


def test_center_pendant():
    spec = GraphSpec("signed0", 3)
    S = matching(spec, [P(0)])
    assert center_pendant(S) == P(0) and not horizontal_edges(S)
    assert is_minus_invariant(S)


@pytest.mark.parametrize("variant,p", [("signed", 2), ("signed", 4), ("signed", 6), ("signed0", 5)])
def test_minus_is_involution(variant, p):
    spec = GraphSpec(variant, p)
    for k in range(p + 1):
        for S in enumerate_matchings(spec, k):
            M = minus_matching(S)
            assert len(M) == k and minus_matching(M) == S
            # the trusted constructor must still produce a valid matching
            assert Matching(M.spec, M.edges) == M


def test_quotient_examples():
    s2 = GraphSpec("signed", 2)
    s4 = GraphSpec("signed", 4)
    assert quotient_matching(matching(s2, [P(1), P(-1)])) == matching(GraphSpec("double", 1), [P(1)])
    assert quotient_matching(matching(s4, [I(1, 2), I(-1, -2)])) == matching(GraphSpec("double", 2), [I(1, 2, 1)])
    assert quotient_matching(matching(s4, [I(1, -2), I(-1, 2)])) == matching(GraphSpec("double", 2), [I(1, 2, 2)])


def test_quotient_errors_are_distinct():
    s4 = GraphSpec("signed", 4)
    with pytest.raises(NotMinusInvariant):
        quotient_matching(matching(s4, [P(1)]))
    with pytest.raises(HorizontalEdgeError):
        quotient_matching(matching(s4, [I(1, -1)]))
    with pytest.raises(HorizontalEdgeError):
        quotient_matching(matching(s4, [I(1, -1), I(2, -2)]))
    assert not issubclass(OddSizeError, HorizontalEdgeError)


@pytest.mark.parametrize("r", range(1, 6))
def test_quotient_bijection(r):
    spec = GraphSpec("signed", 2 * r)
    for m in range(r + 1):
        images = set()
        count = 0
        for S in enumerate_minus_invariant(spec, 2 * m):
            if horizontal_edges(S):
                continue
            Q = quotient_matching(S)
            assert lift_matching(Q) == S
            images.add(Q)
            count += 1
        assert count == len(images) == count_matchings(GraphSpec("double", r), m)
        assert count_minus_invariant(spec, 2 * m, horizontal_free=True) == count


@pytest.mark.parametrize("variant,p", [("signed", 4), ("signed", 6), ("signed0", 5), ("signed0", 7)])
def test_invariant_enumeration_matches_filter(variant, p):
    spec = GraphSpec(variant, p)
    for k in range(p + 1):
        direct = {S for S in enumerate_matchings(spec, k) if is_minus_invariant(S)}
        built = set(enumerate_minus_invariant(spec, k))
        assert direct == built
        assert count_minus_invariant(spec, k) == len(built)


@pytest.mark.parametrize("p", range(1, 8))
def test_count_bounded_by_edge_subsets(p):
    from math import comb
    for q in range(p + 1):
        assert count_matchings(GraphSpec("double", p), q) <= comb(p * p, q)


def test_dual_preserves_minus_invariance():
    spec = GraphSpec("signed0", 5)
    for k in range(6):
        for S in enumerate_minus_invariant(spec, k):
            D = from_positions(dual_matching(to_positions(S)), "signed0")
            assert is_minus_invariant(D)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.data())
def test_random_signed_relabel_roundtrip(r, data):
    spec = GraphSpec("signed", 2 * r)
    edges = build_graph(spec).edges
    chosen, used = [], set()
    for e in data.draw(st.lists(st.sampled_from(edges), max_size=2 * r)):
        if not used & set(e.core):
            chosen.append(e)
            used |= set(e.core)
    S = matching(spec, chosen)
    assert from_positions(to_positions(S), "signed") == S
    assert minus_matching(minus_matching(S)) == S
