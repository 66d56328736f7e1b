from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coronaorbits import exactla as la
from coronaorbits.exactla import Subspace
from coronaorbits.matchgraph import (
    Edge,
    GraphSpec,
    HorizontalEdgeError,
    NotMinusInvariant,
    enumerate_matchings,
    enumerate_minus_invariant,
    horizontal_edges,
    matching,
    minus_matching,
    to_positions,
)
from coronaorbits.quiverrep import (
    SP_BLOCKS,
    SP_ENTRIES,
    ClassificationError,
    QuiverRep,
    RepError,
    VarietyPoint,
    apply_phi,
    base_point,
    batch_apply_phi,
    batch_point_arrays,
    binary_representative,
    build_hom_matrix,
    classify_point,
    classify_points,
    classify_rep,
    direct_sum,
    hom_dim,
    indecomposable_rep,
    matrix_to_json,
    minus_image_point,
    point_from_matrix,
    point_hom_vectors,
    point_hom_vectors_direct,
    preserves_form_pairing,
    rep_from_point,
    symplectic_gram,
    symplectic_point,
    symplectic_representative,
    verified_binary_representative,
)
from coronaorbits.rootcalc import AdmissibleRoot, RootError, admissible_roots, matching_to_rootset, root_dimension_vector

Pend, Free, Pair = AdmissibleRoot.pend, AdmissibleRoot.free, AdmissibleRoot.pair
P, I = Edge.pendant, Edge.internal


def pt(A, B, q=2):
    d = len(A[0])
    return VarietyPoint(Subspace.span(A, q, d), Subspace.span(B, q, d))


# --- representations from points ------------------------------------------


def test_base_point_rep():
    V = rep_from_point(base_point(1, 1, 2))
    assert V.flag_dims == (1, 2) and (V.dim_a, V.dim_b) == (1, 1)
    assert V.is_complementary()


def test_non_complementary_point():
    with pytest.raises(RepError):
        pt([[1, 0]], [[1, 0]])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.sampled_from([2, 3]), st.data())
def test_points_give_complementary_reps(d, q, data):
    m = data.draw(st.integers(0, d))
    g = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=d, max_size=d), min_size=d, max_size=d)))
    if la.rank(g, q) < d:
        return
    assert rep_from_point(point_from_matrix(g, m, q)).is_complementary()


# --- indecomposables and Hom ----------------------------------------------


def test_indecomposable_examples():
    V = indecomposable_rep(Pend(1), 1, 1, 2)
    assert V.flag_dims == (1, 1) and (V.dim_a, V.dim_b) == (1, 0) and V.is_complementary()
    W = indecomposable_rep(Pair(1, 2), 1, 1, 2)
    assert W.flag_dims == (1, 2) and (W.dim_a, W.dim_b) == (1, 1) and W.is_complementary()


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (1, 3)])
@pytest.mark.parametrize("q", [2, 3])
def test_models_are_bricks(m, n, q):
    for r in admissible_roots(m, n):
        V = indecomposable_rep(r, m, n, q)
        dv = root_dimension_vector(r, m, n)
        assert V.flag_dims == dv.flag and (V.dim_a, V.dim_b) == (dv.branch_a, dv.branch_b)
        assert V.is_complementary()
        assert hom_dim(V, V) == 1
        entries = np.concatenate([M.ravel() for _, _, M in V.arrows()])
        assert set(entries.tolist()) <= {0, 1}


def test_hom_examples():
    p1, p2 = indecomposable_rep(Pend(1), 1, 1, 2), indecomposable_rep(Pend(2), 1, 1, 2)
    assert hom_dim(p2, p1) == 1
    assert hom_dim(p1, p2) == 0


def test_hom_shape_mismatch():
    with pytest.raises(RepError):
        hom_dim(indecomposable_rep(Pend(1), 1, 1, 2), indecomposable_rep(Pend(1), 1, 1, 3))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_hom_matrix(m, n):
    hm = build_hom_matrix(m, n, 2)
    k = len(admissible_roots(m, n))
    assert hm.as_array().shape == (k, k)
    assert hm.is_unitriangular() and abs(hm.determinant()) == 1
    assert build_hom_matrix(m, n, 3).H == hm.H
    assert np.array_equal(hm.as_array() @ hm.inverse, np.eye(k, dtype=int))


def test_hom_matrix_11_size():
    assert len(build_hom_matrix(1, 1).roots) == 5


# --- classification -------------------------------------------------------


@pytest.mark.parametrize("A,B,edges", [
    ([[1, 0]], [[0, 1]], [P(1)]),
    ([[1, 1]], [[0, 1]], [I(1, 2)]),
    ([[0, 1]], [[1, 0]], [P(2)]),
])
def test_classify_examples(A, B, edges):
    assert classify_point(pt(A, B)) == matching(GraphSpec("plain", 2), edges)


@pytest.mark.parametrize("N", range(1, 6))
@pytest.mark.parametrize("q", [2, 3])
def test_krull_schmidt_consistency(N, q):
    for m in range(N + 1):
        for S in enumerate_matchings(GraphSpec("plain", N), m):
            V = direct_sum(*(indecomposable_rep(r, m, N - m, q) for r in matching_to_rootset(S, m, N - m)))
            assert V.is_complementary()
            assert classify_rep(V) == S


def test_classify_rejects_wrong_dimension():
    V = indecomposable_rep(Pend(1), 1, 1, 2)  # flag (1, 1), not (1, 2)
    with pytest.raises(ClassificationError):
        classify_rep(V)


def _random_points(m, n, q, count, seed):
    rng = np.random.default_rng(seed)
    d = m + n
    G = rng.integers(0, q, size=(count, d, d))
    G = G[la.batch_rank(G, q) == d]
    return G, batch_point_arrays(G, m, q)


@pytest.mark.parametrize("m,n,q", [(1, 2, 3), (2, 2, 3), (2, 3, 2), (3, 1, 5)])
def test_fast_hom_vectors_agree(m, n, q):
    G, (A, B) = _random_points(m, n, q, 80, m * 10 + n)
    roots = build_hom_matrix(m, n).roots
    fast = point_hom_vectors(A, B, q, roots)
    assert np.array_equal(fast, point_hom_vectors_direct(A, B, q, roots))
    for g, row in zip(G[:15], fast[:15]):
        V = rep_from_point(point_from_matrix(g, m, q))
        assert [hom_dim(indecomposable_rep(r, m, n, q), V) for r in roots] == row.tolist()


@pytest.mark.parametrize("m,n,q", [(2, 2, 3), (1, 3, 2), (3, 2, 3)])
def test_batch_classifier_agrees(m, n, q):
    G, (A, B) = _random_points(m, n, q, 60, 99)
    got = classify_points(A, B, q)
    for g, S in zip(G, got):
        assert classify_point(point_from_matrix(g, m, q)) == S


# --- direct sums ----------------------------------------------------------


def _random_rep(data, N, q):
    flag = tuple(sorted(data.draw(st.lists(st.integers(0, 2), min_size=N, max_size=N))))
    da, db = data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2))

    def mat(r, c):
        return np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c)),
                        dtype=np.int64).reshape(r, c)

    phi = tuple(mat(flag[k + 1], flag[k]) for k in range(N - 1))
    return QuiverRep(q, flag, da, db, phi, mat(flag[-1], da), mat(flag[-1], db))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.sampled_from([2, 3]), st.data())
def test_sum_complementary_iff_both(N, q, data):
    V1, V2 = _random_rep(data, N, q), _random_rep(data, N, q)
    assert direct_sum(V1, V2).is_complementary() == (V1.is_complementary() and V2.is_complementary())


# --- binary representatives -----------------------------------------------


def test_binary_examples():
    spec = GraphSpec("plain", 2)
    assert binary_representative(matching(spec, [P(1)]), 1, 1).tolist() == [[1, 0], [0, 1]]
    g = binary_representative(matching(spec, [I(1, 2)]), 1, 1)
    assert g[:, 0].tolist() == [1, 1] and g[:, 1].tolist() == [0, 1]


def test_binary_wrong_size():
    with pytest.raises(RootError):
        binary_representative(matching(GraphSpec("plain", 2), []), 1, 1)


@pytest.mark.parametrize("N", range(1, 7))
def test_binary_roundtrip(N):
    for m in range(N + 1):
        for S in enumerate_matchings(GraphSpec("plain", N), m):
            g = binary_representative(S, m, N - m)
            assert set(np.unique(g).tolist()) <= {0, 1}
            for q in (2, 3):
                assert la.rank(g, q) == N
            verified_binary_representative(S, m, N - m, 3)


# --- phi ------------------------------------------------------------------


def test_phi_identity_and_torus():
    assert np.array_equal(apply_phi(np.eye(4, dtype=int), 5), np.eye(4, dtype=int))
    t = np.diag([1, 2, 3, 4])
    want = np.diag([pow(a, -1, 5) for a in (4, 3, 2, 1)])
    assert np.array_equal(apply_phi(t, 5), want)


def test_phi_errors():
    with pytest.raises(RepError):
        apply_phi(np.eye(4, dtype=int), 2)
    with pytest.raises(RepError):
        apply_phi(np.eye(3, dtype=int), 3)


@pytest.mark.parametrize("d", [4, 6])
def test_phi_involution(d):
    rng = np.random.default_rng(d)
    done = 0
    while done < 200:
        g = rng.integers(0, 3, size=(d, d))
        if la.rank(g, 3) < d:
            continue
        h = apply_phi(g, 3)
        assert la.rank(h, 3) == d
        assert np.array_equal(apply_phi(h, 3), g % 3)
        assert preserves_form_pairing(g, 3)
        done += 1


def test_batch_phi_matches():
    rng = np.random.default_rng(5)
    G = rng.integers(0, 3, size=(100, 4, 4))
    G = G[la.batch_rank(G, 3) == 4]
    got = batch_apply_phi(G, 3)
    assert all(np.array_equal(apply_phi(g, 3), h) for g, h in zip(G, got))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_minus_image_classifies_as_minus(r):
    spec = GraphSpec("signed", 2 * r)
    for k in range(0, 2 * r + 1, 2):
        for S in enumerate_matchings(spec, k):
            _, image = minus_image_point(S, 3)
            assert classify_point(image) == to_positions(minus_matching(S))


# --- symplectic representatives -------------------------------------------


def _sp_ok(g_frac, q):
    g = la.from_fractions(g_frac, q)
    Om = symplectic_gram(len(g)) % q
    return np.array_equal((g.T @ Om @ g) % q, Om) and np.array_equal(apply_phi(g, q), g)


@pytest.mark.parametrize("kind", sorted(SP_BLOCKS))
def test_sp_blocks(kind):
    block = SP_BLOCKS[kind]
    d = 2 if kind in ("pendant", "untouched") else 4
    Om = symplectic_gram(d)
    vecs = [v for side in ("A", "B") for pair in block[side] for v in pair]
    assert all(Fraction(x) in SP_ENTRIES for v in vecs for x in v)
    M = np.array(vecs)
    assert la.rank(M, 3) == d
    for side in ("A", "B"):
        for fm, fp in block[side]:
            assert np.array(fm) @ Om @ np.array(fp) == 1
    # A-part and B-part are orthogonal
    for x in (v for pair in block["A"] for v in pair):
        for y in (v for pair in block["B"] for v in pair):
            assert np.array(x) @ Om @ np.array(y) == 0


def test_symplectic_identity_case():
    S = matching(GraphSpec("signed", 2), [P(1), P(-1)])
    g = symplectic_representative(S)
    assert g == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]


def test_symplectic_errors():
    with pytest.raises(HorizontalEdgeError):
        symplectic_representative(matching(GraphSpec("signed", 2), [I(-1, 1)]))
    with pytest.raises(NotMinusInvariant):
        symplectic_representative(matching(GraphSpec("signed", 4), [P(1)]))


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("q", [3, 5, 7])
def test_symplectic_representatives(r, q):
    spec = GraphSpec("signed", 2 * r)
    for k in range(0, 2 * r + 1, 2):
        for S in enumerate_minus_invariant(spec, k):
            if horizontal_edges(S):
                continue
            gf = symplectic_representative(S)
            assert all(x in SP_ENTRIES for row in gf for x in row)
            assert _sp_ok(gf, q)
            g, point = symplectic_point(S, q)
            assert classify_point(point) == to_positions(S)
            Om = symplectic_gram(2 * r) % q
            A, B = point.A.basis, point.B.basis
            assert not ((A @ Om @ B.T) % q).any()
            if len(A):
                assert la.rank((A @ Om @ A.T) % q, q) == len(A)


def test_matrix_json():
    s = matrix_to_json([[Fraction(1, 2), 0]], None, "symplectic")
    assert s == '{"field":"Q","provenance":"symplectic","rows":[["1/2",0]]}'
    assert '"field":"F3"' in matrix_to_json(np.eye(2, dtype=int), 3, "binary")

