"""Representations of the type D quiver Q_{m+n+2} over F_q.

A representation has flag spaces U_1..U_N (N = m+n) with maps
U_k -> U_{k+1}, and two branch spaces A, B mapping into the sink U_N.
Points of GL_N / (GL_m x GL_n) give complementary representations with
the standard flag; orbits are classified by Krull-Schmidt multiplicities
recovered from Hom dimensions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Optional, Sequence

import numpy as np

from . import exactla as la
from .exactla import Subspace
from .matchgraph import (
    Edge,
    GraphSpec,
    HorizontalEdgeError,
    Matching,
    MatchingError,
    NotMinusInvariant,
    horizontal_edges,
    is_minus_invariant,
    to_positions,
)
from .rootcalc import (
    AdmissibleRoot,
    RootError,
    admissible_roots,
    matching_to_rootset,
    rootset_to_matching,
)


class RepError(ValueError):
    pass


class ClassificationError(RepError):
    pass


@dataclass(frozen=True)
class QuiverRep:
    q: int
    flag_dims: tuple
    dim_a: int
    dim_b: int
    phi: tuple  # phi[k] : U_{k+1} <- U_k, shape (dim U_{k+2}, dim U_{k+1}) in 1-based terms
    psi_a: np.ndarray  # (dim U_N, dim A)
    psi_b: np.ndarray

    @property
    def N(self) -> int:
        return len(self.flag_dims)

    def vertex_dims(self) -> list[int]:
        return list(self.flag_dims) + [self.dim_a, self.dim_b]

    def arrows(self):
        """Yield (source, target, matrix) with vertices 0..N-1 for the flag,
        N for branch A and N+1 for branch B."""
        N = self.N
        for k, M in enumerate(self.phi):
            yield k, k + 1, M
        yield N, N - 1, self.psi_a
        yield N + 1, N - 1, self.psi_b

    def sink_images(self) -> list[np.ndarray]:
        """Matrix of the composite U_k -> U_N for every k."""
        N = self.N
        out = [None] * N
        out[N - 1] = np.eye(self.flag_dims[-1], dtype=np.int64)
        for k in range(N - 2, -1, -1):
            out[k] = (out[k + 1] @ self.phi[k]) % self.q
        return out

    def is_injective(self) -> bool:
        for _, _, M in self.arrows():
            if M.shape[1] and la.rank(M, self.q) != M.shape[1]:
                return False
        return True

    def is_complementary(self) -> bool:
        if not self.is_injective():
            return False
        d = self.flag_dims[-1] if self.N else 0
        if self.dim_a + self.dim_b != d:
            return False
        both = np.concatenate([self.psi_a, self.psi_b], axis=1)
        return d == 0 or la.rank(both.T, self.q) == d


def _mat(rows, cols) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def _inclusion(d_to: int, d_from: int) -> np.ndarray:
    M = _mat(d_to, d_from)
    M[:d_from, :d_from] = np.eye(d_from, dtype=np.int64)
    return M


def direct_sum(*reps: QuiverRep) -> QuiverRep:
    if not reps:
        raise RepError("empty direct sum")
    q, N = reps[0].q, reps[0].N
    if any(V.q != q or V.N != N for V in reps):
        raise RepError("summands have different shapes")

    def block(mats):
        r = sum(M.shape[0] for M in mats)
        c = sum(M.shape[1] for M in mats)
        out = _mat(r, c)
        i = j = 0
        for M in mats:
            out[i:i + M.shape[0], j:j + M.shape[1]] = M
            i += M.shape[0]
            j += M.shape[1]
        return out

    flag = tuple(sum(V.flag_dims[k] for V in reps) for k in range(N))
    phi = tuple(block([V.phi[k] for V in reps]) for k in range(N - 1))
    return QuiverRep(
        q,
        flag,
        sum(V.dim_a for V in reps),
        sum(V.dim_b for V in reps),
        phi,
        block([V.psi_a for V in reps]),
        block([V.psi_b for V in reps]),
    )


# ---------------------------------------------------------------------------
# points of the symmetric variety


@dataclass(frozen=True)
class VarietyPoint:
    """A pair of complementary subspaces (A, B) of F_q^d, dim A = m."""

    A: Subspace
    B: Subspace

    def __post_init__(self):
        if not la.is_complementary(self.A, self.B):
            raise RepError("subspaces are not complementary")

    @property
    def q(self) -> int:
        return self.A.q

    @property
    def m(self) -> int:
        return self.A.dim

    @property
    def n(self) -> int:
        return self.B.dim

    def key(self) -> bytes:
        return self.A.key() + self.B.key()

    def moved(self, g) -> "VarietyPoint":
        return VarietyPoint(self.A.image(g), self.B.image(g))


def base_point(m: int, n: int, q: int) -> VarietyPoint:
    d = m + n
    return VarietyPoint(Subspace.coordinate(range(m), q, d), Subspace.coordinate(range(m, d), q, d))


def point_from_matrix(g, m: int, q: int, a_positions: Optional[Sequence[int]] = None) -> VarietyPoint:
    """(g<e_a : a in A-slots>, g<e_b : other slots>), slots 1-based."""
    g = np.mod(np.asarray(g, dtype=np.int64), q)
    d = g.shape[0]
    a_slots = list(range(1, m + 1)) if a_positions is None else sorted(a_positions)
    b_slots = [k for k in range(1, d + 1) if k not in a_slots]
    A = Subspace.span(g[:, [k - 1 for k in a_slots]].T, q, d)
    B = Subspace.span(g[:, [k - 1 for k in b_slots]].T, q, d)
    return VarietyPoint(A, B)


def batch_point_arrays(G: np.ndarray, m: int, q: int, a_positions: Optional[Sequence[int]] = None):
    """Row-echelon stacks (A, B) for a stack of matrices, as in :func:`point_from_matrix`."""
    G = np.mod(np.asarray(G, dtype=np.int64), q)
    d = G.shape[1]
    a_slots = list(range(1, m + 1)) if a_positions is None else sorted(a_positions)
    b_slots = [k for k in range(1, d + 1) if k not in a_slots]
    A = la.batch_rref(np.swapaxes(G[:, :, [k - 1 for k in a_slots]], 1, 2), q)[0]
    B = la.batch_rref(np.swapaxes(G[:, :, [k - 1 for k in b_slots]], 1, 2), q)[0]
    return A, B


def rep_from_point(pt: VarietyPoint) -> QuiverRep:
    d = pt.A.dim_ambient
    phi = tuple(_inclusion(k + 1, k) for k in range(1, d))
    return QuiverRep(pt.q, tuple(range(1, d + 1)), pt.m, pt.n, phi, pt.A.basis.T.copy(), pt.B.basis.T.copy())


# ---------------------------------------------------------------------------
# indecomposables


def indecomposable_rep(r: AdmissibleRoot, m: int, n: int, q: int) -> QuiverRep:
    r.check_range(m, n)
    N = m + n
    if r.kind in ("pend", "free"):
        flag = tuple(1 if k >= r.i else 0 for k in range(1, N + 1))
        phi = tuple(_inclusion(flag[k + 1], flag[k]) for k in range(N - 1))
        one, none = np.ones((1, 1), dtype=np.int64), _mat(1, 0)
        if r.kind == "pend":
            return QuiverRep(q, flag, 1, 0, phi, one, none)
        return QuiverRep(q, flag, 0, 1, phi, none, one)
    # sink <x, y>; the line <x + y> enters at i, y joins at j
    flag = tuple(0 if k < r.i else (1 if k < r.j else 2) for k in range(1, N + 1))
    phi = []
    for k in range(N - 1):
        a, b = flag[k], flag[k + 1]
        if a == 1 and b == 2:
            phi.append(np.array([[1], [1]], dtype=np.int64))
        else:
            phi.append(_inclusion(b, a))
    psi_a = np.array([[1], [0]], dtype=np.int64)
    psi_b = np.array([[0], [1]], dtype=np.int64)
    return QuiverRep(q, flag, 1, 1, tuple(phi), psi_a, psi_b)


def _kron(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    # np.kron without its generic-shape overhead
    return (X[:, None, :, None] * Y[None, :, None, :]).reshape(X.shape[0] * Y.shape[0], X.shape[1] * Y.shape[1])


def hom_dim(M: QuiverRep, V: QuiverRep) -> int:
    """dim Hom(M, V): nullity of the commuting-square system.

    Unknowns are the blocks f_v : M_v -> V_v, flattened row-major; every
    arrow a : s -> t contributes V(a) f_s - f_t M(a) = 0.
    """
    if M.q != V.q or M.N != V.N:
        raise RepError("representations have different shapes")
    q = M.q
    dm, dv = M.vertex_dims(), V.vertex_dims()
    offsets = [0]
    for a, b in zip(dm, dv):
        offsets.append(offsets[-1] + a * b)
    nunk = offsets[-1]
    if nunk == 0:
        return 0
    blocks = []
    for (s, t, Ma), (_, _, Va) in zip(M.arrows(), V.arrows()):
        nrows = dv[t] * dm[s]
        if nrows == 0:
            continue
        row = _mat(nrows, nunk)
        if dv[s] * dm[s]:
            row[:, offsets[s]:offsets[s + 1]] += _kron(Va, np.eye(dm[s], dtype=np.int64))
        if dv[t] * dm[t]:
            row[:, offsets[t]:offsets[t + 1]] -= _kron(np.eye(dv[t], dtype=np.int64), Ma.T)
        blocks.append(row % q)
    if not blocks:
        return nunk
    return nunk - la.rank(np.concatenate(blocks), q)


# ---------------------------------------------------------------------------
# Hom matrix between admissible indecomposables


@dataclass(frozen=True)
class HomMatrix:
    m: int
    n: int
    roots: tuple  # in topological order
    H: tuple  # H[a][b] = dim Hom(V_roots[a], V_roots[b])

    def as_array(self) -> np.ndarray:
        return np.array(self.H, dtype=np.int64).reshape(len(self.roots), len(self.roots))

    def determinant(self) -> Fraction:
        return la.det_rational(self.H) if self.roots else Fraction(1)

    def is_unitriangular(self) -> bool:
        k = len(self.roots)
        return all(self.H[a][a] == 1 for a in range(k)) and all(
            self.H[a][b] == 0 for a in range(k) for b in range(a)
        )

    @cached_property
    def inverse(self) -> np.ndarray:
        return _integer_inverse(self.H)


def _integer_inverse(H) -> np.ndarray:
    k = len(H)
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(H)]
    R, r, _ = la.rref(aug, None)
    if r < k:
        raise RepError("Hom matrix is singular")
    out = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            x = R[i][k + j]
            if x.denominator != 1:
                raise RepError("Hom matrix inverse is not integral")
            out[i, j] = int(x)
    return out


@lru_cache(maxsize=None)
def _raw_hom_table(N: int, q: int) -> dict:
    # shape depends only on N; use m = N, n = 0 for the range checks
    roots = admissible_roots(N, 0)
    models = {r: indecomposable_rep(r, N, 0, q) for r in roots}
    return {(a, b): hom_dim(models[a], models[b]) for a in roots for b in roots}


@lru_cache(maxsize=None)
def build_hom_matrix(m: int, n: int, q: int = 2) -> HomMatrix:
    """Hom dimensions between admissible indecomposables, topologically ordered.

    Raises when the positive-Hom relation has a cycle, when the ordered
    matrix is not unitriangular, or when a second field disagrees.
    """
    N = m + n
    roots = admissible_roots(m, n)
    table = _raw_hom_table(N, q)
    other = 3 if q == 2 else 2
    if _raw_hom_table(N, other) != table:
        raise RepError(f"Hom dimensions differ between F_{q} and F_{other}")
    ts = TopologicalSorter()
    for a in roots:
        ts.add(a)
        for b in roots:
            if a != b and table[a, b] > 0:
                ts.add(b, a)  # a before b
    try:
        order = tuple(ts.static_order())
    except CycleError as exc:
        raise RepError(f"positive-Hom relation has a cycle: {exc.args[1]}") from exc
    H = tuple(tuple(table[a, b] for b in order) for a in order)
    hm = HomMatrix(m, n, order, H)
    if not hm.is_unitriangular():
        raise RepError("Hom matrix is not unitriangular")
    if abs(hm.determinant()) != 1:
        raise RepError("Hom matrix determinant is not +-1")
    return hm


# ---------------------------------------------------------------------------
# classification


def _multiplicities(hm: HomMatrix, h: Sequence[int]) -> list[int]:
    """Back substitution of H x = h for upper unitriangular H."""
    k = len(hm.roots)
    x = [0] * k
    for a in range(k - 1, -1, -1):
        x[a] = h[a] - sum(hm.H[a][b] * x[b] for b in range(a + 1, k))
    return x


def jump_pattern(V: QuiverRep) -> list[str]:
    """Per flag step: 'A', 'B', 'open' or 'close' from the jumps of
    dim(U_k & A) and dim(U_k & B)."""
    q = V.q
    imgs = V.sink_images()

    def inter(k, psi):
        if k < 0:
            return 0
        Uk = imgs[k]
        if Uk.shape[1] == 0 or psi.shape[1] == 0:
            return 0
        return Uk.shape[1] + psi.shape[1] - la.rank(np.concatenate([Uk, psi], axis=1).T, q)

    out = []
    for k in range(V.N):
        ja = inter(k, V.psi_a) - inter(k - 1, V.psi_a)
        jb = inter(k, V.psi_b) - inter(k - 1, V.psi_b)
        out.append({(1, 0): "A", (0, 1): "B", (0, 0): "open", (1, 1): "close"}.get((ja, jb), "bad"))
    return out


def _pattern_of(S: Matching) -> list[str]:
    out = ["B"] * S.spec.p
    for e in S.edges:
        if e.kind == "pendant":
            out[e.i - 1] = "A"
        else:
            out[e.i - 1] = "open"
            out[e.j - 1] = "close"
    return out


def classify_rep(V: QuiverRep) -> Matching:
    """Matching of a complementary representation of dimension d_{m,n}."""
    m, n = V.dim_a, V.dim_b
    N = m + n
    if V.flag_dims != tuple(range(1, N + 1)):
        raise ClassificationError("dimension vector is not d_{m,n}")
    if N == 0:
        return Matching(GraphSpec("plain", 0), ())
    hm = build_hom_matrix(m, n, 2)
    h = [hom_dim(indecomposable_rep(r, m, n, V.q), V) for r in hm.roots]
    x = _multiplicities(hm, h)
    if any(v not in (0, 1) for v in x):
        raise ClassificationError(f"multiplicity vector {x} is not 0/1")
    support = [r for r, v in zip(hm.roots, x) if v]
    try:
        S = rootset_to_matching(support, m, n)
    except RootError as exc:
        raise ClassificationError(str(exc)) from exc
    if jump_pattern(V) != _pattern_of(S):
        raise ClassificationError("jump pattern disagrees with the Krull-Schmidt decomposition")
    return S


def classify_point(pt: VarietyPoint) -> Matching:
    return classify_rep(rep_from_point(pt))


def point_hom_vectors_direct(A: np.ndarray, B: np.ndarray, q: int, roots: Sequence[AdmissibleRoot]) -> np.ndarray:
    """dim Hom(V_alpha, V) for a stack of points given by row bases.

    With V built from the standard flag and inclusions, a homomorphism
    from V_alpha is fixed by where its sink basis goes, so each Hom
    space is the kernel of a small matrix:

      pend(i): a in A with a in U_i      -> m - rank(A[:, i:])
      free(i): b in B with b in U_i      -> n - rank(B[:, i:])
      pair(i,j): (a, b) in A x B with a, b in U_j, a + b in U_i

    One rank per root; :func:`point_hom_vectors` is the fast equivalent.
    """
    P, m, d = A.shape
    n = B.shape[1]
    out = np.zeros((P, len(roots)), dtype=np.int64)
    for t, r in enumerate(roots):
        if r.kind == "pend":
            out[:, t] = m - la.batch_rank(A[:, :, r.i:], q)
        elif r.kind == "free":
            out[:, t] = n - la.batch_rank(B[:, :, r.i:], q)
        else:
            i, j = r.i, r.j
            top = np.concatenate([A[:, :, j:], np.zeros((P, m, d - j), dtype=np.int64), A[:, :, i:]], axis=2)
            bot = np.concatenate([np.zeros((P, n, d - j), dtype=np.int64), B[:, :, j:], B[:, :, i:]], axis=2)
            out[:, t] = m + n - la.batch_rank(np.concatenate([top, bot], axis=1), q)
    return out


def _flag_echelon(X: np.ndarray, q: int):
    """Echelon form by last nonzero column, and that column (1-based, d+1
    for zero rows).  Rows with last column <= k span X meet U_k."""
    d = X.shape[2]
    R = la.batch_rref(X[:, :, ::-1], q)[0][:, :, ::-1]
    nz = R != 0
    last = np.where(nz.any(axis=2), d - np.argmax(nz[:, :, ::-1], axis=2), d + 1)
    return R, last


def _meet_dims(last: np.ndarray, d: int) -> np.ndarray:
    """(P, d+1) table of dim(X meet U_k), k = 0..d."""
    ks = np.arange(d + 1)
    return (last[:, :, None] <= ks[None, None, :]).sum(axis=1)


def point_hom_vectors(A: np.ndarray, B: np.ndarray, q: int, roots: Sequence[AdmissibleRoot]) -> np.ndarray:
    """Same values as :func:`point_hom_vectors_direct`, via flag intersections:

      pend(i) -> dim(A meet U_i),  free(i) -> dim(B meet U_i),
      pair(i,j) -> dim(((A meet U_j) + (B meet U_j)) meet U_i)

    The last is the image of the injective map (a, b) -> a + b.
    """
    P, m, d = A.shape
    RA, lastA = _flag_echelon(A, q)
    RB, lastB = _flag_echelon(B, q)
    dA, dB = _meet_dims(lastA, d), _meet_dims(lastB, d)
    need_j = sorted({r.j for r in roots if r.kind == "pair"})
    dW = {}
    for j in need_j:
        W = np.concatenate([RA * (lastA <= j)[:, :, None], RB * (lastB <= j)[:, :, None]], axis=1)
        dW[j] = _meet_dims(_flag_echelon(W, q)[1], d)
    out = np.zeros((P, len(roots)), dtype=np.int64)
    for t, r in enumerate(roots):
        if r.kind == "pend":
            out[:, t] = dA[:, r.i]
        elif r.kind == "free":
            out[:, t] = dB[:, r.i]
        else:
            out[:, t] = dW[r.j][:, r.i]
    return out


def classify_points(A: np.ndarray, B: np.ndarray, q: int) -> list[Matching]:
    """Batch classification of points given as stacks of row bases."""
    P, m, d = A.shape
    n = B.shape[1]
    if d == 0:
        return [Matching(GraphSpec("plain", 0), ())] * P
    hm = build_hom_matrix(m, n, 2)
    h = point_hom_vectors(A, B, q, hm.roots)
    X = h @ hm.inverse.T
    cache = {}
    out = []
    for row in X:
        key = tuple(int(v) for v in row)
        S = cache.get(key)
        if S is None:
            if any(v not in (0, 1) for v in key):
                raise ClassificationError(f"multiplicity vector {key} is not 0/1")
            support = [r for r, v in zip(hm.roots, key) if v]
            try:
                S = rootset_to_matching(support, m, n)
            except RootError as exc:
                raise ClassificationError(str(exc)) from exc
            cache[key] = S
        out.append(S)
    return out


# ---------------------------------------------------------------------------
# binary representatives


def binary_representative(S: Matching, m: int, n: int, a_positions: Optional[Sequence[int]] = None) -> np.ndarray:
    """0/1 matrix g whose point (g<e_a>, g<e_b>) lies in the orbit of S.

    ``a_positions`` are the 1-based column slots spanning the m-dimensional
    part (default 1..m).  Columns are filled by a permutation sending
    pair starts and pendant vertices to A-slots and pair ends and
    untouched vertices to B-slots.
    """
    if S.spec.variant != "plain" or S.spec.p != m + n:
        raise MatchingError(f"expected a matching of the plain corona C_{m + n}")
    if len(S) != m:
        raise RootError(f"matching has {len(S)} edges, expected m = {m}")
    N = m + n
    a_slots = list(range(1, m + 1)) if a_positions is None else sorted(a_positions)
    if len(a_slots) != m:
        raise RepError("need exactly m A-slots")
    b_slots = [k for k in range(1, N + 1) if k not in a_slots]
    a_cols, b_cols = [], []
    covered = S.covered()
    partner = {}
    for e in S.edges:
        if e.kind == "internal":
            partner[e.i] = e.j
    pend = {e.i for e in S.edges if e.kind == "pendant"}
    for i in range(1, N + 1):
        v = np.zeros(N, dtype=np.int64)
        v[i - 1] = 1
        if i in partner:
            v[partner[i] - 1] = 1
            a_cols.append(v)
        elif i in pend:
            a_cols.append(v)
        else:
            # pair end or untouched vertex
            b_cols.append(v)
    assert len(a_cols) == m and len(b_cols) == n
    assert all(i in covered or i not in partner for i in range(1, N + 1))
    g = np.zeros((N, N), dtype=np.int64)
    for slot, v in zip(a_slots, a_cols):
        g[:, slot - 1] = v
    for slot, v in zip(b_slots, b_cols):
        g[:, slot - 1] = v
    return g


def verified_binary_representative(S: Matching, m: int, n: int, q: int, a_positions=None) -> np.ndarray:
    g = binary_representative(S, m, n, a_positions)
    got = classify_point(point_from_matrix(g, m, q, a_positions))
    if got != S:
        raise ClassificationError(f"binary representative of {S!r} classifies as {got!r}")
    return g


# ---------------------------------------------------------------------------
# forms and the involution phi


def symplectic_gram(d: int) -> np.ndarray:
    """<e_-j, e_j> = 1 for j > 0 in the order e_-r..e_-1, e_1..e_r."""
    if d % 2:
        raise RepError("symplectic forms need even dimension")
    G = np.zeros((d, d), dtype=np.int64)
    r = d // 2
    for k in range(r):
        G[k, d - 1 - k] = 1
        G[d - 1 - k, k] = -1
    return G


def symmetric_gram(d: int) -> np.ndarray:
    """Split symmetric form: <e_-j, e_j> = 1 and <e_0, e_0> = 1."""
    G = np.zeros((d, d), dtype=np.int64)
    for k in range(d):
        G[k, d - 1 - k] = 1
    return G


def phi_J(d: int) -> np.ndarray:
    """Antidiagonal J with -1 in the top-right quadrant, 1 in the bottom-left."""
    return -symplectic_gram(d)


def apply_phi(g, q: int) -> np.ndarray:
    """phi(g) = J g^{-T} J^{-1}."""
    if q == 2:
        raise RepError("phi needs odd characteristic")
    g = la.as_matrix(g, q)
    d = g.shape[0]
    if d % 2:
        raise RepError("phi needs even size")
    J = phi_J(d) % q
    Jinv = la.inverse_mod(J, q)
    return (J @ la.inverse_mod(g, q).T @ Jinv) % q


def batch_apply_phi(G: np.ndarray, q: int) -> np.ndarray:
    if q == 2:
        raise RepError("phi needs odd characteristic")
    d = G.shape[1]
    if d % 2:
        raise RepError("phi needs even size")
    J = phi_J(d) % q
    Jinv = la.inverse_mod(J, q)
    inv_t = np.swapaxes(la.batch_inverse(G, q), 1, 2)
    return np.einsum("ij,pjk,kl->pil", J, inv_t, Jinv) % q


def preserves_form_pairing(g, q: int) -> bool:
    """<v, w> == <g v, phi(g) w> on all basis pairs."""
    g = la.as_matrix(g, q)
    Om = symplectic_gram(g.shape[0]) % q
    return np.array_equal((g.T @ Om @ apply_phi(g, q)) % q, Om)


def signed_a_positions(r: int, m: int) -> list[int]:
    """Slots of e_i, i in [-m,-1] u [1,m], inside the order e_-r..e_r."""
    return list(range(r - m + 1, r + m + 1))


def signed0_a_positions(r: int, m: int) -> list[int]:
    """Same for the odd order e_-r..e_0..e_r (center excluded)."""
    return list(range(r - m + 1, r + 1)) + list(range(r + 2, r + m + 2))


def minus_image_point(S: Matching, q: int) -> tuple[np.ndarray, VarietyPoint]:
    """phi applied to a binary representative of a signed matching S.

    Returns phi(g) and its point, with K the stabilizer of the middle
    coordinates [-m,-1] u [1,m].
    """
    if S.spec.variant != "signed":
        raise MatchingError("needs a signed matching")
    d = S.spec.p
    r = d // 2
    if len(S) % 2:
        raise MatchingError("signed matching of odd size has no symmetric K")
    m = len(S) // 2
    slots = signed_a_positions(r, m)
    plain = to_positions(S)
    g = binary_representative(plain, 2 * m, d - 2 * m, slots)
    pg = apply_phi(g, q)
    return pg, point_from_matrix(pg, 2 * m, q, slots)


# ---------------------------------------------------------------------------
# symplectic representatives

# Local blocks per minus-orbit of edges.  Coordinates are the local order
# (e_-j, e_-i, e_i, e_j) for 0 < i < j, or (e_-i, e_i).  Each block lists
# symplectic pairs (f_-, f_+) with <f_-, f_+> = 1 spanning the A-part and
# the B-part; the B-part is the orthogonal complement of the A-part.
# Found by exhaustive search over entries {0, +-1, +-1/2}, fewest nonzero
# entries first; tests/test_quiverrep.py re-verifies them.
SP_BLOCKS = {
    "pendant": {"A": [((1, 0), (0, 1))], "B": []},
    "untouched": {"A": [], "B": [((1, 0), (0, 1))]},
    "channel1": {
        "A": [((0, 0, 0, 1), (-1, 1, 0, 0))],
        "B": [((0, 1, 0, 0), (0, 0, 1, 1))],
    },
    "channel2": {
        "A": [((0, 0, 0, 1), (-1, 0, 1, 0))],
        "B": [((0, 0, 1, 0), (0, -1, 0, 1))],
    },
}
SP_ENTRIES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))


def _symplectic_group_structure(S: Matching):
    """Split a minus-invariant horizontal-free signed matching into groups of
    coordinates closed under negation, each tagged with its block type."""
    groups = []
    done = set()
    for e in S.edges:
        if e in done:
            continue
        if e.kind == "pendant":
            a = abs(e.i)
            groups.append(("pendant", (-a, a)))
            done.update({Edge.pendant(a), Edge.pendant(-a)})
        else:
            a, b = sorted((abs(e.i), abs(e.j)))
            kind = "channel1" if (e.i > 0) == (e.j > 0) else "channel2"
            groups.append((kind, (-b, -a, a, b)))
            done.add(e)
            done.add(Edge.internal(-e.i, -e.j))
    covered = S.covered()
    for a in range(1, S.spec.r + 1):
        if a not in covered:
            groups.append(("untouched", (-a, a)))
    return groups


def symplectic_representative(S: Matching) -> list[list[Fraction]]:
    """Symplectic g (phi(g) = g) with entries in {0, +-1, +-1/2} whose point
    (g U^{2m}, g U^{2n}) lies in the orbit of S.

    Returned over the rationals; reduce with :func:`exactla.from_fractions`.
    """
    if S.spec.variant != "signed":
        raise MatchingError("needs a matching of the signed corona C_{2r}")
    if not is_minus_invariant(S):
        raise NotMinusInvariant(f"{S!r} is not minus-invariant")
    if horizontal_edges(S):
        raise HorizontalEdgeError(f"{S!r} contains a horizontal edge")
    d = S.spec.p
    r = d // 2
    m = len(S) // 2
    idx = S.spec.indices()
    pos = {lab: k for k, lab in enumerate(idx)}
    a_pairs, b_pairs = [], []
    for kind, coords in _symplectic_group_structure(S):
        block = SP_BLOCKS[kind]
        for side, dest in (("A", a_pairs), ("B", b_pairs)):
            for fm, fp in block[side]:
                vm = [Fraction(0)] * d
                vp = [Fraction(0)] * d
                for c, x, y in zip(coords, fm, fp):
                    vm[pos[c]] = Fraction(x)
                    vp[pos[c]] = Fraction(y)
                dest.append((vm, vp))
    assert len(a_pairs) == m and len(b_pairs) == r - m
    cols = [None] * d
    # mid indices 1..m take the A-pairs, outer indices m+1..r the B-pairs
    for t, (vm, vp) in enumerate(a_pairs + b_pairs):
        k = t + 1
        cols[pos[-k]] = vm
        cols[pos[k]] = vp
    return [[cols[c][row] for c in range(d)] for row in range(d)]


def symplectic_point(S: Matching, q: int) -> tuple[np.ndarray, VarietyPoint]:
    if q == 2:
        raise RepError("symplectic representatives need odd q")
    g = la.from_fractions(symplectic_representative(S), q)
    r = S.spec.p // 2
    m = len(S) // 2
    return g, point_from_matrix(g, 2 * m, q, signed_a_positions(r, m))


def matrix_to_json(g, q: Optional[int], provenance: str) -> str:
    rows = [[str(x) if isinstance(x, Fraction) else int(x) for x in row] for row in g]
    body = {"field": "Q" if q is None else f"F{q}", "rows": rows, "provenance": provenance}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))
