"""Exact linear algebra over small prime fields and over the rationals.

Matrices over F_q are numpy integer arrays with entries in ``range(q)``.
Rational matrices are lists of lists of :class:`fractions.Fraction`.
Passing ``q=None`` selects the rational code path.

Over F_2 the default elimination packs each row into a Python int and
eliminates with XOR; :func:`rref_dense` is the plain reference
implementation used to cross-check it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7)


class FieldError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def check_prime(q: int) -> int:
    if q not in SUPPORTED_PRIMES:
        raise FieldError(f"unsupported field size {q}; expected one of {SUPPORTED_PRIMES}")
    return q


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, q - 2, q)


def primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group of F_q."""
    for g in range(2, q):
        if len({pow(g, k, q) for k in range(1, q)}) == q - 1:
            return g
    return 1


def as_matrix(M, q: Optional[int]):
    """Normalize input to the internal representation for field ``q``."""
    if q is None:
        rows = [[Fraction(x) for x in row] for row in M]
        return rows
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return np.mod(A, q)


def from_fractions(M, q: int) -> np.ndarray:
    """Reduce a rational matrix modulo an odd prime."""
    out = np.zeros((len(M), len(M[0]) if M else 0), dtype=np.int64)
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            x = Fraction(x)
            out[i, j] = (x.numerator * inv_mod(x.denominator, q)) % q
    return out


# ---------------------------------------------------------------------------
# row reduction


def _pack_rows(A: np.ndarray) -> list[int]:
    ncols = A.shape[1]
    rows = []
    for r in A:
        v = 0
        for c in range(ncols):
            if r[c]:
                v |= 1 << c
        rows.append(v)
    return rows


def _unpack_rows(rows: Sequence[int], ncols: int) -> np.ndarray:
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, v in enumerate(rows):
        for c in range(ncols):
            if (v >> c) & 1:
                out[i, c] = 1
    return out


def gf2_rref_packed(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced echelon form of bit-packed rows (bit c is column c).

    Returns the nonzero reduced rows and their pivot columns.
    """
    work = list(rows)
    pivots = []
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        piv = None
        for r in range(rank, len(work)):
            if work[r] & bit:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r] & bit:
                work[r] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def rref_dense(A, q: int) -> tuple[np.ndarray, int, list[int]]:
    """Reference Gauss-Jordan elimination mod q, first-nonzero pivoting."""
    A = as_matrix(A, q).copy()
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = (A[r] * inv_mod(int(A[r, c]), q)) % q
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r])) % q
        pivots.append(c)
        r += 1
    return A[:r], r, pivots


def _rref_rational(A) -> tuple[list[list[Fraction]], int, list[int]]:
    A = [list(row) for row in as_matrix(A, None)]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], r, pivots


def rref(A, q: Optional[int]):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` holds only the nonzero rows.
    """
    if q is None:
        return _rref_rational(A)
    check_prime(q)
    A = as_matrix(A, q)
    if q == 2:
        if A.size == 0:
            return A[:0], 0, []
        rows, pivots = gf2_rref_packed(_pack_rows(A), A.shape[1])
        return _unpack_rows(rows, A.shape[1]), len(pivots), pivots
    return rref_dense(A, q)


def rank(A, q: Optional[int]) -> int:
    if q == 2:
        A = as_matrix(A, 2)
        if A.size == 0:
            return 0
        return len(gf2_rref_packed(_pack_rows(A), A.shape[1])[1])
    return rref(A, q)[1]


def _ncols(A, q) -> int:
    if q is None:
        return len(A[0]) if len(A) else 0
    return as_matrix(A, q).shape[1]


def nullspace(A, q: Optional[int], ncols: Optional[int] = None):
    """Basis (as rows) of ``{x : A x = 0}``."""
    if ncols is None:
        ncols = _ncols(A, q)
    if len(A) == 0:
        R, pivots = [], []
    else:
        R, _, pivots = rref(A, q)
    free = [c for c in range(ncols) if c not in pivots]
    zero = Fraction(0) if q is None else 0
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = Fraction(1) if q is None else 1
        for row, p in zip(R, pivots):
            x = row[f]
            v[p] = -x if q is None else (-int(x)) % q
        basis.append(v)
    if q is None:
        return basis
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def solve(A, b, q: Optional[int]):
    """Solve ``A x = b``.

    Returns ``(x0, N)`` with a particular solution and a nullspace basis,
    or ``None`` when the system is inconsistent.
    """
    if q is None:
        A = as_matrix(A, None)
        if len(A) != len(b):
            raise DimensionError("row count of A and length of b differ")
        aug = [row + [Fraction(x)] for row, x in zip(A, b)]
    else:
        A = as_matrix(A, q)
        b = np.mod(np.asarray(b, dtype=np.int64).reshape(-1), q)
        if A.shape[0] != b.shape[0]:
            raise DimensionError("row count of A and length of b differ")
        aug = np.concatenate([A, b[:, None]], axis=1)
    ncols = _ncols(A, q) if len(A) else 0
    R, _, pivots = rref(aug, q)
    if ncols in pivots:
        return None
    zero = Fraction(0) if q is None else 0
    x0 = [zero] * ncols
    for row, p in zip(R, pivots):
        x0[p] = row[ncols]
    N = nullspace(A, q, ncols)
    if q is not None:
        x0 = np.array(x0, dtype=np.int64)
    return x0, N


def det_rational(M) -> Fraction:
    A = [list(row) for row in as_matrix(M, None)]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse_mod(M, q: int) -> np.ndarray:
    M = as_matrix(M, q)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError("inverse needs a square matrix")
    R, r, _ = rref_dense(np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1), q)
    if r < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of F_q^d stored by its unique reduced echelon basis."""

    __slots__ = ("q", "dim_ambient", "basis")

    def __init__(self, q: int, dim_ambient: int, basis: np.ndarray):
        self.q = q
        self.dim_ambient = dim_ambient
        self.basis = basis

    @classmethod
    def span(cls, vectors, q: int, dim_ambient: Optional[int] = None) -> "Subspace":
        check_prime(q)
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0:
            if dim_ambient is None:
                raise DimensionError("ambient dimension needed for an empty span")
            return cls(q, dim_ambient, np.zeros((0, dim_ambient), dtype=np.int64))
        V = V.reshape(-1, V.shape[-1])
        if dim_ambient is not None and V.shape[1] != dim_ambient:
            raise DimensionError("vector length does not match ambient dimension")
        R, _, _ = rref(V, q)
        return cls(q, V.shape[1], R)

    @classmethod
    def coordinate(cls, indices, q: int, dim_ambient: int) -> "Subspace":
        E = np.zeros((len(indices), dim_ambient), dtype=np.int64)
        for r, i in enumerate(indices):
            E[r, i] = 1
        return cls.span(E, q, dim_ambient)

    @classmethod
    def ambient(cls, q: int, d: int) -> "Subspace":
        return cls(q, d, np.eye(d, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if self.q != other.q or self.dim_ambient != other.dim_ambient:
            raise DimensionError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.q, self.dim_ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.span([], self.q, self.dim_ambient)
        # x U = y V  <=>  (x, -y) in null([U; V]^T)
        stacked = np.concatenate([self.basis, other.basis]).T
        N = nullspace(stacked, self.q)
        if N.shape[0] == 0:
            return Subspace.span([], self.q, self.dim_ambient)
        return Subspace.span((N[:, : self.dim] @ self.basis) % self.q, self.q, self.dim_ambient)

    def contains(self, v) -> bool:
        v = np.mod(np.asarray(v, dtype=np.int64), self.q)
        return rank(np.vstack([self.basis, v]), self.q) == self.dim

    def image(self, g) -> "Subspace":
        g = np.mod(np.asarray(g, dtype=np.int64), self.q)
        return Subspace.span((self.basis @ g.T) % self.q, self.q, self.dim_ambient)

    def key(self) -> bytes:
        """Canonical byte string; equal iff the subspaces are equal."""
        head = bytes([self.q, self.dim_ambient, self.dim])
        return head + self.basis.astype(np.uint8).tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, d={self.dim_ambient}, basis={self.basis.tolist()})"


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    return U + V


def intersect(U: Subspace, V: Subspace) -> Subspace:
    return U.intersect(V)


def is_complementary(U: Subspace, V: Subspace) -> bool:
    U._check(V)
    return U.dim + V.dim == U.dim_ambient and (U + V).dim == U.dim_ambient


def subspace_key(U: Subspace) -> bytes:
    return U.key()


# ---------------------------------------------------------------------------
# batched kernels: many small matrices at once, shape (N, rows, cols)


def batch_rref(M: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Row reduce a stack of matrices mod q.

    Returns the reduced stack (zero rows at the bottom) and the rank of
    each matrix.  Pivot choice matches :func:`rref_dense`.
    """
    check_prime(q)
    M = np.mod(np.asarray(M, dtype=np.int64), q).astype(np.int16)  # (q-1)^2 + q fits
    N, nrows, ncols = M.shape
    ranks = np.zeros(N, dtype=np.int64)
    if N == 0 or nrows == 0:
        return M.astype(np.int64), ranks
    inv = np.zeros(q, dtype=np.int16)
    for a in range(1, q):
        inv[a] = inv_mod(a, q)
    row_ids = np.arange(nrows)
    for c in range(ncols):
        cand = (M[:, :, c] != 0) & (row_ids[None, :] >= ranks[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        full = bool(has.all())
        sel = slice(None) if full else np.nonzero(has)[0]
        sub = M if full else M[sel]
        k = sub.shape[0]
        ar = np.arange(k)
        piv = np.argmax(cand if full else cand[sel], axis=1)
        rk = ranks[sel]
        prow = sub[ar, piv].copy()
        sub[ar, piv] = sub[ar, rk]
        prow = (prow * inv[prow[:, c]][:, None]) % q
        sub[ar, rk] = prow
        factor = sub[:, :, c].copy()
        factor[ar, rk] = 0
        sub -= factor[:, :, None] * prow[:, None, :]
        sub %= q
        if not full:
            M[sel] = sub
        ranks[sel] += 1
    return M.astype(np.int64), ranks


def batch_rank(M: np.ndarray, q: int) -> np.ndarray:
    return batch_rref(M, q)[1]


def batch_inverse(M: np.ndarray, q: int) -> np.ndarray:
    """Inverses of a stack of square matrices mod q, via [M | I] -> [I | M^-1]."""
    M = np.mod(np.asarray(M, dtype=np.int64), q)
    N, d, _ = M.shape
    aug = np.concatenate([M, np.broadcast_to(np.eye(d, dtype=np.int64), (N, d, d))], axis=2)
    R, ranks = batch_rref(aug, q)
    if np.any(ranks != d) or not np.array_equal(R[:, :, :d], np.broadcast_to(np.eye(d, dtype=np.int64), (N, d, d))):
        raise DimensionError("singular matrix in batch")
    return R[:, :, d:]
