"""Brute-force Borel orbits on pairs of complementary subspaces over F_q.

Points are stored as stacks of reduced row-echelon bases, ``A`` with shape
(P, m, d) and ``B`` with shape (P, n, d).  The canonical key of a point is
the byte string of both echelon forms; points are kept sorted by key, so
the key order doubles as the point index order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import exactla as la
from .exactla import Subspace
from .matchgraph import (
    GraphSpec,
    Matching,
    count_matchings,
    from_positions,
    horizontal_edges,
    is_minus_invariant,
)
from .quiverrep import (
    VarietyPoint,
    classify_points,
    symmetric_gram,
    symplectic_gram,
)

DEFAULT_BUDGET = 2_000_000
SAMPLE_PER_ORBIT = 25


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"{required} points exceed the budget of {budget}")
        self.required = required
        self.budget = budget


class TagMismatch(RuntimeError):
    """Two points of one orbit classified differently."""


def gaussian_binomial(d: int, k: int, q: int) -> int:
    if k < 0 or k > d:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (d - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def point_count(m: int, n: int, q: int) -> int:
    return gaussian_binomial(m + n, m, q) * q ** (m * n)


def _digits(count: int, width: int, q: int) -> np.ndarray:
    """All vectors of F_q^width, as rows, in lexicographic order."""
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (np.arange(count, dtype=np.int64)[:, None] // powers[None, :]) % q


def enumerate_subspaces(d: int, k: int, q: int) -> np.ndarray:
    """Every k-dimensional subspace of F_q^d as an echelon basis, shape (*, k, d)."""
    out = []
    for piv in combinations(range(d), k):
        slots = [(r, c) for r in range(k) for c in range(piv[r] + 1, d) if c not in piv]
        vals = _digits(q ** len(slots), len(slots), q)
        block = np.zeros((vals.shape[0], k, d), dtype=np.int64)
        for r, c in enumerate(piv):
            block[:, r, c] = 1
        for t, (r, c) in enumerate(slots):
            block[:, r, c] = vals[:, t]
        out.append(block)
    if not out:
        return np.zeros((0, k, d), dtype=np.int64)
    return np.concatenate(out)


def enumerate_point_arrays(m: int, n: int, q: int, budget: Optional[int] = DEFAULT_BUDGET):
    """All complementary pairs (A, B): A by echelon shape, B as the graph of
    a map from the coordinate complement of A into A."""
    la.check_prime(q)
    total = point_count(m, n, q)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget)
    d = m + n
    As = enumerate_subspaces(d, m, q)
    Ms = _digits(q ** (m * n), m * n, q).reshape(q ** (m * n), m, n)
    A_all, B_all = [], []
    for A in As:
        piv = [int(np.argmax(row != 0)) for row in A]
        comp = [c for c in range(d) if c not in piv]
        E = np.zeros((n, d), dtype=np.int64)
        for t, c in enumerate(comp):
            E[t, c] = 1
        B = (E[None, :, :] + np.einsum("kmn,md->knd", Ms, A)) % q
        A_all.append(np.broadcast_to(A, (Ms.shape[0], m, d)))
        B_all.append(B)
    A_all = np.concatenate(A_all) if A_all else np.zeros((0, m, d), dtype=np.int64)
    B_all = np.concatenate(B_all) if B_all else np.zeros((0, n, d), dtype=np.int64)
    B_all, _ = la.batch_rref(B_all, q)
    assert A_all.shape[0] == total
    return np.ascontiguousarray(A_all), B_all


def point_keys(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """One fixed-width byte key per point (void dtype, memcmp order)."""
    P = A.shape[0]
    raw = np.concatenate([A.reshape(P, -1), B.reshape(P, -1)], axis=1).astype(np.uint8)
    raw = np.ascontiguousarray(raw)
    width = raw.shape[1]
    if width == 0:
        raw = np.zeros((P, 1), dtype=np.uint8)
        width = 1
    return raw.view(np.dtype((np.void, width))).ravel()


def enumerate_points(m: int, n: int, q: int, budget: Optional[int] = DEFAULT_BUDGET) -> Iterator[VarietyPoint]:
    A, B = enumerate_point_arrays(m, n, q, budget)
    d = m + n
    for a, b in zip(A, B):
        yield VarietyPoint(Subspace(q, d, a.copy()), Subspace(q, d, b.copy()))


def borel_generators(d: int, q: int) -> list[np.ndarray]:
    """x_i(1) = 1 + E_{i,i+1} for each simple root, plus diag(.., w, ..) for a
    primitive root w when q > 2."""
    gens = []
    for i in range(d - 1):
        g = np.eye(d, dtype=np.int64)
        g[i, i + 1] = 1
        gens.append(g)
    if q > 2:
        w = la.primitive_root(q)
        for i in range(d):
            g = np.eye(d, dtype=np.int64)
            g[i, i] = w
            gens.append(g)
    return gens


def group_closure(gens: list[np.ndarray], q: int) -> set:
    """All products of the generators (finite group), as byte strings."""
    d = gens[0].shape[0] if gens else 0
    start = np.eye(d, dtype=np.int64)
    seen = {start.tobytes()}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = (g @ x) % q
                k = y.tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
        frontier = nxt
    return seen


def borel_order(d: int, q: int) -> int:
    return (q - 1) ** d * q ** (d * (d - 1) // 2)


# ---------------------------------------------------------------------------
# orbit partition


@dataclass
class OrbitTable:
    m: int
    n: int
    q: int
    A: np.ndarray
    B: np.ndarray
    keys: np.ndarray
    labels: np.ndarray
    sizes: list
    reps: list
    tags: list = field(default_factory=list)

    @property
    def total_points(self) -> int:
        return int(self.keys.shape[0])

    @property
    def orbit_count(self) -> int:
        return len(self.sizes)

    def locate(self, A_rows, B_rows) -> int:
        """Index of the point with the given bases (any spanning rows)."""
        d = self.m + self.n
        a = Subspace.span(A_rows, self.q, d).basis
        b = Subspace.span(B_rows, self.q, d).basis
        key = point_keys(a[None], b[None])
        i = int(np.searchsorted(self.keys, key[0]))
        if i >= self.keys.shape[0] or self.keys[i] != key[0]:
            raise KeyError("point not found")
        return i

    def orbit_of(self, pt: VarietyPoint) -> int:
        return int(self.labels[self.locate(pt.A.basis, pt.B.basis)])

    def orbit_of_tag(self, S: Matching) -> int:
        return self.tags.index(S)

    def point(self, i: int) -> VarietyPoint:
        d = self.m + self.n
        return VarietyPoint(Subspace(self.q, d, self.A[i].copy()), Subspace(self.q, d, self.B[i].copy()))

    def members(self, orbit: int) -> np.ndarray:
        return np.nonzero(self.labels == orbit)[0]


def _act(g: np.ndarray, X: np.ndarray, q: int) -> np.ndarray:
    # rows are vectors: (g v)^T = v^T g^T
    return la.batch_rref((X @ g.T) % q, q)[0]


def orbit_partition(A: np.ndarray, B: np.ndarray, q: int, generators: list[np.ndarray]) -> OrbitTable:
    """Connected components of the generator action on the points.

    Orbit ids follow the least point key of each orbit.
    """
    P, m, d = A.shape
    n = B.shape[1]
    keys = point_keys(A, B)
    order = np.argsort(keys, kind="stable")
    A, B, keys = A[order], B[order], keys[order]
    if P > 1 and np.any(keys[1:] == keys[:-1]):
        raise RuntimeError("duplicate points in enumeration")
    src, dst = [np.arange(P)], [np.arange(P)]
    for g in generators:
        k2 = point_keys(_act(g, A, q), _act(g, B, q))
        j = np.searchsorted(keys, k2)
        j = np.minimum(j, P - 1)
        if not np.all(keys[j] == k2):
            raise RuntimeError("generator action left the point set")
        src.append(np.arange(P))
        dst.append(j)
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(P, P))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # relabel by least member index (= least key)
    first = np.full(comp.max() + 1 if P else 0, P, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(P))
    rank = np.empty_like(first)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    labels = rank[comp]
    sizes = np.bincount(labels).tolist() if P else []
    reps = np.sort(first).tolist()
    return OrbitTable(m, n, q, A, B, keys, labels, sizes, reps)


def tag_orbits(table: OrbitTable, seed: int = 0, sample: int = SAMPLE_PER_ORBIT) -> OrbitTable:
    """Classify each orbit's representative and spot-check other members.

    Raises :class:`TagMismatch` if any sampled member disagrees.
    """
    rng = np.random.default_rng(seed)
    picks, owner = [], []
    for o, rep in enumerate(table.reps):
        members = table.members(o)
        k = min(len(members), sample)
        others = members[members != rep]
        chosen = [rep]
        if k > 1:
            chosen += rng.choice(others, size=k - 1, replace=False).tolist()
        picks += chosen
        owner += [o] * len(chosen)
    picks = np.array(picks, dtype=np.int64)
    found = classify_points(table.A[picks], table.B[picks], table.q)
    tags = [None] * table.orbit_count
    for o, S in zip(owner, found):
        if tags[o] is None:
            tags[o] = S
        elif tags[o] != S:
            raise TagMismatch(f"orbit {o}: {tags[o]!r} vs {S!r}")
    table.tags = tags
    return table


def build_orbit_table(m: int, n: int, q: int, budget: Optional[int] = DEFAULT_BUDGET, seed: int = 0) -> OrbitTable:
    A, B = enumerate_point_arrays(m, n, q, budget)
    table = orbit_partition(A, B, q, borel_generators(m + n, q))
    return tag_orbits(table, seed)


def census(m: int, n: int, q: int, budget: Optional[int] = DEFAULT_BUDGET, seed: int = 0, table=None) -> dict:
    if table is None:
        table = build_orbit_table(m, n, q, budget, seed)
    expected = count_matchings(GraphSpec("plain", m + n), m)
    distinct = len(set(table.tags)) == len(table.tags)
    all_sized = all(len(S) == m for S in table.tags)
    per_matching = {S.to_json(): size for S, size in zip(table.tags, table.sizes)}
    return {
        "m": m,
        "n": n,
        "q": q,
        "total_points": table.total_points,
        "expected_points": point_count(m, n, q),
        "orbit_count": table.orbit_count,
        "expected_count": expected,
        "tags_distinct": distinct,
        "match": distinct and all_sized and table.orbit_count == expected
        and table.total_points == point_count(m, n, q),
        "orbit_sizes": per_matching,
    }


# ---------------------------------------------------------------------------
# forms and fixed points


@dataclass(frozen=True)
class FormSpec:
    kind: str  # "symplectic" | "symmetric"
    gram: np.ndarray
    q: int

    @classmethod
    def standard(cls, kind: str, d: int, q: int) -> "FormSpec":
        if kind == "symplectic":
            if q == 2:
                raise la.FieldError("symplectic forms need odd characteristic")
            G = symplectic_gram(d)
        elif kind == "symmetric":
            if q == 2:
                raise la.FieldError("symmetric forms need odd characteristic")
            G = symmetric_gram(d)
        else:
            raise ValueError(f"unknown form kind {kind!r}")
        return cls(kind, G % q, q)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def is_nondegenerate(self) -> bool:
        return la.rank(self.gram, self.q) == self.dim


def isotropy_predicate(pt: VarietyPoint, form: FormSpec) -> bool:
    """B is the orthogonal complement of A and the form is nondegenerate on A."""
    if form.q != pt.q or form.dim != pt.A.dim_ambient:
        raise ValueError("form and point do not match")
    if form.kind == "symplectic" and pt.q == 2:
        raise la.FieldError("symplectic forms need odd characteristic")
    G = form.gram
    A, B = pt.A.basis, pt.B.basis
    if np.any((A @ G @ B.T) % pt.q):
        return False
    return pt.m == 0 or la.rank((A @ G @ A.T) % pt.q, pt.q) == pt.m


def batch_isotropy(A: np.ndarray, B: np.ndarray, form: FormSpec) -> np.ndarray:
    q = form.q
    G = form.gram
    P, m, _ = A.shape
    cross = np.einsum("pmd,de,pne->pmn", A, G, B) % q
    ok = ~cross.reshape(P, -1).any(axis=1)
    if m:
        gram_a = np.einsum("pmd,de,pke->pmk", A, G, A) % q
        ok &= la.batch_rank(gram_a, q) == m
    return ok


def orbit_has_point(table: OrbitTable, form: FormSpec) -> list[bool]:
    """Exhaustive scan: does each orbit contain a point passing the predicate?"""
    ok = batch_isotropy(table.A, table.B, form)
    hit = np.zeros(table.orbit_count, dtype=bool)
    np.logical_or.at(hit, table.labels, ok)
    return hit.tolist()


def fixed_point_census(mp: int, np_: int, q: int, kind: str, budget: Optional[int] = DEFAULT_BUDGET,
                       seed: int = 0, table: Optional[OrbitTable] = None) -> dict:
    """Compare orbits carrying form-compatible points with the combinatorial rule.

    symplectic: dims (2mp, 2np_), rule: S = -S and no horizontal edge;
    symmetric:  dims (2mp, 2np_ + 1), rule: S = -S.
    """
    if q % 2 == 0:
        raise la.FieldError("fixed-point census needs odd q")
    m = 2 * mp
    n = 2 * np_ if kind == "symplectic" else 2 * np_ + 1
    variant = "signed" if kind == "symplectic" else "signed0"
    if table is None:
        table = build_orbit_table(m, n, q, budget, seed)
    form = FormSpec.standard(kind, m + n, q)
    has = orbit_has_point(table, form)
    rows = []
    mismatches = []
    for o, (S, h) in enumerate(zip(table.tags, has)):
        signed = from_positions(S, variant)
        inv = is_minus_invariant(signed)
        expect = inv and not (kind == "symplectic" and horizontal_edges(signed))
        rows.append({"orbit_id": o, "matching": signed.to_json(), "has_point": h, "expected": expect})
        if h != expect:
            mismatches.append(o)
    return {
        "kind": kind,
        "m": m,
        "n": n,
        "q": q,
        "orbit_count": table.orbit_count,
        "orbits_with_point": sum(has),
        "expected_with_point": sum(r["expected"] for r in rows),
        "mismatches": mismatches,
        "match": not mismatches,
        "rows": rows,
    }


# ---------------------------------------------------------------------------
# reports


def report_csv(table: OrbitTable) -> str:
    d = table.m + table.n
    sp = so = None
    if table.q != 2:
        if d % 2 == 0 and table.m % 2 == 0:
            sp = orbit_has_point(table, FormSpec.standard("symplectic", d, table.q))
        if table.m % 2 == 0 and table.n % 2 == 1:
            so = orbit_has_point(table, FormSpec.standard("symmetric", d, table.q))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["orbit_id", "size", "matching_json", "has_sp_point", "has_so_point"])
    for o, (size, S) in enumerate(zip(table.sizes, table.tags)):
        w.writerow([
            o,
            size,
            S.to_json(),
            "" if sp is None else str(sp[o]).lower(),
            "" if so is None else str(so[o]).lower(),
        ])
    return buf.getvalue()


def summary_json(report: dict) -> str:
    keys = ("m", "n", "q", "total_points", "orbit_count", "expected_count", "match")
    return json.dumps({k: report[k] for k in keys}, sort_keys=True, indent=2)
