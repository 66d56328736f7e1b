"""Admissible roots of so_{2p} (p = m+n+2) and decompositions of d_{m,n}.

Only three root shapes matter here, stored structurally:

    pend(i)   = L_i - L_p
    pair(i,j) = L_i + L_j      (i < j <= m+n)
    free(i)   = L_i + L_p

Branch A is the vertex of the simple root alpha_{p-1} and carries the
dimension m; branch B is alpha_p and carries n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .matchgraph import Edge, GraphSpec, Matching, MatchingError

KINDS = ("pend", "pair", "free")


class RootError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AdmissibleRoot:
    kind: str
    i: int
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RootError(f"unknown root kind {self.kind!r}")
        if self.kind == "pair":
            if self.j is None or not self.i < self.j:
                raise RootError("pair roots need i < j")
        elif self.j is not None:
            raise RootError(f"{self.kind} roots take a single index")
        if self.i < 1:
            raise RootError("indices start at 1")

    @classmethod
    def pend(cls, i: int) -> "AdmissibleRoot":
        return cls("pend", i)

    @classmethod
    def free(cls, i: int) -> "AdmissibleRoot":
        return cls("free", i)

    @classmethod
    def pair(cls, i: int, j: int) -> "AdmissibleRoot":
        return cls("pair", min(i, j), max(i, j))

    @property
    def indices(self) -> tuple[int, ...]:
        return (self.i,) if self.j is None else (self.i, self.j)

    def check_range(self, m: int, n: int):
        if max(self.indices) > m + n:
            raise RootError(f"{self!r} is out of range for (m, n) = ({m}, {n})")

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "i": self.i}
        if self.j is not None:
            d["j"] = self.j
        return d

    def __repr__(self) -> str:
        if self.kind == "pair":
            return f"Pair({self.i},{self.j})"
        return f"{self.kind.capitalize()}({self.i})"


@dataclass(frozen=True)
class DimVector:
    flag: tuple
    branch_a: int
    branch_b: int

    def __add__(self, other: "DimVector") -> "DimVector":
        if len(self.flag) != len(other.flag):
            raise RootError("dimension vectors of different length")
        return DimVector(
            tuple(a + b for a, b in zip(self.flag, other.flag)),
            self.branch_a + other.branch_a,
            self.branch_b + other.branch_b,
        )

    @classmethod
    def zero(cls, N: int) -> "DimVector":
        return cls((0,) * N, 0, 0)


def d_vector(m: int, n: int) -> DimVector:
    """Dimension vector of d_{m,n}: flag (1, 2, ..., m+n), branches (m, n)."""
    return DimVector(tuple(range(1, m + n + 1)), m, n)


def admissible_roots(m: int, n: int) -> list[AdmissibleRoot]:
    N = m + n
    roots = [AdmissibleRoot.pend(i) for i in range(1, N + 1)]
    roots += [AdmissibleRoot.free(i) for i in range(1, N + 1)]
    roots += [AdmissibleRoot.pair(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    return roots


def root_dimension_vector(r: AdmissibleRoot, m: int, n: int) -> DimVector:
    r.check_range(m, n)
    N = m + n
    if r.kind == "pair":
        flag = tuple(0 if k < r.i else (1 if k < r.j else 2) for k in range(1, N + 1))
        return DimVector(flag, 1, 1)
    flag = tuple(0 if k < r.i else 1 for k in range(1, N + 1))
    if r.kind == "pend":
        return DimVector(flag, 1, 0)
    return DimVector(flag, 0, 1)


def root_coefficients(r: AdmissibleRoot, m: int, n: int) -> dict[int, int]:
    """Coefficients on L_1..L_p, p = m+n+2 (for cross-checking the expansion)."""
    r.check_range(m, n)
    p = m + n + 2
    if r.kind == "pend":
        return {r.i: 1, p: -1}
    if r.kind == "free":
        return {r.i: 1, p: 1}
    return {r.i: 1, r.j: 1}


def simple_root_expansion(r: AdmissibleRoot, m: int, n: int) -> list[int]:
    """Coefficients on the simple roots alpha_1..alpha_p of D_p.

    Solves the triangular system coming from alpha_i = L_i - L_{i+1}
    (i < p) and alpha_p = L_{p-1} + L_p, independently of
    :func:`root_dimension_vector`.
    """
    p = m + n + 2
    L = [0] * (p + 1)
    for k, c in root_coefficients(r, m, n).items():
        L[k] = c
    # sum_i c_i alpha_i has L_k coefficient c_k - c_{k-1} for k <= p-2,
    # L_{p-1}: c_{p-1} - c_{p-2} + c_p, L_p: c_p - c_{p-1}
    c = [0] * (p + 1)
    for k in range(1, p - 1):
        c[k] = L[k] + c[k - 1]
    # remaining: c_{p-1} + c_p = L_{p-1} + c_{p-2};  c_p - c_{p-1} = L_p
    s = L[p - 1] + c[p - 2]
    c[p] = (s + L[p]) // 2
    c[p - 1] = s - c[p]
    return c[1:]


# ---------------------------------------------------------------------------
# matchings <-> root sets


def matching_to_rootset(S: Matching, m: int, n: int) -> frozenset:
    if S.spec.variant != "plain" or S.spec.p != m + n:
        raise MatchingError(f"expected a matching of the plain corona C_{m + n}")
    if len(S) != m:
        raise RootError(f"matching has {len(S)} edges, expected m = {m}")
    roots = set()
    for e in S.edges:
        if e.kind == "pendant":
            roots.add(AdmissibleRoot.pend(e.i))
        else:
            roots.add(AdmissibleRoot.pair(e.i, e.j))
    covered = S.covered()
    roots.update(AdmissibleRoot.free(i) for i in range(1, m + n + 1) if i not in covered)
    return frozenset(roots)


def rootset_to_matching(R: Iterable[AdmissibleRoot], m: int, n: int) -> Matching:
    R = list(R)
    if not _covers_once(R, m, n):
        ok, why = validate_decomposition(R, m, n)
        raise RootError(why if not ok else "inconsistent decomposition")
    edges = []
    for r in R:
        if r.kind == "pend":
            edges.append(Edge.pendant(r.i))
        elif r.kind == "pair":
            edges.append(Edge.internal(r.i, r.j))
    return Matching._trusted(GraphSpec("plain", m + n), tuple(sorted(edges)))


def _covers_once(R: list, m: int, n: int) -> bool:
    """Fast equivalent of the dimension-vector test.

    The flag part of the sum grows by #(roots starting at k) + #(pairs
    closing at k) at step k, so it equals (1, 2, .., m+n) exactly when
    every index is used once; the branch parts count pend+pair and
    free+pair.
    """
    N = m + n
    seen = [0] * (N + 2)
    a = b = 0
    for r in R:
        for k in r.indices:
            if k > N:
                return False
            seen[k] += 1
        a += r.kind != "free"
        b += r.kind != "pend"
    return a == m and b == n and all(c == 1 for c in seen[1:N + 1]) and len(set(R)) == len(R)


def validate_decomposition(R: Iterable[AdmissibleRoot], m: int, n: int) -> tuple[bool, str]:
    """Check that R is a set of distinct admissible roots summing to d_{m,n}."""
    R = list(R)
    if len(set(R)) != len(R):
        return False, "roots are not distinct"
    total = DimVector.zero(m + n)
    for r in R:
        try:
            total = total + root_dimension_vector(r, m, n)
        except RootError as exc:
            return False, f"inadmissible root: {exc}"
    target = d_vector(m, n)
    if total != target:
        return False, f"dimension vectors sum to {total}, expected {target}"
    return True, "ok"


def enumerate_decompositions(m: int, n: int):
    """All valid decompositions of d_{m,n}, by direct search over root subsets.

    Flag dimensions grow by exactly one per index, so every index is
    either the start of exactly one root or the closing index of a pair.
    The walk uses only that pruning and then checks the full sum.
    """
    N = m + n
    roots = admissible_roots(m, n)
    by_first = {i: [r for r in roots if r.i == i] for i in range(1, N + 1)}
    target = d_vector(m, n)

    def rec(i, chosen, used):
        if i > N:
            total = DimVector.zero(N)
            for r in chosen:
                total = total + root_dimension_vector(r, m, n)
            if total == target:
                yield frozenset(chosen)
            return
        if i in used:
            yield from rec(i + 1, chosen, used)
            return
        for r in by_first[i]:
            if any(k in used for k in r.indices):
                continue
            chosen.append(r)
            yield from rec(i + 1, chosen, used | set(r.indices))
            chosen.pop()

    yield from rec(1, [], frozenset())


def rootset_to_json(R: Iterable[AdmissibleRoot], m: int, n: int) -> str:
    body = {"m": m, "n": n, "roots": [{"root": r.to_dict()} for r in sorted(R)]}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))
