"""Corona-family graphs and their matchings.

Four labelings are supported:

* ``plain``   -- C_p with core vertices v_1..v_p and pendants w_1..w_p
* ``double``  -- C_p^(2), every core pair joined by two edges (channels 1, 2)
* ``signed``  -- C_{2r} labelled by -r..-1, 1..r
* ``signed0`` -- C_{2r+1} labelled by -r..r (index 0 is the center)

Edges order pendants first, then internal edges by (low, high, channel).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

VARIANTS = ("plain", "double", "signed", "signed0")


class MatchingError(ValueError):
    pass


class NotMinusInvariant(MatchingError):
    pass


class HorizontalEdgeError(MatchingError):
    pass


class OddSizeError(MatchingError):
    pass


@dataclass(frozen=True)
class GraphSpec:
    variant: str
    p: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.p < 0:
            raise ValueError("p must be non-negative")
        if self.variant == "signed" and self.p % 2:
            raise ValueError("signed corona needs even p")
        if self.variant == "signed0" and self.p % 2 == 0:
            raise ValueError("signed0 corona needs odd p")

    @property
    def r(self) -> int:
        return self.p // 2

    def indices(self) -> tuple[int, ...]:
        """Core vertex labels in increasing order."""
        return _indices(self.variant, self.p)

    @property
    def channels(self) -> int:
        return 2 if self.variant == "double" else 1


@lru_cache(maxsize=None)
def _indices(variant: str, p: int) -> tuple[int, ...]:
    if variant in ("plain", "double"):
        return tuple(range(1, p + 1))
    r = p // 2
    if variant == "signed":
        return tuple(range(-r, 0)) + tuple(range(1, r + 1))
    return tuple(range(-r, r + 1))


@lru_cache(maxsize=None)
def _index_set(variant: str, p: int) -> frozenset:
    return frozenset(_indices(variant, p))


@dataclass(frozen=True, order=True)
class Edge:
    """``pendant`` edges join v_i and w_i; ``internal`` edges join v_i and v_j."""

    sort_key: tuple = field(init=False, repr=False, compare=True)
    kind: str = field(compare=False)
    i: int = field(compare=False)
    j: Optional[int] = field(default=None, compare=False)
    channel: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.kind == "pendant":
            object.__setattr__(self, "j", None)
            object.__setattr__(self, "channel", 1)
            key = (0, self.i, self.i, 0)
        elif self.kind == "internal":
            if self.j is None or self.i == self.j:
                raise MatchingError("internal edge needs two distinct endpoints")
            if self.i > self.j:
                i, j = self.j, self.i
                object.__setattr__(self, "i", i)
                object.__setattr__(self, "j", j)
            if self.channel not in (1, 2):
                raise MatchingError("channel must be 1 or 2")
            key = (1, self.i, self.j, self.channel)
        else:
            raise MatchingError(f"unknown edge kind {self.kind!r}")
        object.__setattr__(self, "sort_key", key)

    @classmethod
    def pendant(cls, i: int) -> "Edge":
        return cls("pendant", i)

    @classmethod
    def internal(cls, i: int, j: int, channel: int = 1) -> "Edge":
        return cls("internal", i, j, channel)

    @property
    def core(self) -> tuple[int, ...]:
        """Core vertices touched by the edge."""
        return (self.i,) if self.kind == "pendant" else (self.i, self.j)

    def to_dict(self) -> dict:
        if self.kind == "pendant":
            return {"kind": "pendant", "i": self.i}
        return {"kind": "internal", "i": self.i, "j": self.j, "channel": self.channel}

    def __repr__(self) -> str:
        if self.kind == "pendant":
            return f"v{self.i}w{self.i}"
        ch = "" if self.channel == 1 else f"'{self.channel}"
        return f"v{self.i}v{self.j}{ch}"


@dataclass(frozen=True)
class Graph:
    spec: GraphSpec
    vertices: tuple
    edges: tuple


def build_graph(spec: GraphSpec) -> Graph:
    idx = spec.indices()
    vertices = tuple(("v", i) for i in idx) + tuple(("w", i) for i in idx)
    edges = [Edge.pendant(i) for i in idx]
    for a, b in combinations(idx, 2):
        for ch in range(1, spec.channels + 1):
            edges.append(Edge.internal(a, b, ch))
    return Graph(spec, vertices, tuple(sorted(edges)))


def edge_in_spec(e: Edge, spec: GraphSpec) -> bool:
    idx = _index_set(spec.variant, spec.p)
    if e.i not in idx or (e.j is not None and e.j not in idx):
        return False
    return e.channel <= spec.channels


@dataclass(frozen=True)
class Matching:
    spec: GraphSpec
    edges: tuple

    def __post_init__(self):
        edges = tuple(sorted(set(self.edges)))
        seen = set()
        for e in edges:
            if not edge_in_spec(e, self.spec):
                raise MatchingError(f"edge {e!r} is not in {self.spec}")
            for v in e.core:
                if v in seen:
                    raise MatchingError(f"vertex v{v} is covered twice")
                seen.add(v)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def _trusted(cls, spec: GraphSpec, edges: tuple) -> "Matching":
        """Skip validation; edges must already be sorted and disjoint."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "spec", spec)
        object.__setattr__(obj, "edges", edges)
        return obj

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def covered(self) -> frozenset:
        return frozenset(v for e in self.edges for v in e.core)

    def to_dict(self) -> dict:
        return {
            "graph": {"variant": self.spec.variant, "p": self.spec.p},
            "edges": [e.to_dict() for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.edges)) + "}"


def matching(spec: GraphSpec, edges) -> Matching:
    return Matching(spec, tuple(edges))


def edge_from_dict(d: dict) -> Edge:
    if d["kind"] == "pendant":
        return Edge.pendant(int(d["i"]))
    return Edge.internal(int(d["i"]), int(d["j"]), int(d.get("channel", 1)))


def matching_from_dict(d: dict) -> Matching:
    g = d["graph"]
    spec = GraphSpec(g["variant"], int(g["p"]))
    return Matching(spec, tuple(edge_from_dict(e) for e in d["edges"]))


def matching_from_json(s: str) -> Matching:
    return matching_from_dict(json.loads(s))


# ---------------------------------------------------------------------------
# enumeration and counting


def enumerate_matchings(spec: GraphSpec, k: int) -> Iterator[Matching]:
    """All k-matchings, lexicographic on their sorted edge lists."""
    edges = build_graph(spec).edges
    n = len(edges)
    bit = {v: 1 << t for t, v in enumerate(spec.indices())}
    masks = [sum(bit[v] for v in e.core) for e in edges]

    def rec(start, used, chosen):
        if len(chosen) == k:
            # edges are in canonical order and disjoint by construction
            yield Matching._trusted(spec, tuple(chosen))
            return
        for t in range(start, n - (k - len(chosen)) + 1):
            if masks[t] & used:
                continue
            chosen.append(edges[t])
            yield from rec(t + 1, used | masks[t], chosen)
            chosen.pop()

    if k < 0:
        return iter(())
    return rec(0, 0, [])


@lru_cache(maxsize=None)
def _count_table(p: int, channels: int) -> tuple:
    # f[v][k]: k-matchings on v core vertices with their pendants
    f = [[1] + [0] * p]
    for v in range(1, p + 1):
        row = [0] * (p + 1)
        for k in range(p + 1):
            row[k] = f[v - 1][k]
            if k:
                row[k] += f[v - 1][k - 1]
                if v >= 2:
                    row[k] += channels * (v - 1) * f[v - 2][k - 1]
        f.append(row)
    return tuple(f[p])


def count_matchings(spec: GraphSpec, k: int) -> int:
    """Number of k-matchings by deleting the highest core vertex.

    That vertex is left alone, matched to its pendant, or matched through
    one of the channels to one of the other core vertices.  The core is
    complete, so the count depends only on how many core vertices remain.
    """
    if k < 0 or k > spec.p:
        return 0
    return _count_table(spec.p, spec.channels)[k]


def matching_polynomial_row(spec: GraphSpec) -> list[int]:
    return [count_matchings(spec, k) for k in range(spec.p + 1)]


# ---------------------------------------------------------------------------
# duality, minus involution, horizontal edges


def dual_matching(S: Matching) -> Matching:
    """Swap the roles of the two branch arrows.

    Internal edges stay, pendants of S are dropped, and every vertex left
    untouched by S receives its pendant.
    """
    if S.spec.variant != "plain":
        raise MatchingError("duality is defined on the plain corona")
    covered = S.covered()
    internal = [e for e in S.edges if e.kind == "internal"]
    pend = [Edge.pendant(i) for i in S.spec.indices() if i not in covered]
    return Matching(S.spec, tuple(internal + pend))


def _require_signed(S: Matching):
    if S.spec.variant not in ("signed", "signed0"):
        raise MatchingError("needs a signed labelling")


def minus_edge(e: Edge) -> Edge:
    if e.kind == "pendant":
        return Edge.pendant(-e.i)
    return Edge.internal(-e.i, -e.j, e.channel)


def minus_matching(S: Matching) -> Matching:
    _require_signed(S)
    # negation is an automorphism, so the image is a matching of the same graph
    return Matching._trusted(S.spec, tuple(sorted(minus_edge(e) for e in S.edges)))


def is_minus_invariant(S: Matching) -> bool:
    return minus_matching(S).edges == S.edges


def horizontal_edges(S: Matching) -> frozenset:
    """Internal edges joining v_i and v_-i.  The center pendant is not included."""
    _require_signed(S)
    return frozenset(e for e in S.edges if e.kind == "internal" and e.i == -e.j)


def center_pendant(S: Matching) -> Optional[Edge]:
    """The pendant at v_0 if S uses it (signed0 only)."""
    _require_signed(S)
    e0 = Edge.pendant(0)
    return e0 if e0 in S.edges else None


# ---------------------------------------------------------------------------
# quotient by the minus action


def quotient_matching(S: Matching) -> Matching:
    """Fold a minus-invariant horizontal-free matching of signed C_2r onto C_r^(2)."""
    if S.spec.variant != "signed":
        raise MatchingError("quotient needs the signed labelling of an even corona")
    if not is_minus_invariant(S):
        raise NotMinusInvariant(f"{S!r} is not minus-invariant")
    if horizontal_edges(S):
        raise HorizontalEdgeError(f"{S!r} has horizontal edges")
    if len(S) % 2:
        raise OddSizeError(f"{S!r} has odd size")
    out = set()
    for e in S.edges:
        if e.kind == "pendant":
            out.add(Edge.pendant(abs(e.i)))
        elif (e.i > 0) == (e.j > 0):
            out.add(Edge.internal(abs(e.i), abs(e.j), 1))
        else:
            out.add(Edge.internal(abs(e.i), abs(e.j), 2))
    Q = Matching(GraphSpec("double", S.spec.r), tuple(out))
    assert 2 * len(Q) == len(S)
    return Q


def lift_matching(Q: Matching) -> Matching:
    if Q.spec.variant != "double":
        raise MatchingError("lift needs a double-corona matching")
    out = []
    for e in Q.edges:
        if e.kind == "pendant":
            out += [Edge.pendant(e.i), Edge.pendant(-e.i)]
        elif e.channel == 1:
            out += [Edge.internal(e.i, e.j), Edge.internal(-e.i, -e.j)]
        else:
            out += [Edge.internal(e.i, -e.j), Edge.internal(-e.i, e.j)]
    return Matching(GraphSpec("signed", 2 * Q.spec.p), tuple(out))


# ---------------------------------------------------------------------------
# minus-invariant matchings


def minus_orbits_of_edges(spec: GraphSpec) -> list[tuple[Edge, ...]]:
    """Edges grouped into orbits of the minus involution, dropping orbits
    that are not themselves matchings (e.g. {v0 v1, v0 v-1})."""
    seen = set()
    orbits = []
    for e in build_graph(spec).edges:
        if e in seen:
            continue
        f = minus_edge(e)
        orb = (e,) if f == e else (e, f)
        seen.update(orb)
        verts = [v for x in orb for v in x.core]
        if len(verts) == len(set(verts)):
            orbits.append(orb)
    return orbits


def _invariant_rec(orbits, k: int, yield_edges: bool):
    n = len(orbits)

    def rec(start, used, chosen, size):
        if size == k:
            yield tuple(chosen) if yield_edges else None
            return
        for t in range(start, n):
            orb = orbits[t]
            if size + len(orb) > k:
                continue
            verts = [v for e in orb for v in e.core]
            if any(v in used for v in verts):
                continue
            chosen.extend(orb)
            yield from rec(t + 1, used | set(verts), chosen, size + len(orb))
            del chosen[len(chosen) - len(orb):]

    return rec(0, frozenset(), [], 0)


def enumerate_minus_invariant(spec: GraphSpec, k: int) -> Iterator[Matching]:
    """Minus-invariant k-matchings of a signed corona, built orbit by orbit."""
    if spec.variant not in ("signed", "signed0"):
        raise MatchingError("needs a signed labelling")
    for edges in _invariant_rec(minus_orbits_of_edges(spec), k, True):
        yield Matching(spec, edges)


def count_minus_invariant(spec: GraphSpec, k: int, horizontal_free: bool = False) -> int:
    if spec.variant not in ("signed", "signed0"):
        raise MatchingError("needs a signed labelling")
    orbits = minus_orbits_of_edges(spec)
    if horizontal_free:
        orbits = [o for o in orbits if not (len(o) == 1 and o[0].kind == "internal")]
    return sum(1 for _ in _invariant_rec(orbits, k, False))


# ---------------------------------------------------------------------------
# relabelling between signed labels and positions 1..p


def position_of(label: int, spec: GraphSpec) -> int:
    return spec.indices().index(label) + 1


@lru_cache(maxsize=None)
def _positions(variant: str, p: int) -> dict:
    return {lab: k + 1 for k, lab in enumerate(_indices(variant, p))}


def to_positions(S: Matching) -> Matching:
    """Relabel a signed matching onto the plain corona by position."""
    if S.spec.variant not in ("signed", "signed0"):
        raise MatchingError("expects a signed matching")
    pos = _positions(S.spec.variant, S.spec.p)
    spec = GraphSpec("plain", S.spec.p)
    edges = []
    for e in S.edges:
        if e.kind == "pendant":
            edges.append(Edge.pendant(pos[e.i]))
        else:
            edges.append(Edge.internal(pos[e.i], pos[e.j]))
    # relabelling is monotone, so canonical order survives
    return Matching._trusted(spec, tuple(edges))


def from_positions(S: Matching, variant: str) -> Matching:
    """Inverse of :func:`to_positions` for ``variant`` in {signed, signed0}."""
    if S.spec.variant != "plain":
        raise MatchingError("expects a plain matching")
    spec = GraphSpec(variant, S.spec.p)
    idx = spec.indices()
    edges = []
    for e in S.edges:
        if e.kind == "pendant":
            edges.append(Edge.pendant(idx[e.i - 1]))
        else:
            edges.append(Edge.internal(idx[e.i - 1], idx[e.j - 1]))
    return Matching(spec, tuple(edges))
