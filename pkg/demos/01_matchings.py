"""Matchings on corona graphs: counting, listing, duality and the minus map.

Run: python3 demos/01_matchings.py
"""

from coronaorbits.matchgraph import (
    Edge,
    GraphSpec,
    build_graph,
    count_matchings,
    dual_matching,
    enumerate_matchings,
    enumerate_minus_invariant,
    horizontal_edges,
    matching,
    minus_matching,
    quotient_matching,
)

P, I = Edge.pendant, Edge.internal

# The plain corona on 6 core vertices: K_6 plus one pendant per vertex.
spec = GraphSpec("plain", 6)
g = build_graph(spec)
print(f"plain C_6: {len(g.vertices)} vertices, {len(g.edges)} edges")
print("k-matching counts:", [count_matchings(spec, k) for k in range(7)])

# Small enough to list outright.
print("1-matchings of C_2:", list(enumerate_matchings(GraphSpec("plain", 2), 1)))

# Duality keeps internal edges, drops pendants, and gives every untouched
# vertex its pendant.  Sizes k and p - k trade places.
S = matching(spec, [I(2, 4), P(1)])
print(f"dual of {S!r} is {dual_matching(S)!r}")

# Signed labels -r..r (no 0) carry the minus map i -> -i.
signed = GraphSpec("signed", 4)
T = matching(signed, [I(1, 2), P(-1)])
print(f"-{T!r} = {minus_matching(T)!r}")

# Invariant matchings without horizontal edges {i, -i} fold onto the double
# corona: same-sign edges use channel 1, opposite-sign edges channel 2.
for S in enumerate_minus_invariant(signed, 2):
    if horizontal_edges(S):
        print(f"{S!r}: has a horizontal edge, no quotient")
    else:
        print(f"{S!r} -> {quotient_matching(S)!r}")
print("compare: 1-matchings of double C_2 =", count_matchings(GraphSpec("double", 2), 1))
