"""From matchings to quiver representations and back.

A point of the variety is a pair (A, B) of complementary subspaces of
F_q^(m+n).  Together with the standard flag it is a representation of a
D-type quiver, and its indecomposable summands are read off from Hom
dimensions.  The summands translate into a matching.

Run: python3 demos/02_roots_and_classification.py
"""

import numpy as np

from coronaorbits.exactla import Subspace
from coronaorbits.matchgraph import Edge, GraphSpec, matching
from coronaorbits.quiverrep import (
    VarietyPoint,
    binary_representative,
    build_hom_matrix,
    classify_point,
    point_from_matrix,
)
from coronaorbits.rootcalc import admissible_roots, matching_to_rootset, rootset_to_matching

m, n = 2, 4
S = matching(GraphSpec("plain", m + n), [Edge.internal(2, 4), Edge.pendant(1)])
R = matching_to_rootset(S, m, n)
print(f"{S!r} decomposes as {sorted(R)}")
assert rootset_to_matching(R, m, n) == S

print(f"admissible roots for (m, n) = (1, 1): {admissible_roots(1, 1)}")
hm = build_hom_matrix(1, 1)
print("Hom matrix in topological order:")
print(hm.as_array())

# Classify a few points of F_2^2 by hand.
for A, B in (([[1, 0]], [[0, 1]]), ([[1, 1]], [[0, 1]]), ([[0, 1]], [[1, 0]])):
    pt = VarietyPoint(Subspace.span(A, 2, 2), Subspace.span(B, 2, 2))
    print(f"A={A}, B={B} -> {classify_point(pt)!r}")

# A 0/1 matrix whose point lands in the orbit of S, checked over F_3.
g = binary_representative(S, m, n)
print("binary representative:")
print(g)
print("classifies as", classify_point(point_from_matrix(g, m, 3)), "over F_3")
assert np.isin(g, (0, 1)).all()
