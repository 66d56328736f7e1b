"""Which orbits meet the symplectic or orthogonal locus.

A point (A, B) is compatible with a form when B is the orthogonal complement
of A and the form stays nondegenerate on A.  Over F_3 an exhaustive scan
finds exactly the orbits predicted by the signed matchings.

Run: python3 demos/04_forms.py
"""

from coronaorbits.matchgraph import Edge, GraphSpec, matching
from coronaorbits.orbitoracle import fixed_point_census
from coronaorbits.quiverrep import apply_phi, symplectic_point, symplectic_representative

sp = fixed_point_census(1, 1, 3, "symplectic")
print(f"symplectic, dims ({sp['m']},{sp['n']}): {sp['orbits_with_point']} of {sp['orbit_count']} orbits")
for row in sp["rows"]:
    if row["has_point"]:
        print("   ", row["matching"])

so = fixed_point_census(1, 0, 3, "symmetric")
print(f"orthogonal, dims ({so['m']},{so['n']}): {so['orbits_with_point']} of {so['orbit_count']} orbits")

# An explicit symplectic representative, entries in {0, +-1, +-1/2}.
S = matching(GraphSpec("signed", 4), [Edge.internal(1, 2), Edge.internal(-1, -2)])
g_rat = symplectic_representative(S)
print(f"representative for {S!r}:")
for row in g_rat:
    print("   ", [str(x) for x in row])
g, pt = symplectic_point(S, 5)
print("fixed by phi over F_5:", (apply_phi(g, 5) == g).all())
