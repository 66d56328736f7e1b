"""Brute-force Borel orbits on complementary pairs over a finite field.

Every point is enumerated, the upper-triangular generators are applied in
bulk, and the orbits are the connected components of the resulting graph.
Each orbit is then tagged with the matching of its points.

Run: python3 demos/03_orbit_census.py
"""

from coronaorbits.matchgraph import GraphSpec, count_matchings
from coronaorbits.orbitoracle import BudgetExceeded, build_orbit_table, census, point_count

for m, n, q in ((1, 1, 2), (1, 2, 3), (2, 2, 3), (2, 3, 2)):
    rep = census(m, n, q)
    print(f"(m,n,q)=({m},{n},{q}): {rep['total_points']} points, {rep['orbit_count']} orbits, "
          f"{count_matchings(GraphSpec('plain', m + n), m)} matchings, match={rep['match']}")

# Orbit sizes change with q, the set of tags does not.
for q in (2, 3):
    t = build_orbit_table(1, 2, q)
    print(f"q={q}:", {repr(S): size for S, size in zip(t.tags, t.sizes)})

# Large cases are refused up front unless the budget is lifted.
try:
    census(3, 3, 3, budget=10**6)
except BudgetExceeded as exc:
    print(f"(3,3,3) refused: needs {exc.required} points")
    assert exc.required == point_count(3, 3, 3)
