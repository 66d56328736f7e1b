"""Orbit-count sequences, their inequalities, and the b(m, n) polynomials.

Run: python3 demos/05_sequences.py
"""

from coronaorbits.seqlab import a_row, b_count, build_table, c_row, check_inequalities, interpolate_b

for p in range(7):
    print(f"p={p}  a: {a_row(p)}  c: {c_row(p)}")

bad = [r for fam in ("a", "c") for r in check_inequalities(fam, 12) if not r.ok]
print("rows violating symmetry, unimodality or ULC up to p = 12:", bad)

print("recurrence vs enumeration disagreements:", build_table("a", 8).disagreements())

print("b(m, 1) for m = 0..5:", [b_count(m, 1) for m in range(6)])
for n in range(3):
    res = interpolate_b(n)
    print(f"n={n}: degree {res.poly.degree}, leading {res.poly.leading}, integral {res.poly.integral}, "
          f"checked at m = {[m for m, _, _ in res.predictions]}")
