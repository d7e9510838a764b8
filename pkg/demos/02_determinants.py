"""Determinants of V(n, d).

The canonical order makes V block lower triangular, so det V is a product of
small block determinants.  We compare that with elimination on the whole
matrix, then look at the prime exponents as polynomials in n.
"""
from powerproduct import conjecture_explore, det_V, det_V2_closed
from powerproduct.determinant import det_V_full

for n, d in [(3, 2), (3, 4), (4, 4), (5, 3)]:
    blocks = det_V(n, d)
    full = det_V_full(n, d)
    print(f"det V({n},{d}) = {blocks}   full elimination agrees: {blocks.value == full}")

print("\nTwo variables have a closed form:")
for d in range(1, 8):
    print(f"  d={d}: {det_V2_closed(d) == det_V(2, d).value}  {det_V(2, d)}")

rep = conjecture_explore(5, 7)
print("\nExponent of each prime in det V(n,5), as a polynomial in n:")
for p, f in sorted(rep.polynomials.items()):
    print(f"  f_{p}(n) = {f.expression()}")
print("all checks passed:", rep.passed)
