"""Building power-product matrices.

V(n, d) collects every product (α^i)^(α^j) over the weak compositions of d
into n parts.  Here we build the 3-variable quadratic case, print it in two
orders, and look at the multinomial-scaled companion V̂.
"""
from powerproduct import build_V, build_Vhat, enumerate_B
from powerproduct.structure import canonical_B

lex = enumerate_B(3, 2)
print("B(3,2) in lexicographic order:", list(lex))
for row in build_V(3, 2).tolist():
    print("   ", row)

# Grouping exponents by support size exposes a lower-triangular shape.
canon = canonical_B(3, 2)
print("\nB(3,2) in canonical block order:", list(canon))
for row in build_V(3, 2, canon).tolist():
    print("   ", row)

print("\nV̂(3,2) scales column j by multinomial(2, α^j):")
for row in build_Vhat(3, 2, canon).tolist():
    print("   ", row)

# Entries grow like d^d, so large cases switch to Python integers.
big = build_V(2, 24)
print(f"\nV(2,24) is {big.rows}x{big.cols}; top-left entry 24^24 = {big[0, 0]}")
