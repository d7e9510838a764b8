"""How sparse is V(n, d)?

An entry is zero exactly when the column exponent uses a variable the row
exponent does not.  Counting rows by support size gives a closed form for the
number of nonzeros, which we compare with a direct count.
"""
from powerproduct import build_V, nnz_count, nnz_formula, sparsity, sparsity_table
from powerproduct.structure import inverse_pattern_check, sparsity_csv

for n, d in [(3, 2), (4, 3), (6, 4), (10, 2)]:
    print(f"V({n},{d}): formula {nnz_formula(n, d)}, counted {nnz_count(build_V(n, d))}, "
          f"sparsity {sparsity(n, d)} ~ {float(sparsity(n, d)):.4f}")

print("\nn = 10 stays above 90% for even d up to 12:")
print(sparsity_csv(sparsity_table([10], [2, 4, 6, 8, 10, 12])), end="")

print("\nFor fixed d sparsity climbs with n:")
print(" ", [round(float(sparsity(n, 3)), 3) for n in range(2, 12)])
print("For fixed n it eventually falls with d:")
print(" ", [round(float(sparsity(4, d)), 3) for d in range(1, 14)])

rep = inverse_pattern_check(4, 3)
print(f"\nThe inverse of V(4,3) has {rep.inverse_nnz} nonzeros inside V's {rep.nnz}: {rep.holds}")
