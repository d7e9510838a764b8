"""Rewriting a form as a sum of powers of linear forms.

Every homogeneous polynomial of degree d in n variables is a unique rational
combination of <α, x>^d over α in B(n, d).  We convert x1*x2, a random cubic,
and the product x1*x2*x3 and expand back to check.
"""
from fractions import Fraction

from powerproduct import PolyCoeffs, from_linear_power, product_monomial_coeffs, to_linear_power


def show(y):
    for alpha, c in y.terms().items():
        print(f"    {str(c):>8} * <{alpha}, x>^{y.d}")


p = PolyCoeffs.from_terms(2, 2, "monomial", {(1, 1): 1})
print("x1*x2 =")
show(to_linear_power(p))

cubic = PolyCoeffs.from_terms(3, 3, "monomial", {(2, 1, 0): Fraction(3, 2), (0, 0, 3): -1, (1, 1, 1): 4})
y = to_linear_power(cubic)
print("\n3/2 x1^2 x2 + 4 x1 x2 x3 - x3^3 =")
show(y)
print("  expands back exactly:", from_linear_power(y) == cubic)

print("\nx1*x2*x3 from the closed form:")
show(product_monomial_coeffs(3))

print("\nJSON exchange format:")
print(" ", y.to_json()[:120], "...")
