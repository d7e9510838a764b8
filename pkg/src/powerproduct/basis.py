"""Homogeneous polynomials in the monomial and linear-form-power bases.

For every exponent α of degree d,

    <α, x>^d = sum_β multinomial(d, β) α^β x^β,

so the row of V̂(n, d) indexed by α holds the monomial coefficients of
<α, x>^d.  A polynomial with monomial coefficients ``c`` equals
sum_α y_α <α, x>^d exactly when V̂ᵀ y = c.  V̂ is block lower triangular
in the canonical order, so V̂ᵀ is solved block by block from the bottom.

Coefficient vectors are indexed by the canonical order of B(n, d).
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .compositions import Exponent, multinomial, support_size
from .exact import BlockTriangularSolver, SingularMatrixError, solve_exact
from .matrixcore import ExactMatrix, build_Vhat, format_exact
from .structure import block_decompose, canonical_B

__all__ = [
    "PolyCoeffs",
    "MONOMIAL",
    "LINEAR_POWER",
    "solve_exact",
    "SingularMatrixError",
    "to_linear_power",
    "from_linear_power",
    "product_monomial_coeffs",
    "monomial_expansion_of_power",
]

MONOMIAL = "monomial"
LINEAR_POWER = "linear-power"
BASES = (MONOMIAL, LINEAR_POWER)


@dataclass(frozen=True)
class PolyCoeffs:
    """Coefficients of a degree-d form in n variables in one of the two bases."""

    n: int
    d: int
    basis: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {self.basis!r}")
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != len(canonical_B(self.n, self.d)):
            raise ValueError("coefficient vector has the wrong length")
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return canonical_B(self.n, self.d)

    @classmethod
    def zero(cls, n: int, d: int, basis: str) -> "PolyCoeffs":
        return cls(n, d, basis, (0,) * len(canonical_B(n, d)))

    @classmethod
    def from_terms(cls, n: int, d: int, basis: str, terms: Mapping[Sequence[int], object]) -> "PolyCoeffs":
        order = canonical_B(n, d)
        c = [Fraction(0)] * len(order)
        for alpha, v in terms.items():
            alpha = tuple(alpha)
            if len(alpha) != n or sum(alpha) != d or min(alpha) < 0:
                raise ValueError(f"{alpha} is not an exponent of B({n},{d})")
            c[order.index(alpha)] += Fraction(v)
        return cls(n, d, basis, tuple(c))

    def terms(self) -> dict[Exponent, Fraction]:
        """Nonzero coefficients keyed by exponent."""
        return {a: c for a, c in zip(self.order, self.coeffs) if c != 0}

    def __getitem__(self, alpha) -> Fraction:
        return self.coeffs[self.order.index(tuple(alpha))]

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "d": self.d,
            "basis": self.basis,
            "terms": [{"exponent": list(a), "coeff": format_exact(c)} for a, c in self.terms().items()],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PolyCoeffs":
        doc = json.loads(text)
        n, d = int(doc["n"]), int(doc["d"])
        terms: dict[Exponent, Fraction] = {}
        for t in doc["terms"]:
            a = tuple(int(x) for x in t["exponent"])
            terms[a] = terms.get(a, Fraction(0)) + Fraction(str(t["coeff"]))
        return cls.from_terms(n, d, doc["basis"], terms)


@functools.lru_cache(maxsize=64)
def _vhat(n: int, d: int) -> ExactMatrix:
    return build_Vhat(n, d, canonical_B(n, d))


@functools.lru_cache(maxsize=64)
def _transpose_solver(n: int, d: int) -> BlockTriangularSolver:
    dec = block_decompose(n, d, verify=False)
    return BlockTriangularSolver(_vhat(n, d).transpose(), dec.diagonal_sizes(), upper=True)


def to_linear_power(p: PolyCoeffs) -> PolyCoeffs:
    """Rewrite a form given by monomial coefficients as sum_α y_α <α, x>^d."""
    if p.basis != MONOMIAL:
        raise ValueError("expected monomial coefficients")
    y = _transpose_solver(p.n, p.d).solve(p.coeffs)
    return PolyCoeffs(p.n, p.d, LINEAR_POWER, tuple(y))


def from_linear_power(y: PolyCoeffs) -> PolyCoeffs:
    """Monomial coefficients c = V̂ᵀ y."""
    if y.basis != LINEAR_POWER:
        raise ValueError("expected linear-power coefficients")
    V = _vhat(y.n, y.d).array
    s = len(y.coeffs)
    c = []
    for j in range(s):
        acc = Fraction(0)
        for i, yi in enumerate(y.coeffs):
            if yi:
                v = V[i, j]
                if v:
                    acc += int(v) * yi
        c.append(acc)
    return PolyCoeffs(y.n, y.d, MONOMIAL, tuple(c))


def product_monomial_coeffs(n: int) -> PolyCoeffs:
    """Closed-form linear-power coefficients of x_1 x_2 ... x_n (degree d = n).

    The coefficient of <α, x>^n is

        (-1)^(n-k) (n-k)! / (n! n^(n-k) prod_{α_i != 0} α_i),   k = ||α||_0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    order = canonical_B(n, n)
    c = []
    for a in order:
        k = support_size(a)
        den = math.factorial(n) * n ** (n - k) * math.prod(x for x in a if x)
        c.append(Fraction((-1) ** (n - k) * math.factorial(n - k), den))
    return PolyCoeffs(n, n, LINEAR_POWER, tuple(c))


def monomial_expansion_of_power(alpha: Sequence[int]) -> PolyCoeffs:
    """Monomial coefficients of <α, x>^d where d = |α|."""
    alpha = tuple(alpha)
    n, d = len(alpha), sum(alpha)
    order = canonical_B(n, d)
    c = []
    for beta in order:
        p = 1
        for x, e in zip(alpha, beta):
            p *= x**e
        c.append(multinomial(d, beta) * p)
    return PolyCoeffs(n, d, MONOMIAL, tuple(c))


def indicator(n: int, d: int, alpha: Sequence[int], basis: str) -> PolyCoeffs:
    return PolyCoeffs.from_terms(n, d, basis, {tuple(alpha): 1})
