"""Exact determinants of power-product matrices.

The primary route multiplies the determinants of the k-composition blocks,
each raised to C(n, k).  Full-matrix Bareiss elimination is kept as an
independent check.  Closed forms cover A_k(a, b) and V(2, d), and
:func:`conjecture_explore` derives the per-prime exponent polynomials of
det V(n, d) for fixed d.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from sympy import factorint, isprime, primerange

from .compositions import count_weak_compositions
from .exact import det_bareiss
from .matrixcore import ExactMatrix, build_A, build_V
from .structure import canonical_B, composition_block

__all__ = [
    "FactoredInteger",
    "ExponentPolynomial",
    "NonsingularityError",
    "det_bareiss",
    "det_V",
    "det_V_full",
    "block_determinant",
    "det_A_closed",
    "det_V2_closed",
    "det_V2_via_A",
    "factorize",
    "conjecture_explore",
    "ConjectureReport",
]


class NonsingularityError(ArithmeticError):
    """A block determinant vanished; V(n, d) is nonsingular, so this is a bug."""


@dataclass(frozen=True)
class FactoredInteger:
    """``sign * prod(p**e)``; ``complete`` is False when a cofactor could not be split."""

    sign: int
    factors: Mapping[int, int]
    complete: bool = True

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "factors", dict(sorted(self.factors.items())))

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        return v

    def __int__(self):
        return self.value

    @property
    def primes(self) -> list[int]:
        return list(self.factors)

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        out = dict(self.factors)
        for p, e in other.factors.items():
            out[p] = out.get(p, 0) + e
        return FactoredInteger(self.sign * other.sign, out, self.complete and other.complete)

    def __pow__(self, k: int) -> "FactoredInteger":
        if k < 0:
            raise ValueError("negative power")
        return FactoredInteger(self.sign**k, {p: e * k for p, e in self.factors.items() if e * k}, self.complete)

    def __str__(self):
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors.items()) or "1"
        return f"-{body}" if self.sign < 0 else body

    def to_dict(self) -> dict:
        return {
            "sign": self.sign,
            "value": str(self.value),
            "factors": {str(p): str(e) for p, e in self.factors.items()},
            "complete": self.complete,
        }


ONE = FactoredInteger(1, {})


def factorize(v: int, limit: int | None = 10**7) -> FactoredInteger:
    """Prime factorization of a nonzero integer.

    Trial division and rho/p-1 splitting are bounded by ``limit``; any
    cofactor left composite marks the result incomplete (it is kept in
    ``factors`` as is).  ``limit=None`` runs to completion.
    """
    if v == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if v > 0 else -1
    v = abs(v)
    if v == 1:
        return FactoredInteger(sign, {})
    f = factorint(v) if limit is None else factorint(v, limit=limit)
    complete = all(isprime(p) for p in f)
    return FactoredInteger(sign, f, complete)


@functools.lru_cache(maxsize=None)
def block_determinant(d: int, k: int) -> int:
    """det of the power-product matrix of the k-compositions of d."""
    return det_bareiss(composition_block(d, k))


@functools.lru_cache(maxsize=None)
def _block_factored(d: int, k: int) -> FactoredInteger:
    b = block_determinant(d, k)
    if b == 0:
        raise NonsingularityError(f"block determinant for d={d}, k={k} is zero")
    return factorize(b, limit=None)


def det_V(n: int, d: int) -> FactoredInteger:
    """det V(n, d) as the product of block determinants raised to C(n, k)."""
    count_weak_compositions(n, d)
    out = ONE
    for k in range(1, min(n, d) + 1):
        out = out * (_block_factored(d, k) ** math.comb(n, k))
    return out


def det_V_full(n: int, d: int, size_cap: int = 5000, order=None) -> int:
    """Bareiss determinant of the whole s × s matrix (canonical order by default)."""
    s = count_weak_compositions(n, d)
    if s > size_cap:
        raise ValueError(f"s({n},{d}) = {s} exceeds size cap {size_cap}")
    return det_bareiss(build_V(n, d, canonical_B(n, d) if order is None else order))


def det_A_closed(k: int, a: int, b: int) -> int:
    """(a+b)^(k(k+1)/2) * 1! 2! ... k!"""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return (a + b) ** (k * (k + 1) // 2) * _superfactorial(k)


def det_A_direct(k: int, a: int, b: int) -> int:
    return det_bareiss(build_A(k, a, b))


def det_V2_closed(d: int) -> int:
    """d^(d(d+1)/2) * 1! 2! ... d!"""
    if d < 1:
        raise ValueError("d must be positive")
    return d ** (d * (d + 1) // 2) * _superfactorial(d)


def det_V2_via_A(d: int) -> int:
    """det V(2, d) through the central A_{d-2}(d-1, 1) block with its row factors."""
    if d == 1:
        return 1
    return d ** (2 * d) * math.factorial(d - 1) ** 2 * det_A_closed(d - 2, d - 1, 1)


def _superfactorial(k: int) -> int:
    out = 1
    for h in range(1, k + 1):
        out *= math.factorial(h)
    return out


# -- exponent polynomials ----------------------------------------------


@dataclass(frozen=True)
class ExponentPolynomial:
    """Univariate polynomial in n; ``coefficients[i]`` multiplies n**i."""

    prime: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c) or (Fraction(0),))

    @property
    def degree(self) -> int:
        return -1 if self.coefficients == (0,) else len(self.coefficients) - 1

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def expression(self) -> str:
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else "n" if i == 1 else f"n^{i}"
            mag = abs(c)
            if mono and mag == 1:
                t = mono
            elif mono:
                t = f"{mag}*{mono}"
            else:
                t = str(mag)
            terms.append(("-" if c < 0 else "+", t))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, t in terms[1:]:
            s += f" {sgn} {t}"
        return s

    def to_dict(self) -> dict:
        return {
            "prime": str(self.prime),
            "coefficients": [_frac_str(c) for c in self.coefficients],
            "expression": self.expression(),
        }


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _binomial_poly(i: int) -> list[Fraction]:
    """Coefficients of C(n, i) = n(n-1)...(n-i+1)/i! in powers of n."""
    c = [Fraction(1)]
    for j in range(i):
        # multiply by (n - j)
        nxt = [Fraction(0)] * (len(c) + 1)
        for t, x in enumerate(c):
            nxt[t + 1] += x
            nxt[t] -= j * x
        c = nxt
    f = math.factorial(i)
    return [x / f for x in c]


def exponent_polynomials(d: int, primes=None) -> dict[int, ExponentPolynomial]:
    """f_p(n) = sum_k C(n, k) * v_p(block determinant k), for every prime p."""
    vals = {k: _block_factored(d, k) for k in range(1, d + 1)}
    if primes is None:
        primes = sorted(set(primerange(2, d + 1)) | {p for f in vals.values() for p in f.factors})
    out = {}
    for p in primes:
        coef = [Fraction(0)] * (d + 1)
        for k, f in vals.items():
            e = f.exponent(p)
            if e:
                for t, x in enumerate(_binomial_poly(k)):
                    coef[t] += e * x
        out[p] = ExponentPolynomial(p, tuple(coef))
    return out


def interpolate_exponents(d: int, samples: Mapping[int, int], p: int) -> ExponentPolynomial:
    """Polynomial of degree < len(samples) through (n, exponent) pairs (Lagrange, exact)."""
    pts = sorted(samples.items())
    coef = [Fraction(0)] * len(pts)
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for t, x in enumerate(basis):
                nxt[t + 1] += x
                nxt[t] -= xj * x
            basis = nxt
            den *= xi - xj
        for t, x in enumerate(basis):
            coef[t] += yi * x / den
    return ExponentPolynomial(p, tuple(coef))


@dataclass
class ConjectureReport:
    d: int
    n_max: int
    determinants: dict[int, FactoredInteger]
    polynomials: dict[int, ExponentPolynomial]
    counterexamples: list[dict] = field(default_factory=list)
    incomplete: list[int] = field(default_factory=list)
    cross_checks: dict[int, bool] = field(default_factory=dict)
    interpolation_agrees: dict[int, bool] = field(default_factory=dict)
    degree_ok: bool = True

    @property
    def prime_support_ok(self) -> bool:
        return not self.counterexamples and not self.incomplete

    @property
    def passed(self) -> bool:
        return (
            self.prime_support_ok
            and all(self.cross_checks.values())
            and all(self.interpolation_agrees.values())
            and self.degree_ok
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n_max": self.n_max,
            "determinants": {str(n): f.to_dict() for n, f in sorted(self.determinants.items())},
            "polynomials": {str(p): f.to_dict() for p, f in sorted(self.polynomials.items())},
            "counterexamples": self.counterexamples,
            "incomplete": self.incomplete,
            "cross_checks": {str(n): ok for n, ok in sorted(self.cross_checks.items())},
            "interpolation_agrees": {str(p): ok for p, ok in sorted(self.interpolation_agrees.items())},
            "degree_ok": self.degree_ok,
            "prime_support_ok": self.prime_support_ok,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def conjecture_explore(d: int, n_max: int, factor_limit: int | None = 10**7) -> ConjectureReport:
    """Check the small-prime support of det V(n, d) for n = 1..n_max and
    derive the exponent polynomials.

    ``n_max`` must be at least d + 2: the polynomials are cross-checked
    against determinants factored from scratch at n = d+1 and d+2, and
    against interpolation through n = 1..d.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if n_max < d + 2:
        raise ValueError("n_max must be at least d + 2")
    small = list(primerange(2, d + 1))
    polys = exponent_polynomials(d)
    dets = {n: det_V(n, d) for n in range(1, n_max + 1)}
    rep = ConjectureReport(d, n_max, dets, {p: polys[p] for p in small})

    for n, f in dets.items():
        if not f.complete:
            rep.incomplete.append(n)
            continue
        extra = [p for p in f.factors if p > d]
        if extra:
            rep.counterexamples.append({"n": n, "primes": [str(p) for p in extra]})
    # any prime outside P(d) gets its own polynomial so the report is complete
    for p, poly in polys.items():
        if p > d:
            rep.polynomials[p] = poly

    rep.degree_ok = all(poly.degree <= d - 1 for poly in rep.polynomials.values())
    for n in (d + 1, d + 2):
        direct = factorize(dets[n].value, limit=factor_limit)
        rep.cross_checks[n] = direct.complete and all(
            rep.polynomials.get(p) is not None and rep.polynomials[p](n) == e
            for p, e in direct.factors.items()
        ) and all(poly(n) == direct.exponent(p) for p, poly in rep.polynomials.items())
    for p, poly in rep.polynomials.items():
        samples = {n: dets[n].exponent(p) for n in range(1, d + 1)}
        rep.interpolation_agrees[p] = interpolate_exponents(d, samples, p) == poly
    return rep
