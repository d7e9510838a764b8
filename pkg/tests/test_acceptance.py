"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the collected lines are
repeated in the terminal summary.  ``python tests/test_acceptance.py`` prints
them without pytest.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from oracles import linear_form_power, primes_upto
from powerproduct import basis, determinant, identities, structure
from powerproduct.basis import (
    LINEAR_POWER,
    MONOMIAL,
    PolyCoeffs,
    from_linear_power,
    indicator,
    product_monomial_coeffs,
    to_linear_power,
)
from powerproduct.determinant import conjecture_explore, det_A_closed, det_V, det_V_full
from powerproduct.exact import det_bareiss
from powerproduct.identities import (
    all_b,
    alternating_composition_sum,
    enumerate_couples,
    involution_check,
    verify_delta_identity,
    verify_gf_identity,
    verify_rearrangement,
)
from powerproduct.matrixcore import build_A, build_V
from powerproduct.structure import canonical_B, inverse_pattern_check, nnz_count, nnz_formula, sparsity

RESULTS: list[str] = []


def _clear_caches():
    for fn in (determinant.block_determinant, determinant._block_factored,
               structure.canonical_B, structure.composition_block,
               basis._vhat, basis._transpose_solver, identities.signless_stirling):
        fn.cache_clear()


def gate(name, limit, checks):
    """Run ``checks`` (returns a list of (label, ok) pairs), time it, print one line."""
    _clear_caches()
    t0 = time.perf_counter()
    parts = checks()
    elapsed = time.perf_counter() - t0
    failed = [label for label, ok in parts if not ok]
    if elapsed >= limit:
        failed.append(f"runtime {elapsed:.1f}s >= {limit}s")
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] {name} ({elapsed:.2f}s / {limit}s)"
    if failed:
        line += " :: " + "; ".join(failed)
    print(line)
    RESULTS.append(line)
    assert not failed, line


PRINTED_V32 = [
    [4, 0, 0, 0, 0, 0],
    [0, 4, 0, 0, 0, 0],
    [0, 0, 4, 0, 0, 0],
    [1, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 1, 0, 0, 1],
]
PRINTED_B32 = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def test_v32_reproduction():
    def checks():
        order = canonical_B(3, 2)
        V = build_V(3, 2, order)
        return [
            ("order", list(order) == PRINTED_B32),
            ("matrix", V.tolist() == PRINTED_V32),
            ("det", det_bareiss(V) == 64 and det_V(3, 2).value == 64),
            ("nnz", nnz_count(V) == 12 and nnz_formula(3, 2) == 12),
            ("sparsity", sparsity(3, 2) == Fraction(2, 3)),
        ]
    gate("V(3,2) reproduction", 1, checks)


def test_det_v2_closed_form():
    def checks():
        out = []
        for d in range(1, 13):
            expected = d ** (d * (d + 1) // 2) * math.prod(math.factorial(h) for h in range(1, d + 1))
            out.append((f"d={d}", det_V(2, d).value == expected))
        return out
    gate("det V(2,d) closed form, d <= 12", 10, checks)


def test_det_A_closed_form():
    def checks():
        out = []
        for k in range(0, 7):
            for a in range(-3, 7):
                for b in range(-3, 7):
                    if det_A_closed(k, a, b) != det_bareiss(build_A(k, a, b)):
                        out.append((f"k={k},a={a},b={b}", False))
        out.append(("cases", 7 * 10 * 10 >= 441))
        return out
    gate("det A_k(a,b) closed form, 700 cases", 30, checks)


def test_nonsingularity():
    def checks():
        return [(f"n={n},d={d}", det_V(n, d).value != 0) for n in range(1, 8) for d in range(1, 8)]
    gate("nonsingularity, n,d <= 7", 60, checks)


def test_oracle_equivalence():
    def checks():
        return [(f"n={n},d={d}", det_V(n, d).value == det_V_full(n, d))
                for n in range(1, 6) for d in range(1, 6)]
    gate("block determinant == full Bareiss, n,d <= 5", 120, checks)


def test_sparsity_theorem():
    def checks():
        out = [(f"nnz n={n},d={d}", nnz_formula(n, d) == nnz_count(build_V(n, d)))
               for n in range(1, 9) for d in range(1, 9)]
        spa = 1 - Fraction(nnz_count(build_V(10, 2)), math.comb(11, 2) ** 2)
        out.append((f"spa(V(10,2)) == 2870/3025 (computed {spa})", spa == Fraction(2870, 3025)))
        out += [(f"spa(10,{d}) > 0.9", sparsity(10, d) > Fraction(9, 10)) for d in (2, 4, 6, 8, 10, 12)]
        return out
    gate("sparsity theorem", 60, checks)


def test_inverse_sparsity():
    def checks():
        return [(f"n={n},d={d}", inverse_pattern_check(n, d).holds) for n in range(1, 6) for d in range(1, 6)]
    gate("inverse sparsity, n,d <= 5", 120, checks)


def test_basis_conversion():
    def checks():
        out = []
        rng = random.Random(20240601)
        for n in range(1, 5):
            for d in range(1, 5):
                order = canonical_B(n, d)
                powers = {a: linear_form_power(a, d) for a in order}
                ok = True
                for _ in range(100):
                    c = tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 50)) for _ in order)
                    p = PolyCoeffs(n, d, MONOMIAL, c)
                    y = to_linear_power(p)
                    if from_linear_power(y) != p:
                        ok = False
                        break
                    expanded = dict.fromkeys(order, Fraction(0))
                    for a, ya in y.terms().items():
                        for beta, v in powers[a].items():
                            expanded[beta] += ya * v
                    if {k: v for k, v in expanded.items() if v} != p.terms():
                        ok = False
                        break
                out.append((f"random n={n},d={d}", ok))
        for n in range(1, 6):
            generic = to_linear_power(indicator(n, n, (1,) * n, MONOMIAL))
            out.append((f"product monomial n={n}", product_monomial_coeffs(n) == generic))
            out.append((f"basis tag n={n}", generic.basis == LINEAR_POWER))
        return out
    gate("basis conversion", 60, checks)


def test_identity_suites():
    def checks():
        out = [(f"gf m={m},n={n}", verify_gf_identity(m, n)) for m in range(0, 9) for n in range(m + 1, 13)]
        for n in range(1, 8):
            for b in all_b(n):
                out.append((f"rearrangement n={n},b={b}", verify_rearrangement(n, len(b), b)))
                out.append((f"delta n={n},b={b}", verify_delta_identity(n, len(b), b)))
        for n in range(2, 6):
            for b in all_b(n, strict=True):
                wsum = sum(c.weight for c in enumerate_couples(n, b))
                out.append((f"couple sum n={n},b={b}",
                            wsum == alternating_composition_sum(n, len(b), b) == 0))
                rep = involution_check(n, b)
                out.append((f"involution n={n},b={b}", rep.ok))
        return out
    gate("identity suites", 300, checks)


def test_conjecture_reproduction():
    expected = {
        2: lambda n: Fraction(n * (n - 1) * (n * n + 3 * n + 14), 6),
        3: lambda n: Fraction(n * (n - 1) * (n + 1), 2),
        5: lambda n: Fraction(n * (n**3 + 10 * n**2 + 35 * n + 74), 24),
    }

    def checks():
        rep = conjecture_explore(5, 7)
        out = [("report passed", rep.passed), ("primes", set(rep.polynomials) == set(expected))]
        for p, f in expected.items():
            # degree <= 4 polynomials agreeing at 8 points are equal
            out.append((f"f_{p}", all(rep.polynomials[p](n) == f(n) for n in range(0, 8))))
        for d in range(1, 7):
            allowed = set(primes_upto(d))
            for n in range(1, 8):
                fac = det_V(n, d)
                out.append((f"primes of det V({n},{d})", fac.complete and set(fac.primes) <= allowed))
        return out
    gate("conjecture reproduction, d = 5", 120, checks)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
