import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cofactor_det, leibniz_det, primes_upto
from powerproduct.compositions import enumerate_B, multinomial
from powerproduct.determinant import (
    FactoredInteger,
    ExponentPolynomial,
    block_determinant,
    conjecture_explore,
    det_A_closed,
    det_A_direct,
    det_V,
    det_V2_closed,
    det_V2_via_A,
    det_V_full,
    exponent_polynomials,
    factorize,
    interpolate_exponents,
)
from powerproduct.exact import SingularMatrixError, det_bareiss, inverse_exact, solve_exact
from powerproduct.matrixcore import ExactMatrix, build_A, build_V, build_Vhat, identity


def test_bareiss_examples():
    assert det_bareiss(identity(5)) == 1
    assert det_bareiss([[4, 0, 0], [1, 1, 1], [0, 0, 4]]) == 16
    assert det_bareiss(build_V(3, 2)) == 64
    assert det_bareiss(ExactMatrix([[0, 1], [1, 0]])) == -1
    assert det_bareiss([[1, 2], [2, 4]]) == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda k: st.lists(
    st.lists(st.integers(-20, 20), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_bareiss_matches_leibniz(rows):
    assert det_bareiss(rows) == leibniz_det(rows)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(1, 5) if math.comb(n + d - 1, d) <= 7])
def test_det_V_against_leibniz(n, d):
    assert det_V(n, d).value == leibniz_det(build_V(n, d).tolist())


def test_det_V_examples():
    f = det_V(3, 2)
    assert f.value == 64 and f.factors == {2: 6}
    assert det_V(7, 1).value == 1
    assert str(det_V(2, 5)) == "2^8 * 3^3 * 5^16"
    # 4^10 * 1!2!3!4!; the 2^29 quoted alongside the factorize examples does not match
    assert det_V(2, 4).value == 2**25 * 3**2 == cofactor_det(build_V(2, 4).tolist())


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(1, 5)])
def test_det_V_full_routes(n, d):
    v = det_V(n, d).value
    assert det_V_full(n, d) == v
    assert det_bareiss(build_V(n, d)) == v  # lex order, symmetric permutation


def test_factorize_examples():
    assert factorize(64) == FactoredInteger(1, {2: 6})
    assert factorize(34560).factors == {2: 8, 3: 3, 5: 1}
    assert factorize(-12).sign == -1 and factorize(-12).value == -12
    assert factorize(1).factors == {}
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(-10**12, 10**12).filter(bool))
def test_factorize_round_trip(v):
    f = factorize(v)
    assert f.value == v and f.complete
    assert all(e >= 1 for e in f.factors.values())


def test_factored_arithmetic():
    a, b = factorize(12), factorize(-45)
    assert (a * b).value == -540
    assert (a**3).value == 1728
    assert factorize(2**40 * 7).to_dict()["factors"] == {"2": "40", "7": "1"}


def test_det_A_examples():
    assert det_A_closed(0, 5, -2) == 1
    for a, b in [(3, 4), (-2, 5), (0, 0)]:
        assert det_A_closed(1, a, b) == a + b
    assert det_A_closed(3, 4, 2) == 559872 == det_A_direct(3, 4, 2)


@pytest.mark.parametrize("k", range(0, 5))
def test_det_A_closed_vs_cofactor(k):
    for a in range(-3, 7):
        for b in range(-3, 7):
            assert det_A_closed(k, a, b) == cofactor_det(build_A(k, a, b).tolist())


def test_det_V2_examples():
    assert det_V2_closed(1) == 1
    assert det_V2_closed(2) == 16 == det_bareiss(build_V(2, 2))
    assert det_V2_closed(5) == 5**15 * 34560


@pytest.mark.parametrize("d", range(1, 13))
def test_det_V2_routes(d):
    assert det_V2_closed(d) == det_V(2, d).value == det_V2_via_A(d)


def test_eq7_vhat_determinant():
    for n in range(1, 6):
        for d in range(1, 6):
            if math.comb(n + d - 1, d) > 60:
                continue
            scale = math.prod(multinomial(d, a) for a in enumerate_B(n, d))
            assert det_bareiss(build_Vhat(n, d)) == scale * det_V(n, d).value


def test_block_determinants_nonzero():
    for d in range(1, 8):
        for k in range(1, d + 1):
            assert block_determinant(d, k) != 0
        assert block_determinant(d, d) == 1


def test_conjecture_d5():
    rep = conjecture_explore(5, 7)
    assert rep.passed
    f = rep.polynomials
    assert f[2].coefficients == (0, Fraction(-7, 3), Fraction(11, 6), Fraction(1, 3), Fraction(1, 6))
    assert f[3].coefficients == (0, Fraction(-1, 2), 0, Fraction(1, 2))
    assert f[5].coefficients == (0, Fraction(37, 12), Fraction(35, 24), Fraction(5, 12), Fraction(1, 24))
    assert (f[2](2), f[3](2), f[5](2)) == (8, 3, 16)
    assert set(f) == {2, 3, 5}
    assert '"passed": true' in rep.to_json()


def test_conjecture_d2_degree():
    f = exponent_polynomials(2)
    assert set(f) == {2} and f[2].degree <= 1
    for n in range(1, 9):
        assert f[2](n) == det_V(n, 2).exponent(2)


def test_interpolation_matches_valuation():
    d = 4
    for p in primes_upto(d):
        samples = {n: det_V(n, d).exponent(p) for n in range(1, d + 1)}
        assert interpolate_exponents(d, samples, p) == exponent_polynomials(d)[p]


def test_exponent_polynomial_expression():
    f = ExponentPolynomial(3, (0, Fraction(-1, 2), 0, Fraction(1, 2)))
    assert f.expression() == "1/2*n^3 - 1/2*n"


def test_conjecture_rejects_small_range():
    with pytest.raises(ValueError):
        conjecture_explore(5, 6)


def test_solve_exact_examples():
    assert solve_exact(identity(3), [1, Fraction(2, 3), -4]) == [1, Fraction(2, 3), -4]
    V = build_V(3, 2)
    e4 = [0, 0, 0, 1, 0, 0]
    x = solve_exact(V, e4)
    assert [sum(int(V[i, j]) * x[j] for j in range(6)) for i in range(6)] == e4
    Vh = [[4, 0, 0], [1, 2, 1], [0, 0, 4]]
    inv = inverse_exact(Vh)
    adj_det = det_bareiss(Vh)
    assert adj_det == 32
    assert inv == [[Fraction(1, 4), 0, 0], [Fraction(-1, 8), Fraction(1, 2), Fraction(-1, 8)], [0, 0, Fraction(1, 4)]]
    with pytest.raises(SingularMatrixError):
        solve_exact([[1, 2], [2, 4]], [1, 1])
