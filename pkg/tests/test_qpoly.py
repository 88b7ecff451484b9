"""Polynomial layer: q-binomials, exact arithmetic, determinants."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpaths.errors import InvalidArgument
from qpaths.qpoly import QPolynomial, poly_det, poly_eval, q_binomial, q_binomial_at


def pascal_q_binomial(a: int, b: int) -> list[int]:
    """Independent oracle: coefficient list via the q-Pascal recursion.

    [a, b] = [a-1, b-1] + q^b [a-1, b], starting from [a, 0] = 1.
    """
    if b < 0 or b > a:
        return []
    table = {(0, 0): [1]}
    for aa in range(1, a + 1):
        for bb in range(0, aa + 1):
            if bb == 0 or bb == aa:
                table[(aa, bb)] = [1]
                continue
            left = table[(aa - 1, bb - 1)]
            right = table[(aa - 1, bb)]
            out = [0] * max(len(left), bb + len(right))
            for i, c in enumerate(left):
                out[i] += c
            for i, c in enumerate(right):
                out[bb + i] += c
            table[(aa, bb)] = out
    return table[(a, b)]


def cofactor_det(matrix):
    """Independent oracle: Laplace expansion along the first row."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = QPolynomial.zero()
    for j in range(size):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_q_binomial_matches_pascal_oracle():
    for a in range(13):
        for b in range(a + 1):
            assert list(q_binomial(a, b).coeffs) == pascal_q_binomial(a, b)


def test_q_binomial_symmetry_and_palindrome():
    for a in range(12):
        for b in range(a + 1):
            p = q_binomial(a, b)
            assert p == q_binomial(a, a - b)
            assert list(p.coeffs) == list(reversed(p.coeffs))


def test_q_binomial_at_one_is_binomial():
    for a in range(11):
        for b in range(a + 1):
            assert q_binomial(a, b)(Fraction(1)) == math.comb(a, b)


def test_q_binomial_out_of_range_is_zero():
    assert q_binomial(3, 5).is_zero()
    assert q_binomial(3, -1).is_zero()


def test_q_binomial_rejects_negative_upper():
    with pytest.raises(InvalidArgument):
        q_binomial(-1, 0)


def test_q_binomial_at_agrees_with_polynomial():
    for q in (Fraction(2, 7), Fraction(3), 0.37, 2.5):
        for a in range(9):
            for b in range(a + 1):
                direct = q_binomial_at(a, b, q)
                via_poly = q_binomial(a, b)(q)
                if isinstance(q, Fraction):
                    assert direct == via_poly
                else:
                    assert direct == pytest.approx(via_poly, rel=1e-12)


coeff_lists = st.lists(st.integers(min_value=-50, max_value=50), max_size=8)


@given(coeff_lists, coeff_lists)
@settings(max_examples=80, deadline=None)
def test_multiplication_matches_schoolbook(a_coeffs, b_coeffs):
    a = QPolynomial(a_coeffs)
    b = QPolynomial(b_coeffs)
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
        return
    out = [0] * (a.degree + b.degree + 1)
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            out[i + j] += ca * cb
    assert a * b == QPolynomial(out)


@given(coeff_lists, coeff_lists, st.fractions(max_denominator=20))
@settings(max_examples=80, deadline=None)
def test_ring_operations_commute_with_evaluation(a_coeffs, b_coeffs, q):
    a = QPolynomial(a_coeffs)
    b = QPolynomial(b_coeffs)
    assert (a + b)(q) == a(q) + b(q)
    assert (a - b)(q) == a(q) - b(q)
    assert (a * b)(q) == a(q) * b(q)


def test_exact_division_round_trip():
    a = q_binomial(9, 4)
    b = QPolynomial((1, 2, 1))
    assert (a * b).exact_div(b) == a
    with pytest.raises(InvalidArgument):
        QPolynomial((1, 1, 1)).exact_div(QPolynomial((1, 1)))


def test_monomial_shift_scale():
    p = QPolynomial.monomial(3, 2)
    assert list(p.coeffs) == [0, 0, 0, 2]
    assert list(p.shift(2).coeffs) == [0, 0, 0, 0, 0, 2]
    assert p.scale(3) == QPolynomial.monomial(3, 6)


def test_poly_det_matches_cofactor_oracle():
    import random

    rng = random.Random(7)
    for size in (2, 3, 4):
        for _ in range(5):
            matrix = [
                [
                    QPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(0, 3))])
                    for _ in range(size)
                ]
                for _ in range(size)
            ]
            assert poly_det(matrix) == cofactor_det(matrix)


def test_poly_det_of_q_binomial_matrix():
    matrix = [[q_binomial(i + j + 2, j + 1) for j in range(3)] for i in range(3)]
    assert poly_det(matrix) == cofactor_det(matrix)


def test_poly_eval_helper():
    p = QPolynomial((1, 0, 2))
    assert poly_eval(p, Fraction(1, 2)) == Fraction(3, 2)
    assert poly_eval(p, 2.0) == 9.0
