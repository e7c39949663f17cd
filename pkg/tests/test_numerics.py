import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphexp.errors import PartsSumMismatch, ValidationError
from graphexp.numerics import (
    binomial,
    build_stirling_tables,
    close,
    falling_factorial_coeffs,
    format_rational,
    multinomial,
    parse_rational,
)

# Signed Stirling numbers, tau and lambda as printed (rows 0..5).
S_ROWS = [
    [1],
    [0, 1],
    [0, -1, 1],
    [0, 2, -3, 1],
    [0, -6, 11, -6, 1],
    [0, 24, -50, 35, -10, 1],
]
TAU_ROWS = [[0], [1], [0, 1], [0, -2, 1], [0, 6, -5, 1], [0, -24, 26, -9, 1]]
LAMBDA_ROWS = [[0], [1], [1, 1], [-1, -1, 1], [2, 2, -4, 1], [-6, -6, 18, -8, 1]]


@pytest.mark.parametrize("n, k, expected", [(4, 2, 6), (3, 5, 0), (0, 0, 1), (5, -1, 0), (10, 3, 120)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


@pytest.mark.parametrize("n, parts, expected", [(3, [1, 2], 3), (3, [1, 1, 1], 6), (5, [5], 1), (4, [2, 2], 6)])
def test_multinomial(n, parts, expected):
    assert multinomial(n, parts) == expected


def test_multinomial_rejects_mismatch():
    with pytest.raises(PartsSumMismatch):
        multinomial(4, [1, 2])


def test_stirling_table_matches_printed_rows():
    t = build_stirling_tables(5)
    for j in range(6):
        assert list(t.s[j]) == S_ROWS[j]
        for k, v in enumerate(TAU_ROWS[j]):
            assert t.tau[j][k] == v
        for k, v in enumerate(LAMBDA_ROWS[j]):
            assert t.lam[j][k] == v


def test_spot_values():
    t = build_stirling_tables(5)
    assert t.stirling(5, 2) == -50
    assert t.tau_at(4, 2) == -5
    assert t.lambda_at(5, 2) == 18
    assert t.tau_at(3, 1) == -2


def test_stirling_boundaries_and_zero_sum():
    t = build_stirling_tables(15)
    assert t.s[0][0] == 1
    for j in range(1, 16):
        assert t.s[j][0] == 0
        assert t.s[j][j] == 1
    for j in range(2, 16):
        assert sum(t.s[j]) == 0
        assert t.tau_at(j, 1) == -t.s[j][1] == (-1) ** j * math.factorial(j - 1)


def test_stirling_rows_are_falling_factorial_coefficients():
    t = build_stirling_tables(6)
    for j in range(7):
        # evaluate both polynomials at many points instead of trusting the expansion helper
        for x in range(-3, 9):
            falling = 1
            for r in range(j):
                falling *= x - r
            assert sum(c * x**i for i, c in enumerate(t.s[j])) == falling
        assert list(t.s[j]) == falling_factorial_coeffs(j)


def test_tau_lambda_share_recursion():
    t = build_stirling_tables(10)
    for j in range(1, 10):
        for k in range(1, j + 1):
            assert t.tau[j + 1][k] == t.tau[j][k - 1] - j * t.tau[j][k]
            assert t.lam[j + 1][k] == t.lam[j][k - 1] - j * t.lam[j][k]


def test_large_table_does_not_overflow():
    t = build_stirling_tables(30)
    assert abs(t.s[30][1]) == math.factorial(29)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(0.1) == Fraction(1, 10)
    assert parse_rational(7) == 7
    for bad in ["x", True, None, float("nan"), "1/0"]:
        with pytest.raises(ValidationError):
            parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(7, 6)) == "7/6"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational(format_rational(Fraction(-5, 3))) == Fraction(-5, 3)


def test_close():
    assert close(1.0, 1.0 + 1e-12)
    assert not close(1.0, 1.001)


fractions_st = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**6)


@given(fractions_st, fractions_st, fractions_st)
def test_exact_addition_is_associative(a, b, c):
    assert (a + b) + c == a + (b + c)
    s = a + b
    assert s.denominator > 0
