from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf, sqrt

from fareycf.exact import (INF, QuadraticSurd, as_pair, format_rational, format_surd, padic_valuation,
                           parse_rational, parse_surd, reduce, sign_surd, squarefree_split, surd_compare)

from strategies import surds

mp.dps = 60


def _num(x: QuadraticSurd):
    return (x.p + x.s * sqrt(mpf(x.d))) / x.q if x.d else mpf(x.p) / x.q


def test_reduce_examples():
    assert reduce(4, 6) == Fraction(2, 3)
    assert reduce(3, 0) is INF
    assert reduce(-2, -4) == Fraction(1, 2)


def test_reduce_rejects_zero_over_zero():
    with pytest.raises(ValueError):
        reduce(0, 0)


def test_infinity_is_not_a_number():
    with pytest.raises(TypeError):
        INF + 1
    assert as_pair(INF) == (1, 0)
    assert format_rational(INF) == "1/0"
    assert parse_rational("1/0") is INF


def test_surd_compare_examples():
    half = QuadraticSurd.from_rational(Fraction(1, 2))
    assert surd_compare(parse_surd("(-1+sqrt(5))/2"), half) == 1
    assert surd_compare(QuadraticSurd.from_rational(Fraction(3, 2)), QuadraticSurd.from_rational(Fraction(3, 2))) == 0
    assert surd_compare(parse_surd("sqrt(2)"), QuadraticSurd.from_rational(Fraction(3, 2))) == -1


def test_padic_valuation_examples():
    assert padic_valuation(12, 2) == 2
    assert padic_valuation(7, 7) == 1
    assert padic_valuation(1, 5) == 0


def test_squarefree_extraction_makes_forms_unique():
    assert squarefree_split(72) == (6, 2)
    assert parse_surd("sqrt(8)") == QuadraticSurd(0, 2, 1, 2)
    assert hash(parse_surd("(2+sqrt(12))/2")) == hash(parse_surd("1+sqrt(3)"))


def test_surd_text_round_trip():
    for text in ["(-1+sqrt(5))/2", "(3-2*sqrt(7))/5", "7/3", "(0+sqrt(2))/1"]:
        assert format_surd(parse_surd(text)) == format_surd(parse_surd(format_surd(parse_surd(text))))
    assert format_surd(parse_surd("(-1+sqrt(5))/2")) == "(-1+sqrt(5))/2"


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 10**6).filter(lambda m: int(m**0.5)**2 != m))
def test_sign_surd_matches_numeric(u, v, m):
    val = u + v * sqrt(mpf(m))
    expected = 0 if val == 0 else (1 if val > 0 else -1)
    assert sign_surd(u, v, m) == expected


@given(surds(), surds())
def test_surd_compare_agrees_with_high_precision(x, y):
    a, b = _num(x), _num(y)
    expected = 0 if a == b else (1 if a > b else -1)
    assert surd_compare(x, y) == expected


@given(surds(), surds(), surds())
def test_surd_compare_transitive(x, y, z):
    if surd_compare(x, y) <= 0 and surd_compare(y, z) <= 0:
        assert surd_compare(x, z) <= 0


@given(surds(), st.fractions(min_value=-1000, max_value=1000, max_denominator=50), st.integers(-20, 20).filter(bool))
def test_surd_arithmetic_stays_canonical(x, r, m):
    for y in (x + r, x * m, x - m, x.reciprocal()):
        P, Q, D = y.pqd()
        assert (D - P * P) % Q == 0
        a, b = squarefree_split(y.d)
        assert a == 1
        assert abs(_num(y) - (P + sqrt(mpf(D))) / Q) < mpf(10) ** -40


@given(surds())
def test_floor_and_conjugate(x):
    assert x.floor() == int(mp.floor(_num(x)))
    c = x.conjugate()
    assert abs(_num(c) - (x.p - x.s * sqrt(mpf(x.d))) / x.q) < mpf(10) ** -40
