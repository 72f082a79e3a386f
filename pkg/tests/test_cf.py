from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf, sqrt, floor

from fareycf.cf import (ContinuedFraction, PeriodicityClass, absorb_zero_quotients, cf_to_surd, classify,
                        convergents, format_cf, height_B, is_esp, is_evp, is_sp, multiply_oracle, normalize,
                        normalize_even_period, parse_cf, surd_to_cf)
from fareycf.exact import QuadraticSurd, parse_surd

from strategies import finite_cfs, periodic_cfs

mp.dps = 300


def _expand(x, count):
    out = []
    for _ in range(count):
        a = int(floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


def _value(cf):
    P, Q, D = cf_to_surd(cf).pqd()
    return (P + sqrt(mpf(D))) / Q


def test_parse_and_format():
    assert format_cf(parse_cf("[0;(1)]")) == "[0;(1)]"
    assert format_cf(parse_cf("[2;3,(1,4)]")) == "[2;3,(1,4)]"
    assert format_cf(parse_cf("[1;2]")) == "[1;2]"
    # the bracketed a0 starts the period
    assert parse_cf("[(2;1,1)]") == ContinuedFraction(2, (), (1, 1, 2))
    with pytest.raises(ValueError):
        parse_cf("[1;0,2]")
    with pytest.raises(ValueError):
        parse_cf("1;2")


def test_finite_canonical_form_folds_trailing_one():
    assert normalize(ContinuedFraction(1, (2, 1), None)) == ContinuedFraction(1, (3,), None)
    assert normalize(ContinuedFraction(4, (1,), None)) == ContinuedFraction(5, (), None)


def test_minimal_period():
    assert normalize(parse_cf("[1;(2,2,2)]")) == parse_cf("[1;(2)]")
    assert normalize(parse_cf("[1;3,(1,3)]")) == parse_cf("[1;(3,1)]")


def test_convergents_examples():
    cs = convergents(parse_cf("[0;1,1,1,1,1]"), 6)
    assert [c.value for c in cs] == [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(3, 5), Fraction(5, 8)]
    assert [c.value for c in convergents(parse_cf("[7]"), 1)] == [Fraction(7)]
    sqrt2 = convergents(parse_cf("[1;2,2,2]"), 4)
    assert [(c.p, c.q) for c in sqrt2] == [(1, 1), (3, 2), (7, 5), (17, 12)]


def test_height_examples():
    assert height_B(parse_cf("[5;1,1]")) == 1
    assert height_B(normalize(parse_cf("[5;1,1]"))) == 2  # canonical form is [5;2]
    assert height_B(parse_cf("[0;(1,2)]")) == 2
    assert height_B(parse_cf("[2;3,(1,4)]")) == 4
    assert height_B(parse_cf("[5]")) == 0


def test_classify_examples():
    assert classify(parse_cf("[(2;1,1)]")) is PeriodicityClass.SP
    assert classify(parse_cf("[0;(1,2)]")) is PeriodicityClass.SP
    assert classify(parse_cf("[2;(1,3)]")) is PeriodicityClass.ESP
    assert classify(parse_cf("[3;(1,2)]")) is PeriodicityClass.EVP
    assert classify(parse_cf("[0;2,(1,3)]")) is PeriodicityClass.ESP
    assert classify(parse_cf("[0;4,(1,3)]")) is PeriodicityClass.EVP
    assert classify(parse_cf("[1;2]")) is PeriodicityClass.FINITE


def test_even_period_examples():
    assert normalize_even_period(parse_cf("[(2;1,1)]")).period == (1, 1, 2, 1, 1, 2)
    assert normalize_even_period(parse_cf("[0;(1,4)]")) == parse_cf("[0;(1,4)]")
    assert normalize_even_period(parse_cf("[1;(3)]")).period == (3, 3)


def test_zero_quotient_examples():
    assert absorb_zero_quotients(2, (), (1, 1, 0, 2)) == parse_cf("[2;(1,3)]")
    assert absorb_zero_quotients(0, (), (1, 2)) == parse_cf("[0;(1,2)]")
    assert absorb_zero_quotients(1, (), (2, 0, 3, 1)) == parse_cf("[1;(5,1)]")
    assert parse_cf("[(2;1,1,0)]", allow_zero=True) == parse_cf("[2;(1,3)]")


def test_surd_examples():
    assert cf_to_surd(parse_cf("[0;(1)]")) == parse_surd("(-1+sqrt(5))/2")
    assert cf_to_surd(parse_cf("[1;2]")) == QuadraticSurd.from_rational(Fraction(3, 2))
    assert cf_to_surd(parse_cf("[(2)]")) == parse_surd("1+sqrt(2)")
    assert surd_to_cf(parse_surd("sqrt(2)")) == parse_cf("[1;(2)]")
    assert surd_to_cf(QuadraticSurd.from_rational(Fraction(3, 2))) == parse_cf("[1;2]")
    assert surd_to_cf(parse_surd("(-1+sqrt(5))/2")) == parse_cf("[0;(1)]")


def test_oracle_examples():
    assert multiply_oracle(parse_cf("[0;(1)]"), 2) == parse_cf("[1;(4)]")
    assert multiply_oracle(parse_cf("[0;2]"), 3) == parse_cf("[1;2]")
    assert multiply_oracle(parse_cf("[(2)]"), 2) == parse_cf("[4;(1,4)]")
    with pytest.raises(ValueError):
        multiply_oracle(parse_cf("[1;2]"), 0)


@given(periodic_cfs(max_quotient=20, max_period=8))
def test_surd_round_trip(cf):
    assert surd_to_cf(cf_to_surd(cf)) == normalize(cf)


@given(periodic_cfs())
def test_oracle_agrees_with_floating_expansion(cf):
    x = _value(cf)
    assert cf.terms(25) == _expand(x, 25)


@given(finite_cfs())
def test_finite_round_trip(cf):
    assert surd_to_cf(cf_to_surd(cf)) == cf


@given(periodic_cfs())
def test_convergent_determinant(cf):
    cs = convergents(cf, 30)
    p1, q1 = 1, 0
    for c in cs:
        assert abs(c.p * q1 - p1 * c.q) == 1
        p1, q1 = c.p, c.q


@given(periodic_cfs())
def test_classify_monotone(cf):
    if is_sp(cf):
        assert is_esp(cf)
    if is_esp(cf):
        assert is_evp(cf)
    assert is_evp(cf)


_small_multipliers = st.builds(Fraction, st.integers(1, 6), st.integers(1, 4))


@given(periodic_cfs(max_quotient=5, max_period=3, max_preperiod=2), _small_multipliers, _small_multipliers)
def test_oracle_composes(cf, a, b):
    assert multiply_oracle(multiply_oracle(cf, a), b) == multiply_oracle(cf, a * b)


@given(periodic_cfs())
def test_height_invariant_under_even_period(cf):
    assert height_B(normalize_even_period(cf)) == height_B(cf)


@given(periodic_cfs(), st.integers(0, 5))
def test_height_invariant_under_zero_absorption(cf, where):
    # insert "x, 0, y" -> "x+y" style zeros into the period and absorb them again
    per = list(cf.period)
    i = where % len(per)
    split = per[i] - 1
    if split < 1:
        return
    widened = per[:i] + [split, 0, 1] + per[i + 1:]
    back = absorb_zero_quotients(cf.a0, cf.preperiod, tuple(widened))
    assert back == cf
    assert height_B(back) == height_B(cf)
