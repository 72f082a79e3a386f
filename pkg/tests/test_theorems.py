from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fareycf.cf import cf_to_surd, classify, height_B, is_esp, multiply_oracle, parse_cf, PeriodicityClass
from fareycf.cutseq import multiply_nbar
from fareycf.exact import QuadraticSurd
from fareycf.theorems import (DecompositionNotFound, TheoremViolation, check_closure, find_evp_decomposition,
                              height_of_surd, last_period_quotient, scan_divisible_convergents, shift_cf,
                              verify_exponential_growth, verify_height_floor, verify_pro2)

from strategies import esp_cfs, periodic_cfs

F = Fraction


def test_pro2_golden_ratio_five():
    ws = verify_pro2(parse_cf("[0;(1)]"), 5, horizon=12)
    assert [(w.k, w.q_k) for w in ws] == [(9, 55)]
    assert ws[0].promoted_convergent == F(34, 11)
    assert ws[0].B_observed == height_B(multiply_oracle(parse_cf("[0;(1)]"), 5)) == 11 >= 5


def test_pro2_sqrt_two():
    ws = verify_pro2(parse_cf("[1;(2)]"), 2, horizon=6)
    assert [(w.k, w.q_k) for w in ws] == [(3, 12), (5, 70)]
    assert [w.promoted_convergent for w in ws] == [F(17, 6), F(99, 35)]
    assert all(w.B_observed == 4 for w in ws)


def test_pro2_vacuous():
    assert verify_pro2(parse_cf("[0;(1)]"), 5, horizon=3) == []


def test_pro2_fan_quotient_reading():
    # with the literal index a_k the bound would fail here: B = 3 < 3 * a_3 = 9
    ws = verify_pro2(parse_cf("[(1;3)]"), 3, horizon=4)
    w = next(w for w in ws if w.q_k == 15)
    assert (w.k, w.a_k, w.fan_quotient, w.B_observed) == (3, 3, 1, 3)


def test_scan_examples():
    assert scan_divisible_convergents(parse_cf("[0;(1)]"), 7, 20) == [7, 15]
    assert [c for c in scan_divisible_convergents(parse_cf("[(1)]"), 2, 10, "numerators")] == [1, 4, 7, 10]
    assert scan_divisible_convergents(parse_cf("[0;1,(1,1,2)]"), 5, 2000) == []
    with pytest.raises(ValueError):
        scan_divisible_convergents(parse_cf("[0;(1)]"), 7, 20, "sides")


def test_closure_example():
    up, down = check_closure(parse_cf("[2;(1,3)]"), 3)
    assert is_esp(up) and is_esp(down)
    with pytest.raises(ValueError):
        check_closure(parse_cf("[3;(1,2)]"), 2)


def test_decomposition_trivial_for_esp():
    cf = parse_cf("[2;(1,3)]")
    dec = find_evp_decomposition(cf, 3)
    assert (dec.k, dec.a, dec.alpha) == (0, 0, cf)


def test_decomposition_example():
    dec = find_evp_decomposition(parse_cf("[3;(1,2)]"), 2)
    assert (dec.k, dec.a, dec.alpha) == (0, 3, parse_cf("[0;(1,2)]"))
    assert dec.m_checked == 8
    for m in range(1, 9):
        assert multiply_nbar(parse_cf("[3;(1,2)]"), m) == shift_cf(multiply_oracle(dec.alpha, m), 3 * m)


def test_decomposition_needs_scaling():
    dec = find_evp_decomposition(parse_cf("[5;1,(8)]"), 2)
    assert dec.k == 0 and dec.a == 5 and classify(dec.alpha) is PeriodicityClass.ESP
    dec = find_evp_decomposition(parse_cf("[3;6,9,(7,1,9,3,2,5)]"), 2)
    assert dec.k == 8 and len(dec.scaled.period) == 1764


def test_decomposition_impossible_when_conjugate_is_larger():
    # n^k*beta = a + alpha with alpha in ESP+ forces conj(n^k*beta) < n^k*beta
    beta = parse_cf("[5;2,(1,1)]")
    x = cf_to_surd(beta)
    assert (x.conjugate() - x).sign() > 0
    with pytest.raises(DecompositionNotFound):
        find_evp_decomposition(beta, 3)


def test_growth_example():
    checks = verify_exponential_growth(parse_cf("[0;(1)]"), 2, 6)
    assert [c.as_tuple() for c in checks] == [(0, 2, 8), (1, 4, 16), (2, 8, 34), (3, 16, 70), (4, 32, 142),
                                               (5, 64, 286), (6, 128, 572)]
    assert all(c.exact for c in checks)


def test_growth_lower_bound_path_agrees():
    exact = verify_exponential_growth(parse_cf("[0;(1)]"), 3, 4)
    cheap = verify_exponential_growth(parse_cf("[0;(1)]"), 3, 4, max_steps=1)
    for e, c in zip(exact, cheap):
        assert not c.exact
        assert c.bound <= c.B_value <= e.B_value


def test_height_of_surd_counts_repeated_first_quotient():
    x = cf_to_surd(parse_cf("[3;(1,1,3)]"))
    assert height_of_surd(x) == 3
    assert height_of_surd(cf_to_surd(parse_cf("[0;1,(8)]"))) == 8


def test_last_period_quotient():
    assert last_period_quotient(cf_to_surd(parse_cf("[(4;1,2)]"))) == 2
    with pytest.raises(ValueError):
        last_period_quotient(cf_to_surd(parse_cf("[0;(1)]")))


def test_height_floor():
    rows = verify_height_floor(parse_cf("[2;(1,3)]"), 20)
    assert all(B >= fl for _, fl, B in rows)


def test_violation_carries_details():
    exc = TheoremViolation("claim", "message", n=3)
    assert exc.claim == "claim" and exc.details == {"n": 3}
    assert isinstance(exc, AssertionError)


@settings(max_examples=30)
@given(periodic_cfs(), st.integers(2, 10))
def test_pro2_holds(cf, n):
    for w in verify_pro2(cf, n, 60):
        assert w.B_observed >= max(n, n * w.fan_quotient)


@given(esp_cfs(), st.integers(2, 12))
def test_closure_holds(cf, n):
    up, down = check_closure(cf, n)
    assert is_esp(up) and is_esp(down)


@settings(max_examples=30)
@given(periodic_cfs(max_quotient=6, max_period=4, max_preperiod=3), st.sampled_from([2, 3]))
def test_decomposition_shape(beta, n):
    try:
        dec = find_evp_decomposition(beta, n, k_max=6, m_max=3)
    except DecompositionNotFound:
        x = cf_to_surd(beta)
        assert not is_esp(beta)
        return
    assert is_esp(dec.alpha)
    if dec.k or dec.a:
        assert cf_to_surd(dec.alpha) == cf_to_surd(beta) * n**dec.k - dec.a
