from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fareycf.exact import INF
from fareycf.farey import (FareyEdge, fan_split_counts, fan_split_counts_brute, farey_sub, is_neighbor, mediant,
                           neighbors_in_both, neighbors_in_both_brute)

F = Fraction


def _reduced(max_den=40):
    return st.builds(lambda q, p: F(p, q), st.integers(1, max_den), st.integers(-60, 60))


def test_is_neighbor_examples():
    assert is_neighbor(F(0), INF)
    assert is_neighbor(F(1, 2), F(2, 3))
    assert not is_neighbor(F(1, 2), F(3, 4))


def test_mediant_and_subtraction_examples():
    assert mediant(F(0), INF) == 1
    assert mediant(F(1, 2), F(1)) == F(2, 3)
    assert farey_sub(F(2, 3), F(1, 2)) == 1
    with pytest.raises(ValueError):
        mediant(F(1, 2), F(3, 4))


def test_neighbors_in_both_examples():
    assert neighbors_in_both(F(1, 2), F(1, 3), 6)
    assert neighbors_in_both(F(1, 2), F(1), 2)
    assert not neighbors_in_both(F(1, 2), F(2, 3), 5)


def test_fan_split_examples():
    assert fan_split_counts(F(1, 7), 7) == (0, 6)
    assert fan_split_counts(F(1, 3), 7) == (6, 0)
    assert fan_split_counts(F(1, 2), 6) == (2, 1)


def test_fan_split_mixed_gcd_without_common_edges():
    with pytest.raises(ValueError):
        fan_split_counts(F(1, 2), 4)


def test_fan_split_matches_enumeration():
    for n in range(2, 13):
        for q in range(1, 30):
            v = F(1, q)
            try:
                closed = fan_split_counts(v, n)
            except ValueError:
                continue
            assert closed == fan_split_counts_brute(v, n), (q, n)


def test_edge_json_round_trip():
    e = FareyEdge(F(1, 2), F(1, 3), 6)
    assert (e.a, e.b) == (F(1, 3), F(1, 2))
    assert FareyEdge.from_json(e.to_json()) == e
    with pytest.raises(ValueError):
        FareyEdge(F(1, 2), F(3, 4))


@given(_reduced(), _reduced())
def test_is_neighbor_symmetric(a, b):
    assert is_neighbor(a, b) == is_neighbor(b, a)


@given(_reduced(), st.integers(-5, 5), st.integers(1, 6))
def test_mediant_and_sub_are_neighbors(a, k, m):
    # build a neighbor of a: the mediant-type point (p*m + r)/(q*m + s) with ps - qr = 1
    p, q = a.numerator, a.denominator
    r, s = _bezout_partner(p, q)
    b = F(p * m + r + k * p, q * m + s + k * q) if q * m + s + k * q else INF
    if b is INF or not is_neighbor(a, b):
        return
    c = mediant(a, b)
    assert c == mediant(b, a)
    assert is_neighbor(c, a) and is_neighbor(c, b)
    if (p - b.numerator, q - b.denominator) != (0, 0):
        d = farey_sub(a, b)
        assert d is INF or (is_neighbor(d, a) and is_neighbor(d, b))


def _bezout_partner(p, q):
    for s in range(0, abs(q) + 2):
        for sign in (1, -1):
            if (p * s * sign - 1) % q == 0:
                return (p * s * sign - 1) // q, s * sign
    raise AssertionError


def test_lemma_exhaustive_small():
    verts = sorted({F(p, q) for q in range(1, 16) for p in range(0, q + 1)})
    for n in range(1, 9):
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                assert neighbors_in_both(a, b, n) == neighbors_in_both_brute(a, b, n)
