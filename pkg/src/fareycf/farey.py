"""The Farey complex and its scalings, as combinatorics on extended rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .exact import INF, Rational, as_pair, format_rational, parse_rational, reduce


def _det(a: Rational, b: Rational) -> int:
    p, q = as_pair(a)
    r, s = as_pair(b)
    return p * s - q * r


def is_neighbor(a: Rational, b: Rational) -> bool:
    """True iff a, b span an edge of the Farey complex."""
    return abs(_det(a, b)) == 1


def scale(x: Rational, n) -> Rational:
    """n * x, re-reduced; INF is fixed."""
    if x is INF:
        return INF
    return Fraction(x) * n


def is_neighbor_scaled(a: Rational, b: Rational, d: int) -> bool:
    """Edge test in the complex whose vertices are divided by d."""
    return is_neighbor(scale(a, d), scale(b, d))


def mediant(a: Rational, b: Rational) -> Rational:
    if not is_neighbor(a, b):
        raise ValueError(f"{format_rational(a)} and {format_rational(b)} are not neighbors")
    p, q = as_pair(a)
    r, s = as_pair(b)
    return reduce(p + r, q + s)


def farey_sub(a: Rational, b: Rational) -> Rational:
    if not is_neighbor(a, b):
        raise ValueError(f"{format_rational(a)} and {format_rational(b)} are not neighbors")
    p, q = as_pair(a)
    r, s = as_pair(b)
    return reduce(p - r, q - s)


def neighbors_in_both(a: Rational, b: Rational, n: int) -> bool:
    """Edge of both the complex and its 1/n scaling, via the factorization criterion.

    a = x/(c*n1), b = y/(e*n2) with n = n1*n2 and |x*e*n2 - y*c*n1| = 1.
    INF has denominator 0, which every n1 divides.
    """
    if n < 1:
        raise ValueError("n must be positive")
    x, qa = as_pair(a)
    y, qb = as_pair(b)
    for n1 in range(1, n + 1):
        if n % n1:
            continue
        n2 = n // n1
        if qa % n1 or qb % n2:
            continue
        c, e = qa // n1, qb // n2
        if abs(x * e * n2 - y * c * n1) == 1:
            return True
    return False


def neighbors_in_both_brute(a: Rational, b: Rational, n: int) -> bool:
    return is_neighbor(a, b) and is_neighbor(scale(a, n), scale(b, n))


def _bezout(p: int, q: int) -> tuple[int, int]:
    """(r, s) with p*s - q*r = 1."""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    # old_s*p + old_t*q = 1 (p, q coprime, p*... sign fixed below)
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return -old_t, old_s


def fan_split_counts(vertex: Rational, n: int) -> tuple[int, int]:
    """Neighbors of vertex strictly between consecutive common edges of the complex
    and its 1/n scaling: (count in the complex, count in the scaled complex).

    With g = gcd(q, n) the counts are (n/g - 1, g - 1).  Common edges exist only
    when gcd(q, n/g) = 1; otherwise ValueError.
    """
    if vertex is INF:
        raise ValueError("counts are defined for finite vertices")
    if n < 1:
        raise ValueError("n must be positive")
    q = Fraction(vertex).denominator
    g = gcd(q, n)
    if gcd(q, n // g) != 1:
        raise ValueError(f"vertex {format_rational(vertex)} has no common edges at n={n}")
    return n // g - 1, g - 1


def fan_split_counts_brute(vertex: Rational, n: int, window: Optional[int] = None) -> tuple[int, int]:
    """Enumerate the fan of vertex in both complexes and count between two consecutive
    common neighbors."""
    v = Fraction(vertex)
    p, q = v.numerator, v.denominator
    r0, s0 = _bezout(p, q)
    w = scale(v, n)
    P, Q = w.numerator, w.denominator
    R0, S0 = _bezout(P, Q)
    window = window or 4 * n + 4
    commons = []
    for k in range(-window, window + 1):
        nb = reduce(r0 + k * p, s0 + k * q)
        if not is_neighbor(w, scale(nb, n)):
            continue
        x, y = as_pair(scale(nb, n))
        # position of n*nb in the fan of n*v
        for sx, sy in ((x, y), (-x, -y)):
            if P and (sx - R0) % P == 0:
                j = (sx - R0) // P
            elif not P:
                j = (sy - S0) // Q
            else:
                continue
            if (R0 + j * P, S0 + j * Q) == (sx, sy):
                commons.append((k, j))
                break
    if len(commons) < 2:
        raise ValueError("no consecutive common neighbors in window")
    (k1, j1), (k2, j2) = commons[0], commons[1]
    return abs(k2 - k1) - 1, abs(j2 - j1) - 1


@dataclass(frozen=True)
class FareyEdge:
    """Unordered edge of the complex scaled by 1/scale, stored with a < b (INF greatest)."""

    a: Rational
    b: Rational
    scale: int = 1

    def __post_init__(self):
        a, b = self.a, self.b
        if b < a:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)
        if not is_neighbor_scaled(self.a, self.b, self.scale):
            raise ValueError(f"not an edge at scale {self.scale}: {format_rational(self.a)}, {format_rational(self.b)}")

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b), "scale": self.scale}

    @classmethod
    def from_json(cls, obj: dict) -> "FareyEdge":
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj.get("scale", 1)))
