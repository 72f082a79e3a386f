"""Exact numbers: reduced rationals with a point at infinity, and real quadratic surds.

Rationals are plain :class:`fractions.Fraction` values.  The projective point
``1/0`` is the singleton :data:`INF`; it only ever appears as a vertex of a
Farey tessellation and refuses arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Union


class _Infinity:
    """The vertex 1/0.  Compares above every rational, supports no arithmetic."""

    __slots__ = ()
    numerator = 1
    denominator = 0

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "1/0"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash(("farey-infinity",))

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __reduce__(self):
        return "INF"


INF = _Infinity()

Rational = Union[Fraction, _Infinity]


def reduce(num: int, den: int) -> Rational:
    """Reduced rational num/den; den = 0 gives INF, 0/0 is rejected."""
    if den == 0:
        if num == 0:
            raise ValueError("0/0 is undefined")
        return INF
    return Fraction(num, den)


def as_pair(x: Rational) -> tuple[int, int]:
    """(numerator, denominator) of a reduced rational; INF is (1, 0)."""
    return x.numerator, x.denominator


def parse_rational(text: str) -> Rational:
    text = text.strip()
    if text in ("inf", "oo", "∞", "INF"):
        return INF
    if "/" in text:
        num, den = text.split("/", 1)
        return reduce(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Rational) -> str:
    if x is INF:
        return "1/0"
    return f"{x.numerator}/{x.denominator}"


def padic_valuation(x: int, p: int) -> int:
    """Largest k with p**k dividing x."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if x < 1:
        raise ValueError("x must be a positive integer")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


TRIAL_LIMIT = 50_000


def squarefree_split(d: int) -> tuple[int, int]:
    """Write d = k*k*m with m square-free; returns (k, m)."""
    if d < 0:
        raise ValueError("negative radicand")
    if d == 0:
        return 0, 0
    k, m, rest = 1, 1, d
    f = 2
    while f * f * f <= rest and f <= TRIAL_LIMIT:
        if rest % f == 0:
            e = 0
            while rest % f == 0:
                rest //= f
                e += 1
            k *= f ** (e // 2)
            if e % 2:
                m *= f
        f += 1 if f == 2 else 2
    r = isqrt(rest)
    if r * r == rest:
        return k * r, m
    if f * f * f > rest:
        # no factor below the cube root: rest is p or p*q with distinct primes
        return k, m * rest
    from sympy import factorint  # large cofactor: needs real factoring

    for prime, e in factorint(rest).items():
        k *= prime ** (e // 2)
        if e % 2:
            m *= prime
    return k, m


def sign_surd(u: int, v: int, m: int) -> int:
    """Sign of u + v*sqrt(m) for m >= 0, by integer comparisons only."""
    if v == 0 or m == 0:
        return (u > 0) - (u < 0)
    r = isqrt(m)
    if r * r == m:
        t = u + v * r
        return (t > 0) - (t < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    if (u > 0) == (v > 0):
        return 1 if u > 0 else -1
    # opposite signs: the larger magnitude wins; equality is impossible for non-square m
    if u * u > v * v * m:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


def _sign_two_radicals(u: int, v: int, m: int, w: int, k: int) -> int:
    """Sign of u + v*sqrt(m) + w*sqrt(k)."""
    s1 = sign_surd(u, v, m)
    s2 = (w > 0) - (w < 0)
    if s2 == 0:
        return s1
    if s1 == 0 or s1 == s2:
        return s2 if s1 == 0 else s1
    # compare |u + v sqrt m| against |w| sqrt k by squaring
    c = sign_surd(u * u + v * v * m - w * w * k, 2 * u * v, m)
    if c == 0:
        return 0
    return s1 if c > 0 else s2


@total_ordering
class QuadraticSurd:
    """The real number (p + s*sqrt(d)) / q in a unique reduced form.

    d is square-free (d = 0 means rational), q > 0 and gcd(p, s, q) = 1.
    :meth:`pqd` gives the equivalent (P + sqrt(D)) / Q form with Q | D - P*P
    that drives the continued-fraction recurrence.
    """

    __slots__ = ("p", "s", "q", "d", "_hash")

    def __init__(self, p: int, s: int = 0, q: int = 1, d: int = 0, squarefree: bool = False):
        if q == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if d < 0:
            raise ValueError("only real surds are supported")
        if s != 0 and d != 0 and not squarefree:
            k, d = squarefree_split(d)
            s *= k
            if d == 1:
                p, s, d = p + s, 0, 0
        if s == 0 or d == 0:
            s, d = 0, 0
        if q < 0:
            p, s, q = -p, -s, -q
        g = gcd(gcd(p, s), q)
        if g > 1:
            p, s, q = p // g, s // g, q // g
        self.p, self.s, self.q, self.d = p, s, q, d
        self._hash = hash((p, s, q, d))

    @classmethod
    def from_rational(cls, x) -> "QuadraticSurd":
        if x is INF:
            raise ValueError("INF is not a real number")
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, 0)

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticSurd":
        return cls(0, 1, 1, d)

    @classmethod
    def from_pqd(cls, P: int, Q: int, D: int) -> "QuadraticSurd":
        """(P + sqrt(D)) / Q."""
        return cls(P, 1, Q, D)

    # -- structure -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("surd is irrational")
        return Fraction(self.p, self.q)

    def pqd(self) -> tuple[int, int, int]:
        """(P, Q, D) with value (P + sqrt(D))/Q and Q dividing D - P^2."""
        if self.is_rational:
            raise ValueError("rational values have no (P, Q, D) form")
        P, Q, D = self.p, self.q, self.s * self.s * self.d
        if self.s < 0:
            P, Q = -P, -Q
        if (D - P * P) % Q:
            a = abs(Q)
            P, D, Q = P * a, D * a * a, Q * a
        return P, Q, D

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.s, self.q, self.d, True)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticSurd):
            return (self.p, self.s, self.q, self.d) == (other.p, other.s, other.q, other.d)
        if isinstance(other, (int, Fraction)):
            return self.is_rational and Fraction(self.p, self.q) == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        return surd_compare(self, _coerce(other)) < 0

    def sign(self) -> int:
        return sign_surd(self.p, self.s, self.d)

    # -- arithmetic ------------------------------------------------------
    def _radicand(self, other: "QuadraticSurd") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError("surds with different radicands")
        return self.d or other.d

    def __add__(self, other) -> "QuadraticSurd":
        o = _coerce(other)
        d = self._radicand(o)
        return QuadraticSurd(self.p * o.q + o.p * self.q, self.s * o.q + o.s * self.q, self.q * o.q, d, True)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.p, -self.s, self.q, self.d, True)

    def __sub__(self, other) -> "QuadraticSurd":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QuadraticSurd":
        return _coerce(other) - self

    def __mul__(self, other) -> "QuadraticSurd":
        o = _coerce(other)
        d = self._radicand(o)
        p = self.p * o.p + self.s * o.s * d
        s = self.p * o.s + self.s * o.p
        return QuadraticSurd(p, s, self.q * o.q, d, True)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticSurd":
        # 1/((p + s r)/q) = q (p - s r) / (p^2 - s^2 d)
        norm = self.p * self.p - self.s * self.s * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticSurd(self.q * self.p, -self.q * self.s, norm, self.d, True)

    def __truediv__(self, other) -> "QuadraticSurd":
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "QuadraticSurd":
        return _coerce(other) * self.reciprocal()

    def floor(self) -> int:
        if self.is_rational:
            return self.p // self.q
        # floor(s*sqrt(d)) exactly, then floor((p + t)/q) = floor((p + floor t)/q)
        m = self.s * self.s * self.d
        r = isqrt(m)
        t = r if self.s > 0 else -(r + 1)
        return (self.p + t) // self.q

    def mobius(self, a: int, b: int, c: int, d: int) -> "QuadraticSurd":
        """(a x + b) / (c x + d)."""
        if self.is_rational:
            return (self * a + b) / (self * c + d)
        # numerator and denominator over the common q, then one rationalization
        up, us = a * self.p + b * self.q, a * self.s
        lp, ls = c * self.p + d * self.q, c * self.s
        norm = lp * lp - ls * ls * self.d
        if norm == 0:
            raise ZeroDivisionError("mobius image is infinite")
        # (up + us r)(lp - ls r) / norm
        return QuadraticSurd(up * lp - us * ls * self.d, us * lp - up * ls, norm, self.d, True)

    def __float__(self) -> float:
        return (self.p + self.s * self.d ** 0.5) / self.q

    def __repr__(self) -> str:
        return f"QuadraticSurd({format_surd(self)})"

    def __str__(self) -> str:
        return format_surd(self)


def _coerce(x) -> QuadraticSurd:
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticSurd.from_rational(x)
    raise TypeError(f"cannot use {x!r} as a quadratic surd")


def surd_compare(x: QuadraticSurd, y: QuadraticSurd) -> int:
    """-1, 0 or 1 as x <, =, > y; exact."""
    x, y = _coerce(x), _coerce(y)
    # x - y = (p1 q2 - p2 q1 + s1 q2 sqrt d1 - s2 q1 sqrt d2) / (q1 q2), denominators positive
    u = x.p * y.q - y.p * x.q
    if x.d == y.d or x.d == 0 or y.d == 0:
        m = x.d or y.d
        return sign_surd(u, x.s * y.q - y.s * x.q, m)
    return _sign_two_radicals(u, x.s * y.q, x.d, -y.s * x.q, y.d)


def format_surd(x: QuadraticSurd) -> str:
    """Rationals as "p/q"; irrationals as "(p+sqrt(d))/q", "(p-3*sqrt(d))/q", ..."""
    if x.is_rational:
        return f"{x.p}/{x.q}"
    sign = "-" if x.s < 0 else "+"
    coef = "" if abs(x.s) == 1 else f"{abs(x.s)}*"
    return f"({x.p}{sign}{coef}sqrt({x.d}))/{x.q}"


_SURD_RE = re.compile(
    r"^\(?\s*(?P<p>[+-]?\d+)?\s*(?P<sign>[+-])?\s*(?:(?P<s>\d+)\s*\*?\s*)?sqrt\(\s*(?P<d>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<q>[+-]?\d+))?$"
)


def parse_surd(text: str) -> QuadraticSurd:
    """Parse "p/q", "sqrt(d)", "(p+sqrt(d))/q", "(p-s*sqrt(d))/q"."""
    text = text.strip().replace(" ", "")
    if "sqrt" not in text:
        r = parse_rational(text)
        if r is INF:
            raise ValueError("INF is not a real number")
        return QuadraticSurd.from_rational(r)
    m = _SURD_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse surd {text!r}")
    p = int(m.group("p") or 0)
    s = int(m.group("s") or 1)
    sign = m.group("sign")
    if m.group("p") is None and sign is None:
        sign = "+"
    if sign == "-":
        s = -s
    elif sign is None:
        raise ValueError(f"cannot parse surd {text!r}")
    q = int(m.group("q") or 1)
    return QuadraticSurd(p, s, q, int(m.group("d")))
