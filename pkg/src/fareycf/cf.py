"""Continued fractions: data model, convergents, height, periodicity classes,
and the exact surd <-> periodic expansion oracle."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import isqrt
from typing import Iterator, NamedTuple, Optional, Sequence

from .exact import QuadraticSurd


class Convergent(NamedTuple):
    p: int
    q: int
    k: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


class PeriodicityClass(enum.Enum):
    SP = "SP"
    ESP = "ESP"
    EVP = "EVP"
    FINITE = "FINITE"


@dataclass(frozen=True)
class ContinuedFraction:
    """[a0; preperiod..., (period...)].

    Construction only validates; :meth:`normalized` gives the canonical form
    (minimal period, shortest preperiod, no trailing 1 on finite expansions).
    """

    a0: int
    preperiod: tuple[int, ...] = ()
    period: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "a0", int(self.a0))
        object.__setattr__(self, "preperiod", tuple(int(x) for x in self.preperiod))
        if self.period is not None:
            object.__setattr__(self, "period", tuple(int(x) for x in self.period))
            if not self.period:
                raise ValueError("period must be non-empty")
        if any(x < 1 for x in self.preperiod) or any(x < 1 for x in (self.period or ())):
            raise ValueError("partial quotients after a0 must be positive; use absorb_zero_quotients")

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def quotients(self) -> Iterator[int]:
        """a0, a1, a2, ... (infinite for periodic expansions)."""
        yield self.a0
        yield from self.preperiod
        if self.period is not None:
            while True:
                yield from self.period

    def terms(self, count: int) -> list[int]:
        return list(islice(self.quotients(), count))

    def __len__(self) -> int:
        if self.period is not None:
            raise TypeError("periodic continued fraction has no finite length")
        return 1 + len(self.preperiod)

    def normalized(self) -> "ContinuedFraction":
        return normalize(self)

    def __str__(self) -> str:
        return format_cf(self)


# -- canonical forms -------------------------------------------------------

def minimal_period(word: Sequence[int]) -> tuple[int, ...]:
    """Shortest root w0 with word = w0^k, via the prefix-function."""
    n = len(word)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    root = n - fail[-1] if n else 0
    if root and n % root == 0:
        return tuple(word[:root])
    return tuple(word)


def normalize(cf: ContinuedFraction) -> ContinuedFraction:
    if cf.period is None:
        pre = list(cf.preperiod)
        a0 = cf.a0
        # [.., x, 1] == [.., x+1]; [a0; 1] == [a0 + 1]
        if pre and pre[-1] == 1:
            pre.pop()
            if pre:
                pre[-1] += 1
            else:
                a0 += 1
        return ContinuedFraction(a0, tuple(pre), None)
    period = list(minimal_period(cf.period))
    pre = list(cf.preperiod)
    while pre and pre[-1] == period[-1]:
        pre.pop()
        period = [period[-1]] + period[:-1]
    return ContinuedFraction(cf.a0, tuple(pre), tuple(period))


def _merge_zeros(seq: Sequence[int]) -> list[int]:
    """Concatenate fans across empty ones: [.., x, 0, y, ..] -> [.., x + y, ..].

    Index 0 is the integer part and may itself be 0 without merging.
    """
    out: list[int] = []
    for x in seq:
        out.append(x)
        while len(out) >= 3 and out[-2] == 0:
            y = out.pop()
            out.pop()
            out[-1] += y
    return out


def absorb_zero_quotients(a0: int, preperiod: Sequence[int] = (), period: Optional[Sequence[int]] = None) -> ContinuedFraction:
    """Eliminate zero partial quotients by merging the fans on either side."""
    if period is None:
        seq = _merge_zeros([a0, *preperiod])
        if len(seq) >= 2 and seq[-1] == 0:
            # a trailing empty fan contributes nothing: [.., x, 0] = [.., x] + 1/(0 + ...) diverges;
            # as a finite expansion [.., x, 0] means x + 1/0, i.e. the previous convergent
            seq = seq[:-2]
            if not seq:
                raise ValueError("expansion collapses to infinity")
        if any(x < 0 for x in seq[1:]):
            raise ValueError("negative partial quotient after zero absorption")
        return normalize(ContinuedFraction(seq[0], tuple(seq[1:]), None))
    period = list(period)
    if not any(period):
        raise ValueError("period of zeros has no value")
    s = len(period)
    # merging never reaches back more than one period, so a long prefix settles;
    # the last two periods may be cut mid-merge and are discarded
    reps = 3 * s + 4
    body = _merge_zeros([a0, *preperiod] + period * reps)[: -2 * s]
    for start in range(1, len(body)):
        for L in range(1, s + 1):
            if len(body) - start < 3 * L:
                continue
            window = body[start:start + L]
            if all(body[t] == window[(t - start) % L] for t in range(start, len(body))):
                pre = body[1:start]
                if any(x < 1 for x in pre) or any(x < 1 for x in window):
                    raise ValueError("zero quotients do not reduce to positive ones")
                out = normalize(ContinuedFraction(body[0], tuple(pre), tuple(window)))
                if cf_to_surd(out) != _raw_value([a0, *preperiod], period):
                    raise ArithmeticError("zero absorption changed the value")
                return out
    raise ValueError("could not absorb zero quotients")


def _raw_value(head: Sequence[int], period: Sequence[int]) -> QuadraticSurd:
    """Value of [head..., (period...)] where entries may be zero."""
    p, pp, q, qq = _matrix(period)
    if q == 0:
        raise ValueError("period has no finite fixed point")
    b = qq - p
    y = QuadraticSurd(-b, 1, 2 * q, b * b + 4 * q * pp)
    hp, hpp, hq, hqq = _matrix(head)
    return y.mobius(hp, hpp, hq, hqq)


def normalize_even_period(cf: ContinuedFraction, even_preperiod: bool = False) -> ContinuedFraction:
    """Same value, period of even length; optionally an even-length preperiod too."""
    if cf.period is None:
        raise ValueError("finite continued fraction has no period")
    cf = normalize(cf)
    period = cf.period
    if len(period) % 2:
        period = period + period
    pre = cf.preperiod
    if even_preperiod and len(pre) % 2:
        pre = pre + (period[0],)
        period = period[1:] + period[:1]
    return ContinuedFraction(cf.a0, pre, period)


# -- text form ---------------------------------------------------------------

_INT = r"-?\d+"


def parse_cf(text: str, allow_zero: bool = False) -> ContinuedFraction:
    """Parse `[a0]`, `[a0;b1,...]`, `[a0;b1,...,(p1,...)]` or `[(a0;p1,...)]`.

    With allow_zero, zero quotients are absorbed on the fly.
    """
    t = text.strip().replace(" ", "")
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"not a continued fraction: {text!r}")
    body = t[1:-1]
    if body.startswith("(") and body.endswith(")"):
        # strictly periodic form with a0 inside the period
        inner = body[1:-1]
        head, _, tail = inner.partition(";")
        word = [int(head)] + ([int(x) for x in tail.split(",")] if tail else [])
        a0, pre, period = word[0], [], word[1:] + word[:1]
    else:
        head, _, tail = body.partition(";")
        if not re.fullmatch(_INT, head):
            raise ValueError(f"bad integer part in {text!r}")
        a0 = int(head)
        pre, period = [], None
        if tail:
            if "(" in tail:
                before, _, per = tail.partition("(")
                if not per.endswith(")"):
                    raise ValueError(f"unterminated period in {text!r}")
                per = per[:-1]
                before = before.rstrip(",")
                pre = [int(x) for x in before.split(",")] if before else []
                period = [int(x) for x in per.split(",")]
            else:
                pre = [int(x) for x in tail.split(",")]
    if allow_zero and (0 in pre or (period and 0 in period)):
        return absorb_zero_quotients(a0, pre, period)
    return ContinuedFraction(a0, tuple(pre), tuple(period) if period is not None else None)


def format_cf(cf: ContinuedFraction) -> str:
    parts = [str(x) for x in cf.preperiod]
    if cf.period is not None:
        parts.append("(" + ",".join(str(x) for x in cf.period) + ")")
    if not parts:
        return f"[{cf.a0}]"
    return f"[{cf.a0};" + ",".join(parts) + "]"


# -- convergents and height ------------------------------------------------

def convergents(cf: ContinuedFraction, count: int) -> list[Convergent]:
    if count < 1:
        raise ValueError("count must be positive")
    if cf.period is None and count > len(cf):
        raise ValueError(f"finite continued fraction has only {len(cf)} convergents")
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1  # (p_{-1}, q_{-1}) and (p_{-2}, q_{-2})
    for k, a in enumerate(islice(cf.quotients(), count)):
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        out.append(Convergent(p0, q0, k))
    return out


def iter_convergents(cf: ContinuedFraction) -> Iterator[Convergent]:
    p0, q0, p1, q1 = 1, 0, 0, 1
    for k, a in enumerate(cf.quotients()):
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        yield Convergent(p0, q0, k)


def height_B(cf: ContinuedFraction, horizon: int = 1000) -> int:
    """sup of a_i over i >= 1 (a0 excluded); 0 when there is no such term.

    Exact for periodic input regardless of horizon.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    if cf.period is not None:
        return max(cf.preperiod + cf.period)
    terms = cf.preperiod[:horizon]
    return max(terms) if terms else 0


# -- classification ----------------------------------------------------------

def value_sign(cf: ContinuedFraction) -> int:
    if cf.a0 > 0:
        return 1
    if cf.a0 == 0:
        return 1 if (cf.preperiod or cf.period) else 0
    # a0 < 0: value in (a0, a0 + 1]
    return -1


def classify(cf: ContinuedFraction) -> PeriodicityClass:
    """Most specific class; computed on the canonical form."""
    if value_sign(cf) <= 0:
        raise ValueError("classification is defined for positive values only")
    cf = normalize(cf)
    if cf.period is None:
        return PeriodicityClass.FINITE
    last = cf.period[-1]
    if not cf.preperiod and (cf.a0 == 0 or cf.a0 == last):
        return PeriodicityClass.SP
    if not cf.preperiod and 0 < cf.a0 <= last:
        return PeriodicityClass.ESP
    # reading of the second essentially periodic form: a1 <= last entry of the stored period
    if cf.a0 == 0 and len(cf.preperiod) == 1 and cf.preperiod[0] <= last:
        return PeriodicityClass.ESP
    return PeriodicityClass.EVP


def is_sp(cf: ContinuedFraction) -> bool:
    return classify(cf) is PeriodicityClass.SP


def is_esp(cf: ContinuedFraction) -> bool:
    return classify(cf) in (PeriodicityClass.SP, PeriodicityClass.ESP)


def is_evp(cf: ContinuedFraction) -> bool:
    return classify(cf) is not PeriodicityClass.FINITE


# -- surd oracle -------------------------------------------------------------

def _matrix(quotients: Sequence[int]) -> tuple[int, int, int, int]:
    """Product of [[a,1],[1,0]] over the quotients: [[p, p'], [q, q']]."""
    p, pp, q, qq = 1, 0, 0, 1
    for a in quotients:
        p, pp, q, qq = a * p + pp, p, a * q + qq, q
    return p, pp, q, qq


def cf_to_surd(cf: ContinuedFraction) -> QuadraticSurd:
    head = [cf.a0, *cf.preperiod]
    if cf.period is None:
        p, pp, q, qq = _matrix(head)
        return QuadraticSurd.from_rational(Fraction(p, q))
    # y = [(period)] solves y = (p y + p')/(q y + q')
    p, pp, q, qq = _matrix(cf.period)
    b = qq - p
    disc = b * b + 4 * q * pp
    y = QuadraticSurd(-b, 1, 2 * q, disc)
    hp, hpp, hq, hqq = _matrix(head)
    return y.mobius(hp, hpp, hq, hqq)


def surd_to_cf(x: QuadraticSurd) -> ContinuedFraction:
    if x.is_rational:
        f = x.to_fraction()
        num, den = f.numerator, f.denominator
        quots = []
        while den:
            a = num // den
            quots.append(a)
            num, den = den, num - a * den
        return normalize(ContinuedFraction(quots[0], tuple(quots[1:]), None))
    P, Q, D = x.pqd()
    r = isqrt(D)  # D is not a square, so floor((P + sqrt D)/Q) follows from isqrt
    seen: dict[tuple[int, int], int] = {}
    quots: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quots)
        a = (P + r) // Q if Q > 0 else -((P + r) // -Q) - 1
        quots.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    j = seen[(P, Q)]
    if j == 0:
        cf = ContinuedFraction(quots[0], (), tuple(quots[1:]) + (quots[0],))
    else:
        cf = ContinuedFraction(quots[0], tuple(quots[1:j]), tuple(quots[j:]))
    return normalize(cf)


def multiply_oracle(cf: ContinuedFraction, q) -> ContinuedFraction:
    """Exact expansion of q * value(cf) for positive rational q."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("multiplier must be positive")
    return surd_to_cf(cf_to_surd(cf) * q)
