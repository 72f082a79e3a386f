"""Executable checks of divisibility, height and decomposition statements about
continued fractions under integer multiplication."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional

from .cf import (ContinuedFraction, cf_to_surd, classify, convergents, height_B, is_esp,
                 iter_convergents, multiply_oracle, normalize, surd_to_cf, PeriodicityClass)
from .cutseq import convergent_vertices, multiply_nbar, trace
from .exact import QuadraticSurd, format_rational


class TheoremViolation(AssertionError):
    """A proved statement failed on a concrete input."""

    def __init__(self, claim: str, message: str, **details):
        super().__init__(f"{claim}: {message}")
        self.claim = claim
        self.details = details


class DecompositionNotFound(RuntimeError):
    def __init__(self, beta: ContinuedFraction, n: int, k_max: int):
        super().__init__(f"no decomposition of {beta} for n={n} with k <= {k_max}")
        self.beta, self.n, self.k_max = beta, n, k_max


# -- divisible denominators and the height bound ----------------------------

@dataclass(frozen=True)
class Pro2Witness:
    k: int
    q_k: int
    n: int
    a_k: int
    fan_quotient: int  # quotient of the fan pivoting at p_k/q_k, i.e. a_{k+1}
    B_observed: int
    promoted_convergent: Fraction

    def to_json(self) -> dict:
        d = asdict(self)
        d["promoted_convergent"] = format_rational(self.promoted_convergent)
        return d


def _convergent_set(cf: ContinuedFraction, max_q: int) -> set[Fraction]:
    out = set()
    for c in iter_convergents(cf):
        out.add(c.value)
        if c.q > max_q:
            break
    return out


def _vertex_set(alpha: QuadraticSurd, n: int, max_q: int) -> set:
    count = 16
    while True:
        verts = convergent_vertices(alpha, n, count)
        finite = [v for v in verts if isinstance(v, Fraction)]
        if len(verts) < count or (finite and finite[-1].denominator > max_q):
            return set(verts)
        count *= 2


def verify_pro2(cf: ContinuedFraction, n: int, horizon: int = 500) -> list[Pro2Witness]:
    """Check every convergent p_k/q_k (k <= horizon) with n | q_k and n < q_k.

    For each one: B(n*alpha) >= n, B(n*alpha) >= n * (quotient of the fan at
    p_k/q_k), and p_k/(q_k/n) is a convergent of n*alpha, found both among the
    traced fan vertices and among the convergents of the surd expansion.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if cf.period is None:
        raise ValueError("periodic input required")
    conv = convergents(cf, horizon + 2)
    quots = [a for a, _ in zip(cf.quotients(), range(horizon + 2))]
    hits = [c for c in conv[: horizon + 1] if c.q % n == 0 and c.q > n]
    if not hits:
        return []
    scaled = multiply_nbar(cf, n)
    B = height_B(scaled)
    oracle = multiply_oracle(cf, n)
    max_q = max(c.q for c in hits)
    oracle_convs = _convergent_set(oracle, max_q // n)
    traced = _vertex_set(cf_to_surd(cf), n, max_q)
    out = []
    for c in hits:
        w = Pro2Witness(c.k, c.q, n, quots[c.k], quots[c.k + 1], B, Fraction(c.p, c.q // n))
        if B < n:
            raise TheoremViolation("pro2", f"B={B} < n", witness=w.to_json(), cf=str(cf))
        if B < n * w.fan_quotient:
            raise TheoremViolation("pro2-corollary", f"B={B} < {n}*{w.fan_quotient}", witness=w.to_json(), cf=str(cf))
        if w.promoted_convergent not in oracle_convs:
            raise TheoremViolation("pro2-convergent", "promoted convergent missing from expansion",
                                   witness=w.to_json(), cf=str(cf))
        if Fraction(c.p, c.q) not in traced:
            raise TheoremViolation("pro2-convergent", "p_k/q_k is not a fan vertex against (1/n)F",
                                   witness=w.to_json(), cf=str(cf))
        out.append(w)
    return out


def scan_divisible_convergents(cf: ContinuedFraction, n: int, horizon: int = 500,
                               side: str = "denominators") -> list[int]:
    """Indices k <= horizon with n | q_k (or n | p_k for side="numerators")."""
    if side not in ("denominators", "numerators"):
        raise ValueError(f"unknown side {side!r}")
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for c in iter_convergents(cf):
        if c.k > horizon:
            break
        if (c.q if side == "denominators" else c.p) % n == 0:
            out.append(c.k)
    return out


# -- closure ------------------------------------------------------------------

def check_closure(cf: ContinuedFraction, n: int) -> tuple[ContinuedFraction, ContinuedFraction]:
    """n*alpha (traced) and alpha/n (expanded) for alpha with an essentially periodic expansion."""
    if not is_esp(cf):
        raise ValueError(f"{cf} is not essentially periodic")
    up = multiply_nbar(cf, n)
    down = multiply_oracle(cf, Fraction(1, n))
    for label, res in (("multiply", up), ("divide", down)):
        if not is_esp(res):
            raise TheoremViolation("closure", f"{label} by {n} left the class: {res}", cf=str(cf), n=n)
    return up, down


# -- eventually periodic decomposition ----------------------------------------

def _reduced(y: QuadraticSurd) -> bool:
    c = y.conjugate()
    return (y - 1).sign() > 0 and c.sign() < 0 and (c + 1).sign() > 0


def _fraction_is_esp(x: QuadraticSurd) -> bool:
    """Whether x - floor(x) expands as [0;(...)] or [0;a1,(...)] with a1 <= last period entry.

    Uses that a quadratic irrational has a purely periodic expansion exactly
    when it is reduced, and that the last period entry of a reduced y is
    floor(-1/conj(y)).
    """
    f = x - x.floor()
    x1 = f.reciprocal()
    if _reduced(x1):
        return True
    t1 = x1.floor()
    x2 = (x1 - t1).reciprocal()
    return _reduced(x2) and t1 <= last_period_quotient(x2)


def last_period_quotient(y: QuadraticSurd) -> int:
    """Last entry of the period of a reduced surd y."""
    if not _reduced(y):
        raise ValueError("surd is not reduced")
    return (-(y.conjugate().reciprocal())).floor()


def shift_cf(cf: ContinuedFraction, a: int) -> ContinuedFraction:
    return normalize(ContinuedFraction(cf.a0 + a, cf.preperiod, cf.period))


@dataclass(frozen=True)
class EvpDecomposition:
    k: int
    a: int
    alpha: ContinuedFraction
    n: int = 0
    scaled: Optional[ContinuedFraction] = None  # expansion of n^k * beta
    m_checked: int = 0
    # kept so callers never rebuild a surd from a long period (square-free splitting is costly)
    value: Optional[QuadraticSurd] = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {"k": self.k, "a": self.a, "alpha": str(self.alpha), "n": self.n,
                "scaled": None if self.scaled is None else str(self.scaled), "m_checked": self.m_checked}


def find_evp_decomposition(beta: ContinuedFraction, n: int, k_max: int = 12, m_max: int = 8) -> EvpDecomposition:
    """Smallest k <= k_max with n^k*beta - a essentially periodic, a as large as possible.

    The shift identity is checked for m = 1..m_max: the expansion of
    m*n^k*beta (traced) equals that of m*alpha (expanded) with m*a added to
    the integer part.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if classify(beta) is PeriodicityClass.FINITE:
        raise ValueError("periodic input required")
    if is_esp(beta):
        return EvpDecomposition(0, 0, normalize(beta), n, normalize(beta), 0, cf_to_surd(beta))
    b = cf_to_surd(beta)
    for k in range(k_max + 1):
        x = b * n**k
        if not _fraction_is_esp(x):
            continue
        # a smaller integer part than floor(x) would leave a preperiod longer than one
        a = x.floor()
        rest = x - a
        alpha = surd_to_cf(rest)
        scaled = surd_to_cf(x)
        if not is_esp(alpha):
            raise TheoremViolation("evp", "reducedness test and expansion disagree", beta=str(beta), k=k)
        for m in range(1, m_max + 1):
            lhs = trace(x, m, max_quotients=10**7)
            rhs = shift_cf(surd_to_cf(rest * m), m * a)
            if lhs != rhs:
                raise TheoremViolation("evp-shift", f"m={m}: {lhs} != {rhs}", beta=str(beta), n=n, k=k, a=a)
        return EvpDecomposition(k, a, alpha, n, scaled, m_max, rest)
    raise DecompositionNotFound(beta, n, k_max)


def decomposition_has_pure_form(dec: EvpDecomposition) -> bool:
    """Expansion of n^k*beta is [A;(p_1..p_s)] with A > p_s."""
    s = dec.scaled
    return s is not None and not s.preperiod and s.period is not None and s.a0 > s.period[-1]


# -- growth of heights --------------------------------------------------------

def height_of_surd(x: QuadraticSurd, max_steps: int = 50_000) -> Optional[int]:
    """Exact B(x) from the (P, Q, D) recurrence, or None if the period is longer than max_steps."""
    P, Q, D = x.pqd()
    r = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    quots: list[int] = []
    for _ in range(max_steps):
        if (P, Q) in seen:
            # a purely periodic expansion repeats a0 inside the period
            return max(quots[1:] + quots[:1] if seen[(P, Q)] == 0 else quots[1:])
        seen[(P, Q)] = len(quots)
        a = (P + r) // Q if Q > 0 else -((P + r) // -Q) - 1
        quots.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    return None


@dataclass(frozen=True)
class GrowthCheck:
    i: int
    bound: int
    B_value: int
    exact: bool  # False: B_value is a period quotient located via reducedness, a lower bound for B

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.i, self.bound, self.B_value)


def verify_exponential_growth(alpha: ContinuedFraction, n: int, i_max: int = 6, k_max: int = 12,
                              max_steps: int = 50_000) -> list[GrowthCheck]:
    """Check n^i * a0 <= B(n^(i+k) * alpha) for i = 0..i_max.

    k and the ESP part come from :func:`find_evp_decomposition`; k is then
    raised until the integer part a0 of the scaled ESP part exceeds 1.
    B is computed exactly when the period has at most max_steps terms;
    otherwise the last period quotient of the (purely periodic) tail is used,
    which is itself a partial quotient and hence a lower bound for B.
    """
    dec = find_evp_decomposition(alpha, n, k_max, m_max=1)
    base = dec.value
    j = 0
    while (base * n**j).floor() <= 1:
        j += 1
    a0 = (base * n**j).floor()
    k = dec.k + j
    out = []
    for i in range(i_max + 1):
        y = base * n ** (i + j)  # same tail as n^(i+k)*alpha
        bound = n**i * a0
        B = height_of_surd(y, max_steps)
        exact = B is not None
        if B is None:
            x1 = (y - y.floor()).reciprocal()
            B = last_period_quotient(x1)
        check = GrowthCheck(i, bound, B, exact)
        if B < bound:
            raise TheoremViolation("growth", f"i={i}: B={B} < {bound}", alpha=str(alpha), n=n, k=k)
        out.append(check)
    return out


def verify_height_floor(alpha: ContinuedFraction, m_max: int = 50) -> list[tuple[int, int, int]]:
    """For essentially periodic alpha > 1: B(m*alpha) >= floor(m*alpha) for m = 1..m_max."""
    if not is_esp(alpha):
        raise ValueError(f"{alpha} is not essentially periodic")
    x = cf_to_surd(alpha)
    if (x - 1).sign() <= 0:
        raise ValueError("alpha must exceed 1")
    out = []
    for m in range(1, m_max + 1):
        B = height_B(multiply_oracle(alpha, m))
        fl = (x * m).floor()
        if B < fl:
            raise TheoremViolation("height-floor", f"m={m}: B={B} < {fl}", alpha=str(alpha))
        out.append((m, fl, B))
    return out
