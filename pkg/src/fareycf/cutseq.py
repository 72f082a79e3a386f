"""Cutting sequences of the geodesic from the imaginary axis to alpha, traced against
the Farey complex scaled by 1/d, and the multiplication map they induce."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence

from .cf import ContinuedFraction, PeriodicityClass, cf_to_surd, classify, normalize
from .exact import INF, QuadraticSurd, Rational, reduce, sign_surd


# -- words -------------------------------------------------------------------

@dataclass(frozen=True)
class CuttingWord:
    """L^e0 R^e1 L^e2 ...; exponents may be zero or negative before reduction."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    def letters(self) -> list[tuple[str, int]]:
        return [("L" if i % 2 == 0 else "R", e) for i, e in enumerate(self.exponents)]

    def is_reduced(self) -> bool:
        return all(e > 0 for e in self.exponents[1:]) and (not self.exponents or self.exponents[0] >= 0)

    def __str__(self) -> str:
        return " ".join(f"{letter}^{e}" for letter, e in self.letters())

    @classmethod
    def parse(cls, text: str) -> "CuttingWord":
        """Accepts "L^a R^b ..." (must start with L) or a comma list of exponents."""
        text = text.strip()
        if not text:
            return cls(())
        if text[0] in "LR":
            exps = []
            for i, tok in enumerate(text.split()):
                letter, _, e = tok.partition("^")
                if letter != ("L" if i % 2 == 0 else "R"):
                    raise ValueError(f"letters must alternate starting with L: {text!r}")
                exps.append(int(e) if e else 1)
            return cls(tuple(exps))
        return cls(tuple(int(x) for x in text.strip("{}[]").replace(";", ",").split(",")))


def reduce_word(word: CuttingWord | Sequence[int]) -> CuttingWord:
    """Remove internal zero exponents: x^a y^0 x^b -> x^(a+b), repeatedly.

    The leading exponent may stay 0 (empty initial L); a trailing zero is kept
    because the truncated continuation is unknown.
    """
    exps = word.exponents if isinstance(word, CuttingWord) else tuple(word)
    out: list[int] = []
    for e in exps:
        out.append(e)
        while len(out) >= 3 and out[-2] == 0:
            y = out.pop()
            out.pop()
            out[-1] += y
    return CuttingWord(tuple(out))


def word_to_cf(word: CuttingWord) -> ContinuedFraction:
    """The CF whose quotients are the exponents of a reduced word."""
    w = reduce_word(word)
    if not w.exponents:
        raise ValueError("empty word")
    return ContinuedFraction(w.exponents[0], w.exponents[1:], None)


def word_matrix(word: CuttingWord | Sequence[int]) -> tuple[int, int, int, int]:
    """Product of [[e,1],[1,0]] over the exponents; invariant under reduction."""
    exps = word.exponents if isinstance(word, CuttingWord) else word
    a, b, c, d = 1, 0, 0, 1
    for e in exps:
        a, b, c, d = a * e + b, a, c * e + d, c
    return a, b, c, d


# -- tracing -----------------------------------------------------------------

class Fan(NamedTuple):
    """A maximal run of triangles sharing the pivot vertex."""

    index: int
    letter: str
    exponent: int
    pivot: Rational
    entry: tuple[Rational, Rational]
    exit: tuple[Rational, Rational]


@dataclass
class TraceResult:
    cf: ContinuedFraction
    fans: list[Fan]
    vertices: list[Rational]
    truncated: bool = False


def _vertex(v: tuple[int, int], d: int) -> Rational:
    p, q = v
    if q == 0:
        return INF
    return reduce(p, q * d)


def _cmp_point(y: QuadraticSurd, v: tuple[int, int]) -> int:
    """sign(y - p/q) for q > 0."""
    p, q = v
    # q*y - p = (q*y.p - p*y.q + q*y.s sqrt(d)) / y.q
    return sign_surd(q * y.p - p * y.q, q * y.s, y.d)


def _tail(y: QuadraticSurd, pivot: tuple[int, int], other: tuple[int, int]) -> QuadraticSurd:
    (h1, k1), (h0, k0) = pivot, other
    return y.mobius(-k0, h0, k1, -h1)


def _run_trace(alpha: QuadraticSurd, d: int, max_quotients: int, want_fans: bool) -> TraceResult:
    if not isinstance(alpha, QuadraticSurd):
        alpha = QuadraticSurd.from_rational(alpha)
    if alpha.sign() <= 0:
        raise ValueError("endpoint must be positive")
    if d < 1:
        raise ValueError("scale must be positive")
    y = alpha * d  # tracing y against the unscaled complex is tracing alpha against (1/d)F
    left, right = (0, 1), (1, 0)
    pivot_right = True
    quotients: list[int] = []
    count = 0
    seen: dict[QuadraticSurd, int] = {}
    fans: list[Fan] = []
    vertices: list[Rational] = [INF]
    entry = (left, right)
    irrational = not y.is_rational

    def close_run(exit_edge):
        if want_fans:
            k = len(quotients)
            pivot = right if pivot_right else left
            fans.append(Fan(k, "L" if k % 2 == 0 else "R", count,
                            _vertex(pivot, d),
                            (_vertex(entry[0], d), _vertex(entry[1], d)),
                            (_vertex(exit_edge[0], d), _vertex(exit_edge[1], d))))
        quotients.append(count)

    if irrational:
        seen[_tail(y, right, left)] = 0
    while True:
        m = (left[0] + right[0], left[1] + right[1])
        c = _cmp_point(y, m)
        if c == 0:
            count += 1
            close_run((m, right) if pivot_right else (left, m))
            vertices.append(_vertex(m, d))
            return TraceResult(normalize(ContinuedFraction(quotients[0], tuple(quotients[1:]), None)), fans, vertices)
        if (c > 0) != pivot_right:
            close_run((left, right))
            if len(quotients) >= max_quotients:
                raw = ContinuedFraction(quotients[0], tuple(quotients[1:]), None)
                return TraceResult(raw, fans, vertices, truncated=True)
            pivot_right = not pivot_right
            entry = (left, right)
            pivot, other = (right, left) if pivot_right else (left, right)
            vertices.append(_vertex(pivot, d))
            count = 0
            if irrational:
                t = _tail(y, pivot, other)
                k = len(quotients)
                if t in seen:
                    j = seen[t]
                    if j == 0:
                        cf = ContinuedFraction(quotients[0], (), tuple(quotients[1:]) + (quotients[0],))
                    else:
                        cf = ContinuedFraction(quotients[0], tuple(quotients[1:j]), tuple(quotients[j:k]))
                    return TraceResult(normalize(cf), fans, vertices)
                seen[t] = k
        count += 1
        if c > 0:
            left = m
        else:
            right = m


def _trace_moving_frame(alpha, d: int, max_quotients: int) -> ContinuedFraction:
    """Same walk as _run_trace, but after each fan the edge just crossed is moved
    back to (0, INF) by the unimodular map pivot -> INF, other -> 0.

    The endpoint is replaced by its image (the tail), so the numbers stay the
    size of the tail instead of growing with the convergents.
    """
    if not isinstance(alpha, QuadraticSurd):
        alpha = QuadraticSurd.from_rational(alpha)
    if alpha.sign() <= 0:
        raise ValueError("endpoint must be positive")
    if d < 1:
        raise ValueError("scale must be positive")
    y = alpha * d
    irrational = not y.is_rational
    quotients: list[int] = []
    seen: dict[QuadraticSurd, int] = {}
    while True:
        if irrational:
            k = len(quotients)
            if y in seen:
                j = seen[y]
                if j == 0:
                    cf = ContinuedFraction(quotients[0], (), tuple(quotients[1:]) + (quotients[0],))
                else:
                    cf = ContinuedFraction(quotients[0], tuple(quotients[1:j]), tuple(quotients[j:k]))
                return normalize(cf)
            seen[y] = k
        # fan pivoting at INF: mediants (c+1)/1 of the edge (c/1, INF)
        count = 0
        while True:
            c = _cmp_point(y, (count + 1, 1))
            if c == 0:
                quotients.append(count + 1)
                return normalize(ContinuedFraction(quotients[0], tuple(quotients[1:]), None))
            if c < 0:
                break
            count += 1
        quotients.append(count)
        if len(quotients) >= max_quotients:
            return ContinuedFraction(quotients[0], tuple(quotients[1:]), None)
        y = _tail(y, (count, 1), (1, 0))


def trace(alpha, d: int = 1, max_quotients: int = 10_000) -> ContinuedFraction:
    """CF of the cutting sequence of the geodesic (I, alpha) against (1/d)F, i.e. of d*alpha.

    Periodic tails are closed on the first repeated tail value at a fan boundary.
    If max_quotients fans complete first, the raw finite prefix is returned.
    """
    return _trace_moving_frame(alpha, d, max_quotients)


def trace_fans(alpha, d: int = 1, max_quotients: int = 10_000) -> list[Fan]:
    return _run_trace(alpha, d, max_quotients, True).fans


def convergent_vertices(alpha, d: int = 1, count: Optional[int] = None, max_quotients: int = 10_000) -> list[Rational]:
    """Pivot vertices of the fans in order, starting at INF, then alpha itself if rational.

    For d = 1 these are p_{-1}/q_{-1}, p_0/q_0, ... of alpha.  Periodic inputs are
    unrolled until count vertices are available.
    """
    if count is None:
        return _run_trace(alpha, d, max_quotients, False).vertices
    limit = max(count, 2)
    while True:
        res = _unrolled_vertices(alpha, d, limit)
        if len(res) >= count or len(res) < limit:
            # enough vertices, or the trace ended at a rational endpoint
            return res[:count]
        limit *= 2


def _unrolled_vertices(alpha, d: int, runs: int) -> list[Rational]:
    """Vertices without period closure, for at most `runs` fans."""
    if not isinstance(alpha, QuadraticSurd):
        alpha = QuadraticSurd.from_rational(alpha)
    y = alpha * d
    left, right = (0, 1), (1, 0)
    pivot_right = True
    verts: list[Rational] = [INF]
    while len(verts) < runs:
        m = (left[0] + right[0], left[1] + right[1])
        c = _cmp_point(y, m)
        if c == 0:
            verts.append(_vertex(m, d))
            return verts
        if (c > 0) != pivot_right:
            pivot_right = not pivot_right
            verts.append(_vertex(right if pivot_right else left, d))
        if c > 0:
            left = m
        else:
            right = m
    return verts


def multiply_nbar(cf: ContinuedFraction, n: int, max_quotients: int = 10_000) -> ContinuedFraction:
    """n * value(cf) as a CF, by tracing the geodesic against (1/n)F."""
    if n < 1:
        raise ValueError("n must be positive")
    return trace(cf_to_surd(cf), n, max_quotients)


def is_closed_curve(cf: ContinuedFraction) -> bool:
    """Closed-curve criterion: the expansion is strictly or essentially periodic."""
    return classify(cf) in (PeriodicityClass.SP, PeriodicityClass.ESP)
