"""Farey symbols for Gamma_0(n): construction, side pairings and orbifold invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from . import sl2
from .exact import INF, Rational, format_rational, parse_rational
from .farey import is_neighbor
from .sl2 import Matrix

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class Free:
    pair: int

    def to_json(self):
        return {"free": self.pair}


Label = Union[Free, str]


def _vec(x: Rational, at_end: bool) -> tuple[int, int]:
    # INF is (-1, 0) at the start and (1, 0) at the end so that consecutive
    # determinants a_i b_{i+1} - a_{i+1} b_i are all -1
    if x is INF:
        return (1, 0) if at_end else (-1, 0)
    return (x.numerator, x.denominator)


@dataclass
class FareySymbol:
    """Vertices INF, 0, ..., 1, INF with one label per interval."""

    n: int
    vertices: list[Rational]
    labels: list[Label]
    _partner: dict[int, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.vertices) - 1:
            raise ValueError("one label per interval required")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not is_neighbor(a, b):
                raise ValueError(f"{format_rational(a)}, {format_rational(b)} are not neighbors")
        ids: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels):
            if isinstance(lab, Free):
                ids.setdefault(lab.pair, []).append(i)
            elif lab not in (EVEN, ODD):
                raise ValueError(f"bad label {lab!r}")
        for pair, where in ids.items():
            if len(where) != 2:
                raise ValueError(f"free label {pair} must occur exactly twice")
            self._partner[where[0]] = where[1]
            self._partner[where[1]] = where[0]

    @property
    def intervals(self) -> int:
        return len(self.labels)

    def vector(self, k: int) -> tuple[int, int]:
        return _vec(self.vertices[k], k == len(self.vertices) - 1)

    def denominator(self, k: int) -> int:
        return self.vector(k)[1]

    def partner(self, i: int) -> int:
        return self._partner[i]

    def counts(self) -> tuple[int, int, int]:
        """(free intervals, even intervals, odd intervals)."""
        e2 = sum(1 for lab in self.labels if lab == EVEN)
        e3 = sum(1 for lab in self.labels if lab == ODD)
        return len(self.labels) - e2 - e3, e2, e3

    def index(self) -> int:
        """Index in PSL2(Z) of the group the symbol defines: 3*(finite vertices - 1) + odd intervals."""
        finite = len(self.vertices) - 2
        return 3 * (finite - 1) + self.counts()[2]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [format_rational(v) for v in self.vertices],
            "labels": [lab.to_json() if isinstance(lab, Free) else lab for lab in self.labels],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FareySymbol":
        labels = [Free(int(x["free"])) if isinstance(x, dict) else x for x in obj["labels"]]
        return cls(int(obj["n"]), [parse_rational(v) for v in obj["vertices"]], labels)

    def __str__(self) -> str:
        marks = {EVEN: "o", ODD: "*"}
        out = [_fmt_vertex(self.vertices[0])]
        for lab, v in zip(self.labels, self.vertices[1:]):
            out.append(str(lab.pair) if isinstance(lab, Free) else marks[lab])
            out.append(_fmt_vertex(v))
        return "{" + " ".join(out) + "}"


def _fmt_vertex(v: Rational) -> str:
    if v is INF:
        return "inf"
    return str(v.numerator) if v.denominator == 1 else format_rational(v)


# -- congruence tests ------------------------------------------------------

def is_even_interval(b0: int, b1: int, n: int) -> bool:
    return (b0 * b0 + b1 * b1) % n == 0


def is_odd_interval(b0: int, b1: int, n: int) -> bool:
    return (b0 * b0 + b0 * b1 + b1 * b1) % n == 0


def is_free_pair(b: tuple[int, int], c: tuple[int, int], n: int) -> bool:
    return (b[0] * c[0] + b[1] * c[1]) % n == 0


# -- construction ------------------------------------------------------------

class _CosetClasses:
    """Gamma_0(n)-orbits of oriented Farey edges, as points of P^1(Z/n).

    The oriented edge u -> v is the image of INF -> 0 under [[a_u, a_v], [b_u, b_v]]
    (signs fixed to determinant 1); its orbit is the bottom row up to units.
    """

    def __init__(self, n: int):
        self.n = n
        self.units = [u for u in range(1, n) if gcd(u, n) == 1] or [1]

    def edge(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        if u[0] * v[1] - v[0] * u[1] < 0:
            v = (-v[0], -v[1])
        n = self.n
        return min(((lam * u[1]) % n, (lam * v[1]) % n) for lam in self.units)

    def triangle(self, u, v, w) -> frozenset:
        """Classes of the three edges of the triangle lying left of u -> v."""
        return frozenset((self.edge(u, v), self.edge(v, w), self.edge(w, u)))


def build_farey_symbol(n: int, max_steps: int = 100_000) -> FareySymbol:
    """Deterministic Farey symbol for Gamma_0(n) with I and I+1 paired.

    Primes p >= 5 get a symbol symmetric under x -> 1 - x when the bounded
    search in :func:`_symmetric_prime_symbol` finds one; everything else uses
    the greedy rounds below.

    Each round scans the unlabeled intervals left to right and labels them with
    priority odd, even, free (earliest unlabeled partner).  Then every unlabeled
    interval whose mediant has the least denominator is split, unless the
    triangle below it is equivalent to one already in the polygon.  Raises
    RuntimeError if the construction stalls or overshoots the index.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n >= 5 and prime_factors(n) == [n]:
        sym = _symmetric_prime_symbol(n)
        if sym is not None:
            return sym
    target = index_formula(n)
    classes = _CosetClasses(n)
    verts: list[Rational] = [INF, Fraction(0), Fraction(1), INF]
    labels: list[Optional[Label]] = [Free(1), None, Free(1)]

    def vec(k):
        return _vec(verts[k], k == len(verts) - 1)

    # the Farey triangle (INF, 0, 1) is inside from the start
    covered = [classes.triangle((-1, 0), (0, 1), (1, 1))]
    next_id = 2
    for _ in range(max_steps):
        dens = [vec(k)[1] for k in range(len(verts))]
        for i in range(len(labels)):
            if labels[i] is not None:
                continue
            b = (dens[i], dens[i + 1])
            if is_odd_interval(*b, n):
                labels[i] = ODD
            elif is_even_interval(*b, n):
                labels[i] = EVEN
            else:
                for j in range(i + 1, len(labels)):
                    if labels[j] is None and is_free_pair(b, (dens[j], dens[j + 1]), n):
                        labels[i] = labels[j] = Free(next_id)
                        next_id += 1
                        break
        if None not in labels:
            sym = FareySymbol(n, verts, list(labels))
            if sym.index() != target:
                raise RuntimeError(f"symbol for n={n} has index {sym.index()}, expected {target}")
            return _renumber(sym)
        # split the open intervals with the least mediant denominator, skipping
        # any whose lower triangle repeats a triangle already in the polygon
        open_ = sorted((dens[i] + dens[i + 1], i) for i, lab in enumerate(labels) if lab is None)
        split = []
        for key, i in open_:
            if split and key != split[0][0]:
                break
            u, v = vec(i), vec(i + 1)
            m = (u[0] + v[0], u[1] + v[1])
            tri = classes.triangle(v, u, m)
            if any(tri & t for t in covered):
                continue
            covered.append(tri)
            split.append((key, i, m))
        if not split:
            raise RuntimeError(f"symbol construction for n={n} stalled")
        for _, i, m in sorted(split, key=lambda t: -t[1]):
            verts.insert(i + 1, Fraction(m[0], m[1]))
            labels[i:i + 1] = [None, None]
        finite = len(verts) - 2
        if 3 * (finite - 1) + labels.count(ODD) > target:
            raise RuntimeError(f"symbol construction for n={n} overshot the index {target}")
    raise RuntimeError(f"symbol construction for n={n} did not finish in {max_steps} steps")


def _label_by_search(n: int, verts: list[Rational]) -> Optional[list[Label]]:
    """Labels for a fixed vertex list (odd, even, free with earliest partner, backtracking)."""
    last = len(verts) - 1
    dens = [_vec(v, k == last)[1] for k, v in enumerate(verts)]
    m = len(verts) - 1
    labels: list[Optional[Label]] = [None] * m
    labels[0] = labels[m - 1] = Free(1)
    next_id = [2]

    def rec() -> bool:
        if None not in labels:
            return True
        i = labels.index(None)
        b = (dens[i], dens[i + 1])
        if is_odd_interval(*b, n):
            labels[i] = ODD
            if rec():
                return True
        if is_even_interval(*b, n):
            labels[i] = EVEN
            if rec():
                return True
        for j in range(i + 1, m):
            if labels[j] is None and is_free_pair(b, (dens[j], dens[j + 1]), n):
                labels[i] = labels[j] = Free(next_id[0])
                next_id[0] += 1
                if rec():
                    return True
                labels[j] = None
        labels[i] = None
        return False

    return list(labels) if rec() else None


def _symmetric_prime_symbol(p: int, budget: int = 3_000) -> Optional[FareySymbol]:
    """Depth-first search over triangulations of [0, 1/2], mirrored onto [1/2, 1].

    Each split adds a triangle below an interval of the left half together with
    its mirror image; both must be new up to Gamma_0(p).  Splitting is tried
    before leaving an interval as a side, intervals left to right.  A leaf with
    the right vertex count is accepted once its intervals can be labeled.
    Returns None when the search exceeds `budget` nodes.
    """
    target = index_formula(p)
    finite_needed = (target - elliptic3_formula(p)) // 3 + 1
    classes = _CosetClasses(p)

    def mirror(v):
        return (v[1] - v[0], v[1])

    # (INF, 0, 1) and the triangle (0, 1/2, 1) below (0, 1) are forced for p >= 5
    covered = [classes.triangle((-1, 0), (0, 1), (1, 1)), classes.triangle((1, 1), (0, 1), (1, 2))]
    left: list[Fraction] = [Fraction(0), Fraction(1, 2)]
    nodes = [0]

    class _Exhausted(Exception):
        pass

    def rec(k: int) -> Optional[FareySymbol]:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        finite = 2 * len(left) - 1
        if finite > finite_needed:
            return None
        if k == len(left) - 1:
            if finite != finite_needed:
                return None
            verts = [INF, *left, *(1 - x for x in reversed(left[:-1])), INF]
            labels = _label_by_search(p, verts)
            return FareySymbol(p, verts, labels) if labels else None
        u = (left[k].numerator, left[k].denominator)
        v = (left[k + 1].numerator, left[k + 1].denominator)
        m = (u[0] + v[0], u[1] + v[1])
        below = classes.triangle(v, u, m)
        mirrored = classes.triangle(mirror(u), mirror(v), mirror(m))
        if not below & mirrored and not any(below & t or mirrored & t for t in covered):
            covered.extend((below, mirrored))
            left.insert(k + 1, Fraction(*m))
            found = rec(k)
            if found:
                return found
            del covered[-2:]
            del left[k + 1]
        return rec(k + 1)

    try:
        sym = rec(0)
    except _Exhausted:
        return None
    if sym is None:
        return None
    if sym.index() != target:
        raise RuntimeError(f"symbol for p={p} has index {sym.index()}, expected {target}")
    return _renumber(sym)


def _renumber(sym: FareySymbol) -> FareySymbol:
    """Free pair ids 1, 2, ... in order of first appearance."""
    ids: dict[int, int] = {}
    labels = []
    for lab in sym.labels:
        if isinstance(lab, Free):
            ids.setdefault(lab.pair, len(ids) + 1)
            labels.append(Free(ids[lab.pair]))
        else:
            labels.append(lab)
    return FareySymbol(sym.n, list(sym.vertices), labels)


# -- side pairings -----------------------------------------------------------

def _pairing_from_vectors(ui, ui1, uj, uj1) -> Matrix:
    (ai, bi), (ai1, bi1), (aj, bj), (aj1, bj1) = ui, ui1, uj, uj1
    return (
        (aj * bi + aj1 * bi1, -ai * aj - ai1 * aj1),
        (bi * bj + bi1 * bj1, -ai * bj - ai1 * bj1),
    )


def pairing_matrix(sym: FareySymbol, i: int) -> Matrix:
    """Side pairing of interval i.

    free: maps x_i -> x_{j+1}, x_{i+1} -> x_j for the partner j;
    even: order 2, swaps x_i and x_{i+1};
    odd: order 3, x_i -> x_{i+1} -> x_i (+) x_{i+1} -> x_i.
    """
    lab = sym.labels[i]
    if lab is None:
        raise ValueError(f"interval {i} is unlabeled")
    ui, ui1 = sym.vector(i), sym.vector(i + 1)
    if isinstance(lab, Free):
        j = sym.partner(i)
        uj, uj1 = sym.vector(j), sym.vector(j + 1)
    elif lab == EVEN:
        uj, uj1 = ui, ui1
    else:
        uj, uj1 = (ui[0] + ui1[0], ui[1] + ui1[1]), ui1
    phi = _pairing_from_vectors(ui, ui1, uj, uj1)
    if sl2.det(phi) != 1:
        raise ArithmeticError(f"pairing for interval {i} has determinant {sl2.det(phi)}")
    return phi


def check_pairing(sym: FareySymbol, i: int, phi: Matrix) -> list[str]:
    """Violated properties of a pairing matrix (empty when all hold)."""
    problems = []
    n = sym.n
    if not sl2.in_gamma0(phi, n):
        problems.append("not in Gamma_0(n)")
    lab = sym.labels[i]
    xi, xi1 = sym.vertices[i], sym.vertices[i + 1]
    if isinstance(lab, Free):
        j = sym.partner(i)
        if sl2.act(phi, xi) != sym.vertices[j + 1] or sl2.act(phi, xi1) != sym.vertices[j]:
            problems.append("vertex mapping")
        if sl2.is_projective_identity(sl2.power(phi, 2)) or sl2.is_projective_identity(sl2.power(phi, 3)):
            problems.append("free pairing has finite order")
    elif lab == EVEN:
        if sl2.act(phi, xi) != xi1 or sl2.act(phi, xi1) != xi:
            problems.append("vertex mapping")
        if not sl2.is_projective_identity(sl2.power(phi, 2)):
            problems.append("even pairing is not of order 2")
    else:
        m = _mediant(xi, xi1)
        if sl2.act(phi, xi) != xi1 or sl2.act(phi, xi1) != m or sl2.act(phi, m) != xi:
            problems.append("vertex mapping")
        if not sl2.is_projective_identity(sl2.power(phi, 3)):
            problems.append("odd pairing is not of order 3")
    return problems


def _mediant(a: Rational, b: Rational) -> Rational:
    from .farey import mediant
    return mediant(a, b)


def odd_apex(sym: FareySymbol, i: int) -> Rational:
    """Third vertex x_i (+) x_{i+1} of the triangle over an odd interval."""
    return _mediant(sym.vertices[i], sym.vertices[i + 1])


# -- invariants --------------------------------------------------------------

def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


def index_formula(n: int) -> int:
    d = n
    for p in prime_factors(n):
        d = d // p * (p + 1)
    return d


def cusp_formula(n: int) -> int:
    return sum(euler_phi(gcd(a, n // a)) for a in range(1, n + 1) if n % a == 0)


def _kronecker_minus4(p: int) -> int:
    return 0 if p == 2 else (1 if p % 4 == 1 else -1)


def _kronecker_minus3(p: int) -> int:
    return 0 if p == 3 else (1 if p % 3 == 1 else -1)


def elliptic2_formula(n: int) -> int:
    if n % 4 == 0:
        return 0
    out = 1
    for p in prime_factors(n):
        out *= 1 + _kronecker_minus4(p)
    return out


def elliptic3_formula(n: int) -> int:
    if n % 9 == 0:
        return 0
    out = 1
    for p in prime_factors(n):
        out *= 1 + _kronecker_minus3(p)
    return out


def count_cusps(sym: FareySymbol) -> int:
    """Vertex classes under the side pairings (union-find)."""
    last = len(sym.vertices) - 1
    parent = list(range(len(sym.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    union(0, last)  # the two INF entries are one vertex
    for i, lab in enumerate(sym.labels):
        if isinstance(lab, Free):
            j = sym.partner(i)
            union(i, j + 1)
            union(i + 1, j)
        else:
            union(i, i + 1)
    return len({find(k) for k in range(len(sym.vertices))})


@dataclass(frozen=True)
class OrbifoldInvariants:
    n: int
    index: int
    cusps: int
    e2: int
    e3: int
    genus: int

    def riemann_hurwitz_holds(self) -> bool:
        return self.index == 3 * self.e2 + 4 * self.e3 + 12 * self.genus + 6 * self.cusps - 12

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.index, "t": self.cusps, "e2": self.e2, "e3": self.e3, "g": self.genus}


def invariants(n: int, sym: Optional[FareySymbol] = None) -> OrbifoldInvariants:
    """Index and cusps from closed formulas, e2/e3 from the symbol, genus from Riemann-Hurwitz."""
    sym = sym or build_farey_symbol(n)
    d = index_formula(n)
    t = cusp_formula(n)
    _, e2, e3 = sym.counts()
    twelve_g = d - 3 * e2 - 4 * e3 - 6 * t + 12
    if twelve_g % 12 or twelve_g < 0:
        raise ArithmeticError(f"genus for n={n} is not a non-negative integer: {twelve_g}/12")
    return OrbifoldInvariants(n, d, t, e2, e3, twelve_g // 12)
