"""Decorated tiles: the special polygon of Gamma_0(n) together with the edges of
(1/d)F meeting it, face types of the induced triangulation, and the tile-walk
version of the multiplication map."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Optional

from . import sl2
from .cf import ContinuedFraction, cf_to_surd, normalize
from .cutseq import CuttingWord, reduce_word
from .exact import INF, QuadraticSurd, Rational, as_pair, format_rational, reduce, sign_surd
from .farey import is_neighbor, mediant
from .gamma0 import EVEN, ODD, FareySymbol, Free, build_farey_symbol, invariants, pairing_matrix
from .sl2 import Matrix

Edge = tuple[Rational, Rational]  # sorted, INF last


def make_edge(a: Rational, b: Rational) -> Edge:
    return (a, b) if a < b else (b, a)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# -- side tests --------------------------------------------------------------

def side_of_point(e: Edge, x: Rational) -> int:
    """+1 outside the half-disk of e, -1 inside, 0 on an endpoint.

    For a vertical edge (u, INF): +1 right of it, -1 left of it.
    """
    u, v = e
    if x == u or x == v:
        return 0
    if v is INF:
        if x is INF:
            return 0
        return _sign(x - u)
    if x is INF:
        return 1
    return _sign((x - u) * (x - v))


def side_of_center(e: Edge, X: Fraction, Y2: Fraction) -> int:
    """Same convention for an interior point X + iY given X and Y^2."""
    u, v = e
    if v is INF:
        return _sign(X - u)
    return _sign((X - u) * (X - v) + Y2)


def crosses(e: Edge, f: Edge) -> bool:
    """Geodesics e and f meet in the upper half-plane."""
    s1 = side_of_point(e, f[0])
    s2 = side_of_point(e, f[1])
    return s1 * s2 < 0


def orientation(x: Rational, y: Rational, z: Rational) -> int:
    """Cyclic orientation of three boundary points: +1 for x < y < z up to rotation."""
    def det(a, b):
        p, q = as_pair(a)
        r, s = as_pair(b)
        return p * s - q * r
    return _sign(det(x, y) * det(y, z) * det(z, x))


# -- regions -----------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Ideal polygon with the given boundary vertices, or a cap third with an interior vertex."""

    ideal: tuple[Rational, ...]
    center: Optional[tuple[Fraction, Fraction]] = None  # (X, Y^2)
    sides: tuple[Edge, ...] = ()

    def scaled(self, d: int) -> "Region":
        ideal = tuple(x if x is INF else x * d for x in self.ideal)
        center = None if self.center is None else (self.center[0] * d, self.center[1] * d * d)
        sides = tuple(make_edge(*(x if x is INF else x * d for x in s)) for s in self.sides)
        return Region(ideal, center, sides)


def meets(e: Edge, region: Region) -> bool:
    """Edge e meets the closed region somewhere in the upper half-plane."""
    if e in region.sides:
        return True
    signs = [side_of_point(e, x) for x in region.ideal]
    if region.center is not None:
        sc = side_of_center(e, *region.center)
        if sc == 0:
            return True
        signs.append(sc)
    return 1 in signs and -1 in signs


def _strictly_below(e: Edge, region: Region) -> bool:
    """Some vertex of the region lies strictly inside the half-disk of the finite edge e."""
    if any(side_of_point(e, x) < 0 for x in region.ideal):
        return True
    return region.center is not None and side_of_center(e, *region.center) < 0


def farey_edges_meeting(region: Region) -> set[Edge]:
    """All edges of F meeting the region, by descending the Farey tree."""
    finite = [x for x in region.ideal if x is not INF]
    if region.center is not None:
        finite.append(region.center[0])
    lo = min(finite).__floor__() - 1
    hi = max(finite).__ceil__() + 1
    out: set[Edge] = set()
    for k in range(lo, hi + 1):
        e = (Fraction(k), INF)
        if meets(e, region):
            out.add(e)
    stack = [(Fraction(k), Fraction(k + 1)) for k in range(lo, hi)]
    while stack:
        e = stack.pop()
        if meets(e, region):
            out.add(e)
        if _strictly_below(e, region):
            m = mediant(*e)
            stack.append((e[0], m))
            stack.append((m, e[1]))
    return out


def scaled_edges_meeting(region: Region, d: int) -> set[Edge]:
    """Edges of (1/d)F meeting the region (found as F-edges meeting the d-scaled region)."""
    out = set()
    for a, b in farey_edges_meeting(region.scaled(d)):
        out.add(make_edge(a if a is INF else a / d, b if b is INF else b / d))
    return out


def odd_center(u: tuple[int, int], v: tuple[int, int]) -> tuple[Fraction, Fraction]:
    """(X, Y^2) of the order-3 point of the Farey triangle over the interval u, v."""
    (a, c), (b, e) = u, v  # columns of g with g(INF) = u, g(0) = v
    N = c * c + c * e + e * e
    X = Fraction(2 * a * c + a * e + b * c + 2 * b * e, 2 * N)
    Y2 = Fraction(3, 4 * N * N)
    return X, Y2


# -- polygon structure -------------------------------------------------------

def _vec(x: Rational) -> tuple[int, int]:
    return as_pair(x)


@dataclass
class SpecialPolygon:
    """The fundamental domain described by a Farey symbol."""

    symbol: FareySymbol
    triangles: list[tuple[Rational, Rational, Rational]] = field(default_factory=list)
    caps: dict[int, tuple[Rational, Rational, Rational]] = field(default_factory=dict)
    thirds: dict[int, Region] = field(default_factory=dict)
    pairings: dict[int, Matrix] = field(default_factory=dict)

    @classmethod
    def from_symbol(cls, sym: FareySymbol) -> "SpecialPolygon":
        poly = cls(sym)
        sides = {make_edge(a, b) for a, b in zip(sym.vertices, sym.vertices[1:])}

        def fill(a, b):
            if make_edge(a, b) in sides:
                return
            m = mediant(a, b)
            poly.triangles.append((a, m, b))
            fill(a, m)
            fill(m, b)

        poly.triangles.append((INF, Fraction(0), Fraction(1)))
        fill(Fraction(0), Fraction(1))
        for i, lab in enumerate(sym.labels):
            poly.pairings[i] = pairing_matrix(sym, i)
            if lab == ODD:
                a, b = sym.vertices[i], sym.vertices[i + 1]
                m = mediant(a, b)
                poly.caps[i] = (a, b, m)
                poly.thirds[i] = Region((a, b), odd_center(_vec(a), _vec(b)), (make_edge(a, b),))
        return poly

    @property
    def n(self) -> int:
        return self.symbol.n

    def side_index(self) -> dict[Edge, int]:
        v = self.symbol.vertices
        return {make_edge(v[i], v[i + 1]): i for i in range(len(v) - 1)}

    def regions(self) -> list[Region]:
        tri = [Region(t, None, tuple(make_edge(t[i], t[(i + 1) % 3]) for i in range(3))) for t in self.triangles]
        return tri + list(self.thirds.values())


# -- scaled group and face types ---------------------------------------------

def _p1_key(x: int, y: int, m: int) -> tuple[int, int]:
    if m == 1:
        return (0, 0)
    return min(((lam * x) % m, (lam * y) % m) for lam in range(1, m) if gcd(lam, m) == 1)


def _edge_matrix(u: Rational, v: Rational) -> Matrix:
    """Determinant-one matrix taking the oriented edge INF -> 0 to u -> v."""
    a, c = as_pair(u)
    b, e = as_pair(v)
    if a * e - b * c < 0:
        b, e = -b, -e
    if a * e - b * c != 1:
        raise ValueError("not a Farey edge")
    return ((a, b), (c, e))


class ScaledGroup:
    """Gamma_0(n) conjugated to act on the d-scaled picture: d | b and (n/d) | c."""

    def __init__(self, n: int, d: int):
        if n % d:
            raise ValueError("d must divide n")
        self.n, self.d, self.m = n, d, n // d

    def contains(self, g: Matrix) -> bool:
        (a, b), (c, e) = g
        return a * e - b * c == 1 and b % self.d == 0 and c % self.m == 0

    def coset_key(self, g: Matrix) -> tuple:
        (a, b), (c, e) = g
        return (_p1_key(a, b, self.d), _p1_key(c, e, self.m))

    def edge_key(self, u: Rational, v: Rational) -> tuple:
        return self.coset_key(_edge_matrix(u, v))


TRIANGLE_TYPES = ("I", "II", "IIIa", "IIIb", "IIIc", "IV")


def _ccw(tri: tuple[Rational, Rational, Rational]) -> tuple[Rational, Rational, Rational]:
    """Order the vertices so the triangle lies left of each directed edge."""
    u, v, w = tri
    g = _edge_matrix(u, v)
    return (u, v, w) if sl2.act(g, Fraction(1)) == w else (v, u, w)


def triangle_type(group: ScaledGroup, tri) -> str:
    """Type of an F-triangle (d-scaled coordinates) in the quotient by the scaled group."""
    u, v, w = _ccw(tri)
    directed = [(u, v), (v, w), (w, u)]
    keys = [group.edge_key(*e) for e in directed]
    rev = [group.edge_key(e[1], e[0]) for e in directed]
    if keys[0] == keys[1] == keys[2]:
        return "IV"
    folded = sum(1 for k, r in zip(keys, rev) if k == r)
    if folded:
        return ("IIIa", "IIIb", "IIIc")[folded - 1]
    if any(keys[k] == rev[k - 1] for k in range(3)):
        return "II"
    return "I"


def triangle_orbit(group: ScaledGroup, tri) -> frozenset:
    u, v, w = _ccw(tri)
    return frozenset((group.edge_key(u, v), group.edge_key(v, w), group.edge_key(w, u)))


def edge_orbit(group: ScaledGroup, e: Edge) -> frozenset:
    return frozenset((group.edge_key(*e), group.edge_key(e[1], e[0])))


def edge_is_folded(group: ScaledGroup, e: Edge) -> bool:
    return group.edge_key(*e) == group.edge_key(e[1], e[0])


# -- decorated tile ------------------------------------------------------------

@dataclass(frozen=True)
class DecorationEdge:
    a: Rational
    b: Rational
    in_polygon: bool  # meets the union of Farey triangles of the polygon
    boundary: bool  # coincides with a side of the polygon
    cap: bool  # meets a cap third

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b),
                "in_polygon": self.in_polygon, "boundary": self.boundary, "cap": self.cap}


@dataclass
class DecoratedTile:
    n: int
    d: int
    polygon: SpecialPolygon
    edges: list[DecorationEdge]
    faces: list[tuple[tuple[Rational, Rational, Rational], str]]

    def census(self) -> dict[str, int]:
        """Number of face orbits of each type."""
        group = ScaledGroup(self.n, self.d)
        seen: dict[frozenset, str] = {}
        for tri, tag in self.faces:
            scaled = tuple(x if x is INF else x * self.d for x in tri)
            seen.setdefault(triangle_orbit(group, scaled), tag)
        out = {t: 0 for t in TRIANGLE_TYPES}
        for tag in seen.values():
            out[tag] += 1
        return out

    def folded_edge_orbits(self) -> int:
        group = ScaledGroup(self.n, self.d)
        orbits = set()
        for e in self.edges:
            se = make_edge(*(x if x is INF else x * self.d for x in (e.a, e.b)))
            if edge_is_folded(group, se):
                orbits.add(edge_orbit(group, se))
        return len(orbits)

    def to_json(self) -> dict:
        return {
            "schema": "fareycf.tile/1",
            "n": self.n,
            "d": self.d,
            "symbol": self.polygon.symbol.to_json(),
            "edges": [e.to_json() for e in self.edges],
            "faces": [{"vertices": [format_rational(x) for x in tri], "type": tag} for tri, tag in self.faces],
        }


def decorated_tile(n: int, d: int, symbol: Optional[FareySymbol] = None) -> DecoratedTile:
    """The polygon for Gamma_0(n) with every (1/d)F edge meeting it, and the tagged faces."""
    if d < 1 or n % d:
        raise ValueError(f"scale {d} does not divide {n}")
    poly = SpecialPolygon.from_symbol(symbol or build_farey_symbol(n))
    sym = poly.symbol
    outer = {}  # polygon side -> side value of points outside the polygon across it
    for i, lab in enumerate(sym.labels):
        if lab != ODD:
            e = make_edge(sym.vertices[i], sym.vertices[i + 1])
            outer[e] = 1 if i == sym.intervals - 1 else -1
    hull: set[Edge] = set()
    for r in poly.regions()[: len(poly.triangles)]:
        hull |= scaled_edges_meeting(r, d)
    capped: set[Edge] = set()
    for r in poly.thirds.values():
        capped |= scaled_edges_meeting(r, d)
    edges = [DecorationEdge(a, b, (a, b) in hull, (a, b) in outer, (a, b) in capped)
             for a, b in sorted(hull | capped, key=_edge_sort_key)]
    group = ScaledGroup(n, d)
    faces = []
    seen = set()
    for e in edges:
        a, b = (x if x is INF else x * d for x in (e.a, e.b))
        for w in _third_vertices(a, b):
            unscaled_w = w if w is INF else w / d
            if e.boundary and side_of_point((e.a, e.b), unscaled_w) == outer[(e.a, e.b)]:
                continue
            tri = (a, b, w)
            key = frozenset(tri)
            if key in seen:
                continue
            seen.add(key)
            unscaled = tuple(x if x is INF else x / d for x in tri)
            faces.append((unscaled, triangle_type(group, tri)))
    return DecoratedTile(n, d, poly, edges, faces)


def _third_vertices(a: Rational, b: Rational) -> list[Rational]:
    """Third vertices of the two F-triangles on edge (a, b)."""
    p, q = as_pair(a)
    r, s = as_pair(b)
    return [reduce(p + r, q + s), reduce(p - r, q - s)]


def _edge_sort_key(e: Edge):
    a, b = e
    return (a is INF, a if a is not INF else 0, b is INF, b if b is not INF else 0)


# -- tile walk -----------------------------------------------------------------

@dataclass
class TileVisit:
    """One stay in a translate g(P_n): the letters contributed there."""

    frame: Matrix
    letters: str

    def word(self) -> CuttingWord:
        return letters_to_word(self.letters)


def letters_to_word(letters: str) -> CuttingWord:
    """Run lengths with the leading-L convention ("RRL" -> L^0 R^2 L^1)."""
    exps: list[int] = []
    current = "L"
    count = 0
    for ch in letters:
        if ch == current:
            count += 1
        else:
            exps.append(count)
            current = ch
            count = 1
    exps.append(count)
    return CuttingWord(tuple(exps))


def concat_words(w1: CuttingWord, w2: CuttingWord) -> CuttingWord:
    """Concatenation of two words that each start with L; w1 may end on L or R."""
    if not w1.exponents:
        return w2
    glue = (0,) if len(w1.exponents) % 2 else ()
    return reduce_word(w1.exponents + glue + w2.exponents)


class TileWalker:
    """Walk a geodesic through Gamma_0(n)-translates of the decorated tile T_{d,n}.

    The walk visits the (1/d)F edges separating the imaginary axis from the
    endpoint, one at a time.  A frame g in Gamma_0(n) is kept with g^{-1}(edge)
    in the decoration of the polygon; everything is computed on pulled-back
    edges, so only the decoration and the side pairings are used.  When the next
    edge leaves the current tile the frame moves to a neighboring tile through
    a side pairing (or a rotation about an order-3 point).
    """

    def __init__(self, n: int, d: Optional[int] = None, symbol: Optional[FareySymbol] = None):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.d = n if d is None else d
        if self.d < 1 or n % self.d:
            raise ValueError(f"scale {self.d} does not divide {n}")
        self.poly = SpecialPolygon.from_symbol(symbol or build_farey_symbol(n))
        self.decoration: set[Edge] = set()
        for region in self.poly.regions():
            self.decoration |= scaled_edges_meeting(region, self.d)
        # frame moves to the tiles sharing a side with the polygon
        self.moves: list[Matrix] = []
        for i, lab in enumerate(self.poly.symbol.labels):
            phi = self.poly.pairings[i]
            if lab == ODD:
                self.moves += [phi, sl2.inv(phi)]
            else:
                self.moves.append(sl2.inv(phi))

    def third_vertex(self, e: Edge, beta) -> Rational:
        """Third vertex of the (1/d)F triangle on the side of e containing beta."""
        d = self.d
        a, b = (x if x is INF else x * d for x in e)
        target = _surd_side(e, beta)
        for w in _third_vertices(a, b):
            w = w if w is INF else w / d
            if side_of_point(e, w) == target:
                return w
        raise ArithmeticError(f"no triangle beyond {e} towards the endpoint")

    def relocate(self, e: Edge, max_depth: int = 6) -> Optional[Matrix]:
        """Shortest product of moves s with s^{-1}(e) in the decoration."""
        frontier = [(sl2.IDENTITY, e)]
        seen = {e}
        for _ in range(max_depth):
            nxt = []
            for sigma, f in frontier:
                for mv in self.moves:
                    g = sl2.mul(sigma, mv)
                    h = _pull(sl2.inv(mv), f)
                    if h in self.decoration:
                        return g
                    if h not in seen:
                        seen.add(h)
                        nxt.append((g, h))
            frontier = nxt
        return None


def _surd_side(e: Edge, beta) -> int:
    """side_of_point for a real quadratic (or rational) point given as a surd."""
    u, v = e
    def cmp(x):
        if x is INF:
            return -1
        return _sign_surd_minus(beta, x)
    if v is INF:
        return cmp(u)
    return cmp(u) * cmp(v)


def _sign_surd_minus(beta: QuadraticSurd, x: Fraction) -> int:
    x = Fraction(x)
    return sign_surd(beta.p * x.denominator - x.numerator * beta.q, beta.s * x.denominator, beta.d)


def _pull(g_inv: Matrix, e: Edge) -> Edge:
    return make_edge(sl2.act(g_inv, e[0]), sl2.act(g_inv, e[1]))


def _surd_act(g: Matrix, x: QuadraticSurd) -> QuadraticSurd:
    (a, b), (c, d) = g
    return x.mobius(a, b, c, d)


def tile_walk(cf: ContinuedFraction, n: int, d: Optional[int] = None, max_quotients: int = 200_000,
              walker: Optional[TileWalker] = None) -> tuple[ContinuedFraction, list[TileVisit]]:
    """Multiply by d (default n) by walking through the tiles of Gamma_0(n).

    Returns the resulting CF and the tile visits with the letters read in each.
    """
    w = walker or TileWalker(n, d)
    alpha = cf_to_surd(cf)
    if alpha.sign() <= 0:
        raise ValueError("endpoint must be positive")
    g: Matrix = sl2.IDENTITY
    edge: Edge = (Fraction(0), INF)  # pulled back; starts on the imaginary axis
    beta = alpha
    visits: list[TileVisit] = [TileVisit(g, "")]
    letters: list[str] = []
    seen: dict[tuple, int] = {}
    for _ in range(max_quotients):
        if not alpha.is_rational:
            state = (edge, beta)
            if state in seen:
                k = seen[state]
                return _cf_from_periodic_letters(letters[:k], letters[k:]), visits
            seen[state] = len(letters)
        w3 = w.third_vertex(edge, beta)
        if beta.is_rational and beta == w3:
            last = letters[-1] if letters else "L"
            letters.append(last)
            visits[-1].letters += last
            return _cf_from_finite_letters(letters), visits
        u, v = edge
        first, second = make_edge(u, w3), make_edge(w3, v)
        # the next edge separates beta from the far vertex of the triangle
        nxt = first if _surd_side(first, beta) != side_of_point(first, v) else second
        (shared,) = set(nxt) & set(edge)
        (p,) = set(edge) - {shared}
        letter = "L" if orientation(p, w3, shared) > 0 else "R"
        letters.append(letter)
        visits[-1].letters += letter
        if nxt not in w.decoration:
            sigma = w.relocate(nxt)
            if sigma is None:
                raise ArithmeticError(f"edge {nxt} lies in no tile near the current one")
            g = sl2.mul(g, sigma)
            sigma_inv = sl2.inv(sigma)
            nxt = _pull(sigma_inv, nxt)
            beta = _surd_act(sigma_inv, beta)
            visits.append(TileVisit(g, ""))
        edge = nxt
    raise RuntimeError("tile walk did not close a period within max_quotients")


def _cf_from_finite_letters(letters: list[str]) -> ContinuedFraction:
    exps = letters_to_word("".join(letters)).exponents
    return normalize(ContinuedFraction(exps[0], exps[1:], None))


def _cf_from_periodic_letters(prefix: list[str], block: list[str]) -> ContinuedFraction:
    """CF of the run lengths of prefix + block + block + ..."""
    if not block or len(set(block)) < 2:
        raise ArithmeticError("periodic letter block must contain both letters")
    word = prefix + block * 3
    i0 = len(prefix) + 1
    while word[i0] == word[i0 - 1]:
        i0 += 1
    head = letters_to_word("".join(word[:i0])).exponents
    period_letters = word[i0:i0 + len(block)]
    runs = []
    count = 1
    for a, b in zip(period_letters, period_letters[1:]):
        if a == b:
            count += 1
        else:
            runs.append(count)
            count = 1
    runs.append(count)
    return normalize(ContinuedFraction(head[0], head[1:], tuple(runs)))


def tile_walk_multiply(cf: ContinuedFraction, n: int, max_quotients: int = 200_000, d: Optional[int] = None,
                       walker: Optional[TileWalker] = None) -> ContinuedFraction:
    """d * value(cf) (d = n by default) computed by the tile walk through Gamma_0(n)."""
    return tile_walk(cf, n, d, max_quotients, walker)[0]
