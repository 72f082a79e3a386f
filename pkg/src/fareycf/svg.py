"""SVG rendering of decorated tiles in the upper half-plane model."""

from __future__ import annotations

from math import sqrt
from xml.sax.saxutils import escape

from .exact import INF, Rational, format_rational
from .gamma0 import EVEN, ODD
from .tiles import DecoratedTile, odd_center

WIDTH = 800
HEIGHT = 480
MARGIN = 40

STYLES = {
    "free": 'stroke="black" stroke-width="3"',
    "even": 'stroke="black" stroke-width="2" stroke-dasharray="4,4"',
    "odd": 'stroke="black" stroke-width="2" stroke-dasharray="14,6"',
    "decoration": 'stroke="#3465a4" stroke-width="1"',
    "axis": 'stroke="#888" stroke-width="1"',
}


class _Frame:
    def __init__(self, lo: float, hi: float):
        pad = 0.1 * (hi - lo)
        self.lo, self.hi = lo - pad, hi + pad
        self.scale = (WIDTH - 2 * MARGIN) / (self.hi - self.lo)
        self.base = HEIGHT - MARGIN

    def x(self, t: float) -> float:
        return MARGIN + (t - self.lo) * self.scale

    def y(self, h: float) -> float:
        return self.base - h * self.scale


def _geodesic(fr: _Frame, a: Rational, b: Rational, style: str) -> str:
    if b is INF or a is INF:
        u = float(b if a is INF else a)
        return f'<line x1="{fr.x(u):.2f}" y1="{fr.base:.2f}" x2="{fr.x(u):.2f}" y2="0" {style} fill="none"/>'
    u, v = sorted((float(a), float(b)))
    r = (v - u) / 2 * fr.scale
    return (f'<path d="M {fr.x(u):.2f} {fr.base:.2f} A {r:.2f} {r:.2f} 0 0 1 {fr.x(v):.2f} {fr.base:.2f}" '
            f'{style} fill="none"/>')


def _ray(fr: _Frame, x0: Rational, cx: float, cy: float, style: str) -> str:
    """Arc of the geodesic from the boundary point x0 to the interior point (cx, cy)."""
    x0 = float(x0)
    center = (cx * cx + cy * cy - x0 * x0) / (2 * (cx - x0))
    r = abs(x0 - center) * fr.scale
    sweep = 1 if cx > x0 else 0
    return (f'<path d="M {fr.x(x0):.2f} {fr.base:.2f} A {r:.2f} {r:.2f} 0 0 {sweep} {fr.x(cx):.2f} {fr.y(cy):.2f}" '
            f'{style} fill="none"/>')


def tile_svg(tile: DecoratedTile) -> str:
    sym = tile.polygon.symbol
    finite = [float(v) for v in sym.vertices if v is not INF]
    fr = _Frame(min(finite), max(finite))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(f'T(d={tile.d}, n={tile.n})')}</title>",
        f'<line x1="0" y1="{fr.base}" x2="{WIDTH}" y2="{fr.base}" {STYLES["axis"]}/>',
        '<g id="decoration">',
    ]
    for e in tile.edges:
        if not e.boundary:
            parts.append(_geodesic(fr, e.a, e.b, STYLES["decoration"]))
    parts.append("</g>")
    parts.append('<g id="sides">')
    for i, lab in enumerate(sym.labels):
        a, b = sym.vertices[i], sym.vertices[i + 1]
        if lab == ODD:
            X, Y2 = odd_center(sym.vector(i), sym.vector(i + 1))
            cx, cy = float(X), sqrt(float(Y2))
            parts.append(_ray(fr, a, cx, cy, STYLES["odd"]))
            parts.append(_ray(fr, b, cx, cy, STYLES["odd"]))
        elif lab == EVEN:
            parts.append(_geodesic(fr, a, b, STYLES["even"]))
        else:
            parts.append(_geodesic(fr, a, b, STYLES["free"]))
    parts.append("</g>")
    parts.append('<g id="labels" font-family="sans-serif" font-size="12">')
    for v in sym.vertices:
        if v is not INF:
            parts.append(f'<text x="{fr.x(float(v)):.2f}" y="{fr.base + 16:.2f}" text-anchor="middle">'
                         f"{escape(format_rational(v))}</text>")
    parts.append("</g>")
    legend = [("free", "free side pair"), ("even", "even side"), ("odd", "odd side"), ("decoration", f"(1/{tile.d})F edge")]
    parts.append('<g id="legend" font-family="sans-serif" font-size="12">')
    for k, (key, text) in enumerate(legend):
        y = 20 + 18 * k
        parts.append(f'<line x1="{WIDTH - 200}" y1="{y}" x2="{WIDTH - 160}" y2="{y}" {STYLES[key]}/>')
        parts.append(f'<text x="{WIDTH - 150}" y="{y + 4}">{escape(text)}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
