"""SVG pictures of supports in the plane: vertices, cones, faces, bounds."""
from __future__ import annotations

from fractions import Fraction
from math import hypot

from .errors import UnsupportedDimension
from .geometry import ConeBound

SIZE = 400
MARGIN = 30
RAY = 3.0


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _unit(g):
    x, y = float(g[0]), float(g[1])
    r = hypot(x, y)
    return x / r, y / r


class _Canvas:
    def __init__(self, pts):
        xs = [p[0] for p in pts] or [0.0]
        ys = [p[1] for p in pts] or [0.0]
        self.x0, self.x1 = min(xs) - 0.5, max(xs) + 0.5
        self.y0, self.y1 = min(ys) - 0.5, max(ys) + 0.5
        span = max(self.x1 - self.x0, self.y1 - self.y0)
        self.scale = (SIZE - 2 * MARGIN) / span

    def px(self, p):
        x = MARGIN + (p[0] - self.x0) * self.scale
        y = SIZE - MARGIN - (p[1] - self.y0) * self.scale
        return _f(x), _f(y)


def _wedge_points(anchor, gens):
    a = (float(anchor[0]), float(anchor[1]))
    return [a] + [(a[0] + RAY * u[0], a[1] + RAY * u[1]) for u in map(_unit, gens)]


def render_svg(obj, title: str = "") -> str:
    """Render a ``SupportHull`` or a ``ConeBound`` (both need n = 2)."""
    if isinstance(obj, ConeBound):
        wedges = [(obj.anchor, obj.cone.generators)]
        dots = [obj.anchor] + list(obj.exceptional)
        faces = []
        arity = len(obj.anchor)
    else:
        arity = obj.arity
        wedges = [(v, obj.vertex_cones[v].generators) for v in obj.vertices]
        dots = list(obj.vertices)
        faces = [f for f in obj.bounded_faces if len(f) == 2]
    if arity != 2:
        raise UnsupportedDimension("SVG output needs two variables")
    pts = [(float(d[0]), float(d[1])) for d in dots]
    for a, gens in wedges:
        pts.extend(_wedge_points(a, gens))
    cv = _Canvas(pts)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        out.append(f"  <title>{title}</title>")
    out.append(f'  <clipPath id="view"><rect x="0" y="0" width="{SIZE}" height="{SIZE}"/></clipPath>')
    out.append('  <g clip-path="url(#view)">')
    for a, gens in wedges:
        if not gens:
            continue
        poly = [cv.px(p) for p in _wedge_points(a, gens)]
        if len(gens) == 1:
            (x1, y1), (x2, y2) = poly
            out.append(f'    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#4a7ab5" stroke-width="2"/>')
        else:
            coords = " ".join(f"{x},{y}" for x, y in poly)
            out.append(f'    <polygon points="{coords}" fill="#4a7ab5" fill-opacity="0.25" stroke="#4a7ab5"/>')
    for f in faces:
        (x1, y1), (x2, y2) = cv.px(f[0]), cv.px(f[1])
        out.append(f'    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#b5412f" stroke-width="3"/>')
    for d in dots:
        x, y = cv.px(d)
        label = "(" + ",".join(str(Fraction(c)) for c in d) + ")"
        out.append(f'    <circle cx="{x}" cy="{y}" r="4" fill="#222"/>')
        out.append(f'    <text x="{x}" y="{y}" dx="6" dy="-6" font-size="12" font-family="monospace">{label}</text>')
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
