"""Exact rational polyhedral geometry in dimensions up to three.

Newton polytopes are built with exact gift wrapping; cones live in Q^n with
n <= 2 and are kept in a canonical form (primitive integer generators,
minimal, lexicographically sorted) so that equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, reduce
from math import gcd, lcm

from .errors import NotAdmissible, NotLineFree, UnsupportedDimension
from .field import QuadExt
from .order import OrderSpec, rank
from .poly import YPoly, as_exponent, exp_add, exp_scale, exp_sub


def primitive(v) -> tuple:
    """Positive multiple of ``v`` with coprime integer entries."""
    v = as_exponent(v)
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(i) for i in ints), 0)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(i // g) for i in ints)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


# --------------------------------------------------------------------- cones

def _half(d):
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = _cross2(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _analyze2(dirs):
    """Classify a set of distinct primitive directions in Q^2.

    Returns ``(kind, gens)`` with kind in zero/pointed/halfplane/line/plane.
    """
    if not dirs:
        return "zero", []
    ds = sorted(set(dirs), key=cmp_to_key(_angle_cmp))
    if len(ds) == 1:
        return "pointed", ds
    k = len(ds)
    big, flat = None, []
    for i in range(k):
        a, b = ds[i], ds[(i + 1) % k]
        c = _cross2(a, b)
        if c < 0:
            big = i
        elif c == 0 and _dot(a, b) < 0:
            flat.append(i)
    if big is not None:
        return "pointed", [ds[(big + 1) % k], ds[big]]
    if len(flat) == 2:
        return "line", [ds[0], tuple(-x for x in ds[0])]
    if len(flat) == 1:
        i = flat[0]
        a = ds[i]
        # every other direction lies on one side of the line through a
        side = next(d for d in ds if _cross2(a, d) != 0)
        nrm = (-a[1], a[0]) if _cross2(a, side) > 0 else (a[1], -a[0])
        return "halfplane", [a, tuple(-x for x in a), primitive(nrm)]
    one, zero = Fraction(1), Fraction(0)
    return "plane", [(one, zero), (-one, zero), (zero, one), (zero, -one)]


@dataclass(frozen=True)
class Cone:
    """Finitely generated convex cone in Q^n, n <= 2, in canonical form."""

    generators: tuple
    arity: int

    @classmethod
    def from_points(cls, vectors, n: int) -> "Cone":
        """Canonical generators of the cone spanned by ``vectors``."""
        if n > 2:
            raise UnsupportedDimension(f"cones are supported in dimension <= 2, got {n}")
        dirs = {primitive(v) for v in vectors}
        dirs.discard(tuple(Fraction(0) for _ in range(n)))
        if n == 0:
            return cls((), 0)
        if n == 1:
            return cls(tuple(sorted(dirs)), 1)
        _, gens = _analyze2(list(dirs))
        return cls(tuple(sorted(gens)), 2)

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls((), n)

    def is_zero(self) -> bool:
        return not self.generators

    def is_line_free(self) -> bool:
        if self.arity <= 1:
            return len(self.generators) <= 1
        kind, _ = _analyze2(list(self.generators))
        return kind in ("zero", "pointed")

    def contains(self, v) -> bool:
        v = as_exponent(v)
        if all(x == 0 for x in v):
            return True
        return Cone.from_points(list(self.generators) + [v], self.arity) == self

    def __add__(self, other: "Cone") -> "Cone":
        return Cone.from_points(list(self.generators) + list(other.generators), self.arity)

    def to_json(self) -> list:
        return [[_fs(x) for x in g] for g in self.generators]

    @classmethod
    def from_json(cls, gens, n: int) -> "Cone":
        return cls.from_points([tuple(Fraction(x) for x in g) for g in gens], n)

    def __str__(self):
        return "<" + ", ".join("(" + ",".join(_fs(x) for x in g) + ")" for g in self.generators) + ">"


def _fs(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dual_contains(C: Cone, W: OrderSpec) -> bool:
    """True iff every generator of ``C`` is negative under ``W``."""
    return all(W.sign(g) < 0 for g in C.generators)


def interior_order(C: Cone) -> OrderSpec:
    """A total order under which every nonzero element of ``C`` is negative.

    The result is a single weight row ``u + delta*sqrt(2)*e`` with ``u``
    rational and strictly negative on the generators of ``C`` and a small
    irrational perturbation making the row injective on Q^n.
    """
    n = C.arity
    if not C.is_line_free():
        raise NotLineFree(f"cone {C} contains a line")
    one, zero = Fraction(1), Fraction(0)
    gens = list(C.generators)
    if n == 1:
        w = -gens[0][0] if gens else -one
        return OrderSpec.from_rows([[QuadExt(w, 0, 2)]], 2)
    if n != 2:
        raise UnsupportedDimension(f"interior orders are supported in dimension <= 2, got {n}")
    if not gens:
        u = (-one, -one)
    elif len(gens) == 1:
        r = gens[0]
        s = _dot(r, r)
        u = (-r[0] / s, -r[1] / s)
    else:
        r1, r2 = gens
        det = _cross2(r1, r2)
        # solve u.r1 = -1, u.r2 = -1
        u = ((-r2[1] + r1[1]) / det, (-r1[0] + r2[0]) / det)
    e = (one, zero)
    if _cross2(u, e) == 0:
        e = (zero, one)
    bound = max((abs(_dot(e, g)) for g in gens), default=zero)
    delta = Fraction(1, 2) / (1 + bound)
    row = [QuadExt(u[i], delta * e[i], 2) for i in range(2)]
    return OrderSpec.from_rows([row], 2)


def cone_ops(a: Cone, b: Cone | None, op: str, v=None, points=None):
    if op == "sum":
        return a + b
    if op == "line_free?":
        return a.is_line_free()
    if op == "contains_point":
        return a.contains(v)
    if op == "minimal_from_points":
        return Cone.from_points(points, a.arity if a is not None else len(points[0]))
    raise ValueError(f"unknown cone operation {op!r}")


@dataclass(frozen=True)
class ConeBound:
    """``supp(phi) <= exceptional U (anchor + cone)``."""

    exceptional: tuple
    anchor: tuple
    cone: Cone

    def admits(self, alpha) -> bool:
        alpha = as_exponent(alpha)
        return alpha in self.exceptional or self.cone.contains(exp_sub(alpha, self.anchor))

    def to_json(self) -> dict:
        return {
            "exceptional": [[_fs(x) for x in e] for e in self.exceptional],
            "anchor": [_fs(x) for x in self.anchor],
            "generators": self.cone.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ConeBound":
        anchor = tuple(Fraction(x) for x in obj["anchor"])
        return cls(
            tuple(tuple(Fraction(x) for x in e) for e in obj["exceptional"]),
            anchor,
            Cone.from_json(obj["generators"], len(anchor)),
        )

    def __str__(self):
        ex = ", ".join("(" + ",".join(_fs(x) for x in e) + ")" for e in self.exceptional)
        an = "(" + ",".join(_fs(x) for x in self.anchor) + ")"
        return f"{{{ex}}} U ({an} + {self.cone})"


# --------------------------------------------------------------------- edges

@dataclass(frozen=True)
class Edge:
    """Segment between two exponent vectors in Q^(n+1); the last slot is the y-degree."""

    v1: tuple
    v2: tuple

    def __post_init__(self):
        a, b = as_exponent(self.v1), as_exponent(self.v2)
        if (a[-1], a) > (b[-1], b):
            a, b = b, a
        object.__setattr__(self, "v1", a)
        object.__setattr__(self, "v2", b)

    @property
    def admissible(self) -> bool:
        return self.v1[-1] != self.v2[-1]

    @property
    def minor(self):
        if not self.admissible:
            raise NotAdmissible(f"edge {self} is not admissible")
        return self.v1

    @property
    def major(self):
        if not self.admissible:
            raise NotAdmissible(f"edge {self} is not admissible")
        return self.v2

    @property
    def height(self) -> int:
        return int(self.v2[-1] - self.v1[-1])

    def __str__(self):
        return "{" + ",".join("(" + ",".join(_fs(x) for x in v) + ")" for v in (self.v1, self.v2)) + "}"


def slope(e: Edge) -> tuple:
    m, M = e.minor, e.major
    h = M[-1] - m[-1]
    return tuple((b - a) / h for a, b in zip(m[:-1], M[:-1]))


def _points_of(p) -> dict:
    return p.points() if isinstance(p, YPoly) else dict(p)


def barrier_cone(p, e: Edge) -> Cone:
    """Cone spanned by the support projected along ``e`` minus the projection of ``e``."""
    beta = exp_scale(slope(e), -1)
    m = e.minor
    n = len(m) - 1
    base = exp_add(m[:-1], exp_scale(beta, m[-1]))
    diffs = [exp_sub(exp_add(pt[:-1], exp_scale(beta, pt[-1])), base) for pt in _points_of(p)]
    return Cone.from_points(diffs, n)


# -------------------------------------------------------------------- hulls

def _monotone_chain(pts2):
    """Strict convex hull (ccw, no collinear points) of 2-D keys."""
    pts = sorted(set(pts2))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _affine_rank(pts) -> int:
    if len(pts) <= 1:
        return 0
    o = pts[0]
    return rank([exp_sub(p, o) for p in pts[1:]])


def _planar_hull(pts, drop=None):
    """Vertices in cyclic order of a set of coplanar points in Q^D, D in (2, 3)."""
    D = len(pts[0])
    if D == 2:
        return _monotone_chain(pts)
    if drop is None:
        for k in range(D):
            proj = [tuple(x for i, x in enumerate(p) if i != k) for p in pts]
            if _affine_rank(list(set(proj))) == 2:
                drop = k
                break
    lookup = {}
    for p in pts:
        lookup[tuple(x for i, x in enumerate(p) if i != drop)] = p
    return [lookup[q] for q in _monotone_chain(list(lookup))]


def _segment_ends(pts):
    o = pts[0]
    d = next(exp_sub(p, o) for p in pts if p != o)
    key = lambda p: _dot(exp_sub(p, o), d)
    return min(pts, key=key), max(pts, key=key)


def _wrap(pts, u, v):
    """Gift-wrapping pivot around the hull edge (u, v): a supporting plane
    ``(normal, offset)`` through u and v with all points on the non-positive side."""
    t = exp_sub(v, u)
    c = None
    for q in pts:
        if _cross3(t, exp_sub(q, u)) != (0, 0, 0):
            c = q
            break
    for _ in range(3):
        changed = False
        for q in pts:
            m = _cross3(t, exp_sub(c, u))
            if _dot(m, exp_sub(q, u)) > 0:
                c = q
                changed = True
        if not changed:
            break
    m = primitive(_cross3(t, exp_sub(c, u)))
    return m, _dot(m, u)


def _hull3(pts):
    # start from a silhouette edge of the shadow in some coordinate plane
    drop = None
    for k in range(3):
        proj = {tuple(x for i, x in enumerate(p) if i != k) for p in pts}
        if _affine_rank(list(proj)) == 2:
            drop = k
            break
    keep = [i for i in range(3) if i != drop]
    proj_of = lambda p: (p[keep[0]], p[keep[1]])
    shadow = _monotone_chain([proj_of(p) for p in pts])
    a2, b2 = shadow[0], shadow[1]
    on_line = [p for p in pts if _cross2(exp_sub(proj_of(p), a2), exp_sub(b2, a2)) == 0]
    if _affine_rank(on_line) == 2:
        dir2 = exp_sub(b2, a2)
        nrm = [Fraction(0)] * 3
        # outward normal of the shadow edge, lifted
        nrm[keep[0]], nrm[keep[1]] = dir2[1], -dir2[0]
        nrm = tuple(nrm)
        if any(_dot(nrm, exp_sub(p, on_line[0])) > 0 for p in pts):
            nrm = tuple(-x for x in nrm)
        start = (primitive(nrm), _dot(primitive(nrm), on_line[0]))
    else:
        u, v = _segment_ends(on_line)
        start = _wrap(pts, u, v)

    facets = {}
    queue = [start]
    edges = set()
    while queue:
        m, off = queue.pop()
        if (m, off) in facets:
            continue
        on = [p for p in pts if _dot(m, p) == off]
        drop = max(range(3), key=lambda i: abs(m[i]))
        poly = _planar_hull(on, drop)
        facets[(m, off)] = poly
        for i in range(len(poly)):
            u, v = poly[i], poly[(i + 1) % len(poly)]
            edges.add(frozenset((u, v)))
            nb = _wrap(pts, u, v)
            if nb == (m, off):
                nb = _wrap(pts, v, u)
            if nb not in facets:
                queue.append(nb)
    verts = sorted({p for poly in facets.values() for p in poly})
    return verts, [tuple(sorted(e)) for e in edges], facets


def convex_hull(points):
    """Vertices and edges (pairs of vertices) of conv(points) in Q^D, D <= 3."""
    pts = sorted({as_exponent(p) for p in points})
    if not pts:
        return [], []
    D = len(pts[0])
    if D > 3:
        raise UnsupportedDimension(f"hulls are supported in dimension <= 3, got {D}")
    r = _affine_rank(pts)
    if r == 0:
        return pts, []
    if r == 1:
        a, b = _segment_ends(pts)
        return sorted([a, b]), [tuple(sorted((a, b)))]
    if r == 2:
        poly = _planar_hull(pts)
        edges = [tuple(sorted((poly[i], poly[(i + 1) % len(poly)]))) for i in range(len(poly))]
        return sorted(poly), sorted(edges)
    verts, edges, _ = _hull3(pts)
    return verts, sorted(edges)


@dataclass(frozen=True)
class NewtonPolytope:
    points: tuple
    vertices: tuple
    edges: tuple = field(default=())

    @property
    def admissible_edges(self) -> list:
        return [e for e in self.edges if e.admissible]


def newton_polytope(p) -> NewtonPolytope:
    pts = _points_of(p)
    if not pts:
        raise ValueError("Newton polytope of the zero polynomial")
    dim = len(next(iter(pts)))
    if dim > 3:
        raise UnsupportedDimension(f"Newton polytopes need n+1 <= 3, got {dim}")
    verts, edges = convex_hull(pts)
    es = sorted({Edge(a, b) for a, b in edges}, key=lambda e: (e.v1, e.v2))
    return NewtonPolytope(tuple(sorted(pts)), tuple(verts), tuple(es))
