"""Vertices, vertex cones and bounded faces of the convex hull of a support.

Every vertex of ``conv(supp(phi))`` is the leading exponent ``-S(e)`` of the
branch grown from some admissible edge ``e`` of the annihilator's Newton
polytope, under an order compatible with the barrier cone of ``e``.  We try
every admissible edge and keep those whose branch is (provably) phi.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .encoding import SeriesEncoding, branch_of, from_branch
from .equality import Verdict, equal
from .errors import AlgSeriesError, NotLineFree, UnsupportedDimension
from .geometry import Cone, ConeBound, Edge, barrier_cone, interior_order, newton_polytope, slope
from .newton_puiseux import advance, expand
from .poly import exp_scale, exp_sub, format_fraction

DEFAULT_DEPTH = 16


@dataclass
class SupportHull:
    vertices: list = field(default_factory=list)
    vertex_cones: dict = field(default_factory=dict)
    bounded_faces: list = field(default_factory=list)
    verified: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)  # vertex -> originating edge
    arity: int = 2

    def to_json(self) -> dict:
        fs = format_fraction
        return {
            "vertices": [[fs(x) for x in v] for v in self.vertices],
            "cones": {_key(v): self.vertex_cones[v].to_json() for v in self.vertices},
            "verified": {_key(v): self.verified[v] for v in self.vertices},
            "edges": {_key(v): str(self.edges[v]) for v in self.vertices if v in self.edges},
            "faces": [[[fs(x) for x in v] for v in f] for f in self.bounded_faces],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SupportHull":
        verts = [tuple(Fraction(x) for x in v) for v in obj["vertices"]]
        n = len(verts[0]) if verts else 2
        cones = {v: Cone.from_json(obj["cones"][_key(v)], n) for v in verts}
        verified = {v: bool(obj["verified"][_key(v)]) for v in verts}
        faces = [[tuple(Fraction(x) for x in v) for v in f] for f in obj.get("faces", [])]
        edges = {}
        for v in verts:
            text = obj.get("edges", {}).get(_key(v))
            if text:
                a, b = (tuple(Fraction(x) for x in g.split(",")) for g in re.findall(r"\(([^()]*)\)", text))
                edges[v] = Edge(a, b)
        return cls(verts, cones, faces, verified, edges, n)


def _key(v) -> str:
    return "(" + ",".join(format_fraction(x) for x in v) + ")"


def vertex_cone(b) -> Cone:
    """Cone generated by the branch's bound cone and ``alpha_i - alpha_1``."""
    exps = [e for e, _ in b.terms]
    n = b.arity
    vecs = list(b.bound.cone.generators) + [exp_sub(a, exps[0]) for a in exps[1:]]
    return Cone.from_points(vecs, n)


def hull_vertices(enc: SeriesEncoding, budget: int = 8) -> SupportHull:
    p = enc.annihilator
    n = p.arity
    hull = SupportHull(arity=n)
    if enc.is_zero:
        return hull
    for e in newton_polytope(p).admissible_edges:
        try:
            W = interior_order(barrier_cone(p, e))
        except NotLineFree:
            continue
        for b in expand(p, e, W, 0).branches:
            cand = from_branch(p, W, b, vars=enc.vars, unknown=enc.unknown)
            v = equal(cand, enc, budget)
            if v.value is Verdict.NOT_EQUAL:
                continue
            vert = exp_scale(slope(e), -1)
            ok = v.value is Verdict.EQUAL
            if vert in hull.verified and (hull.verified[vert] or not ok):
                continue
            hull.verified[vert] = ok
            hull.vertex_cones[vert] = vertex_cone(b)
            hull.edges[vert] = e
    hull.vertices = sorted(hull.verified)
    return hull


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def bounded_faces(hull: SupportHull) -> list:
    """Vertices and the vertex pairs whose segment is a face of the hull."""
    if hull.arity > 2:
        raise UnsupportedDimension("bounded faces are computed for n <= 2 only")
    if not all(hull.verified.get(v) for v in hull.vertices):
        raise AlgSeriesError("bounded faces need every vertex verified")
    verts = hull.vertices
    faces = [[v] for v in verts]
    for i, v1 in enumerate(verts):
        for v2 in verts[i + 1:]:
            if _segment_is_face(hull, v1, v2):
                faces.append([v1, v2])
    return faces


def _segment_is_face(hull: SupportHull, v1, v2) -> bool:
    d = exp_sub(v2, v1)
    if hull.arity == 1:
        # support inside an interval of the line: both cones must point inwards
        return all(_dot(g, d) > 0 for g in hull.vertex_cones[v1].generators) and \
            all(_dot(g, d) < 0 for g in hull.vertex_cones[v2].generators)
    u = (-d[1], d[0])
    for s in (1, -1):
        nu = (s * u[0], s * u[1])
        gens = list(hull.vertex_cones[v1].generators) + list(hull.vertex_cones[v2].generators)
        if any(_dot(g, nu) > 0 for g in gens):
            continue
        c = _dot(nu, v1)
        if any(_dot(nu, w) > c for w in hull.vertices):
            continue
        return True
    return False


def support_hull(enc: SeriesEncoding, budget: int = 8) -> SupportHull:
    hull = hull_vertices(enc, budget)
    if hull.vertices and all(hull.verified.values()) and hull.arity <= 2:
        hull.bounded_faces = bounded_faces(hull)
    return hull


@dataclass
class MinimalityReport:
    anchor: tuple
    rays: list  # [(ray, witness exponent or None)]

    @property
    def minimal(self) -> bool:
        return all(w is not None for _, w in self.rays)


def _on_ray(alpha, anchor, ray) -> bool:
    d = exp_sub(alpha, anchor)
    if all(x == 0 for x in d):
        return False
    lam = None
    for x, r in zip(d, ray):
        if r == 0:
            if x != 0:
                return False
            continue
        t = x / r
        if lam is None:
            lam = t
        elif t != lam:
            return False
    return lam is not None and lam > 0


def minimality_witnesses(enc: SeriesEncoding, bound: ConeBound, depth: int = DEFAULT_DEPTH) -> MinimalityReport:
    """For every extreme ray of the bound's cone, a support element on
    ``anchor + R_{>0} * ray`` found within ``depth`` refinement rounds."""
    b = branch_of(enc)
    for _ in range(depth):
        if b.finished:
            break
        b = advance(b, enc.order)
    exps = [e for e, _ in b.terms]
    rays = []
    for r in bound.cone.generators:
        hit = next((a for a in exps if _on_ray(a, bound.anchor, r)), None)
        rays.append((r, hit))
    return MinimalityReport(bound.anchor, rays)
