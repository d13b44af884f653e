"""Acceptance criteria, one test (and one PASS/FAIL line) per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from algseries.arithmetic import annihilator_sum, combine
from algseries.encoding import (SeriesEncoding, deserialize, encode, normalize_annihilator, serialize, validate)
from algseries.equality import Verdict, check_certificate, equal
from algseries.errors import MismatchedRadicand
from algseries.expr import parse_puiseux
from algseries.geometry import Cone, ConeBound, barrier_cone, dual_contains, interior_order, newton_polytope, slope
from algseries.newton_puiseux import advance, all_roots, edge_path, edge_polynomial, expand, initial_branches
from algseries.order import order_compare, parse_order
from algseries.poly import (evaluate_y, is_squarefree, primitive_part, rational_roots, resultant_y, specialize_x,
                            sylvester_resultant)
from algseries.support import SupportHull, minimality_witnesses, support_hull

from helpers import TWO_BRANCH, RATIONAL, RATIONAL_SPECS, RATIONAL, QUADRATIC, V, edge, poly, vec

RESULTS: dict = {}
ARTIFACTS: dict = {}  # encodings etc. produced by criteria 1-6, reused by 7(e) and 8


def cone(*gens):
    return Cone.from_points([vec(*g) for g in gens], len(gens[0]))


def fmt(b):
    return b.truncation.format(V)


class Checks:
    def __init__(self):
        self.failed = []

    def check(self, ok, what):
        if not ok:
            self.failed.append(what)
        return ok


def report(n, checks, extra=""):
    ok = not checks.failed
    line = f"ACCEPTANCE criterion {n}: {'PASS' if ok else 'FAIL'}"
    if checks.failed:
        line += " (failed: " + "; ".join(checks.failed) + ")"
    if extra:
        line += f" [{extra}]"
    RESULTS[n] = line
    assert ok, line


# ------------------------------------------------------------------ 1

def test_criterion_1_two_branch_expansion():
    c = Checks()
    t0 = time.perf_counter()
    p = poly(TWO_BRANCH)
    W = parse_order("(-sqrt(2),-1)")
    e = edge((0, 2, 0), (0, 0, 2))
    res = expand(p, e, W, 2)
    c.check(sorted(fmt(b) for b in res.branches) == ["-y - x*y", "y + x*y"], "branches y+xy and -y-xy")
    c.check(len(res.branches) == 2, "exactly two branches")
    c.check(barrier_cone(p, e) == cone((1, 1), (2, -1)), "barrier cone <(1,1),(2,-1)>")
    c.check(slope(e) == vec(0, -1), "slope (0,-1)")
    c.check(sorted(r for r, _ in rational_roots(edge_polynomial(p, e))) == [-1, 1], "edge roots +-1")
    for b in initial_branches(p, e, W):
        path = edge_path(b.shifted, b.edge, W)
        c.check([str(x) for x in path] == ["{(1,2,0),(0,1,1)}"], "second-step edge {(1,2,0),(0,1,1)}")
        cf = edge_polynomial(b.shifted, path[0])
        s = b.terms[0][1]
        # c0 + c1 t proportional to -2 + 2t (for the branch y; mirrored for -y)
        c.check(cf[1] * 2 == -cf[0] * 2 * s and cf[0] != 0, "second-step polynomial proportional to -2+2t")
    dt = time.perf_counter() - t0
    c.check(dt < 1.0, f"runtime {dt:.2f}s < 1s")
    ARTIFACTS["c1"] = encode(p, e, W, 2)
    report(1, c, f"{dt:.2f}s")


# ------------------------------------------------------------------ 2

def test_criterion_2_rational_series_encodings():
    c = Checks()
    t0 = time.perf_counter()
    p = poly(RATIONAL)
    encs = []
    for (a, b), w, want in RATIONAL_SPECS:
        got = encode(p, edge(a, b), parse_order(w), 1)
        c.check(len(got) == 1 and fmt_enc(got[0]) == want, f"encoding from {a}-{b} under {w} is {want}")
        encs.extend(got)
    W1 = parse_order("(-1+1/2*sqrt(2),-2)")
    (b1,) = expand(p, edge((1, 0, 0), (0, 0, 1)), W1, 7).branches
    c.check(fmt(b1) == "y + x - x^2 + x^3 - x^4 + x^5 - x^6", "terms x,-x^2,...,-x^6,y")
    c.check([e for e, _ in b1.terms] == [vec(k, 0) for k in range(1, 7)] + [vec(0, 1)], "computed in that order")
    W2 = parse_order("(-2+1/2*sqrt(2),-1)")
    c.check(W2.sort_desc(b1.exponents) == [vec(0, 1)] + [vec(k, 0) for k in range(1, 7)], "reordered y,x,-x^2,...")
    c.check(b1.bounds[6].cone == cone((0, 1), (7, -1)), "phi1 bound <(0,1),(7,-1)> at the y stage")
    (b2,) = expand(p, edge((0, 1, 0), (0, 0, 1)), W2, 1).branches
    c.check(b2.bounds[0].cone == cone((0, 1), (1, -1)), "phi2 bound <(0,1),(1,-1)> at the y stage")
    s = b1.bounds[6].cone + b2.bounds[0].cone
    Ws = interior_order(s) if s.is_line_free() else None
    c.check(Ws is not None and dual_contains(b1.bounds[6].cone, Ws) and dual_contains(b2.bounds[0].cone, Ws),
            "stated cones have a line-free sum with a common compatible order")
    v = equal(encs[0], encs[1])
    c.check(v.value is Verdict.EQUAL, "equal returns Equal")
    c.check(v.witness.get("argument") == "line-free sum" and check_certificate(v, encs[0], encs[1]),
            "line-free-sum certificate")
    dt = time.perf_counter() - t0
    c.check(dt < 2.0, f"runtime {dt:.2f}s < 2s")
    ARTIFACTS["c2"] = encs
    report(2, c, f"{dt:.2f}s")


def fmt_enc(e):
    return e.truncation.format(list(e.vars))


# ------------------------------------------------------------------ 3

def test_criterion_3_support_hull():
    c = Checks()
    p = poly(RATIONAL)
    (phi,) = encode(p, edge((1, 0, 0), (0, 0, 1)), parse_order("(-1+1/2*sqrt(2),-2)"))
    hull = support_hull(phi)
    c.check(hull.vertices == [vec(0, 1), vec(1, 0)], "vertices {(1,0),(0,1)}")
    c.check(hull.vertex_cones.get(vec(1, 0)) == cone((1, 0), (-1, 1)), "cone at (1,0) is <(1,0),(-1,1)>")
    c.check(hull.vertex_cones.get(vec(0, 1)) == cone((0, 1), (1, -1)), "cone at (0,1) is <(0,1),(1,-1)>")
    faces = sorted(hull.bounded_faces, key=len)
    c.check(faces == [[vec(0, 1)], [vec(1, 0)], [vec(0, 1), vec(1, 0)]], "segment plus both singletons")
    ARTIFACTS["c3"] = (phi, hull)
    report(3, c)


# ------------------------------------------------------------------ 4

def test_criterion_4_minimality():
    c = Checks()
    p = poly(QUADRATIC)
    W = parse_order("(-1+1/2*sqrt(2),-1)")
    (b,) = expand(p, edge((0, 0, 0), (0, 0, 1)), W, 5).branches
    c.check(fmt(b) == "-1 - x + x*y + x^2*y^2 - x^2*y^3", "truncation -1-x+xy+x^2y^2-x^2y^3")
    want = ConeBound((vec(0, 0), vec(1, 0)), vec(1, 1), cone((1, 1), (1, 2)))
    stage = next((s for s, bd in enumerate(b.bounds) if bd == want), None)
    c.check(stage is not None, "bound {(0,0),(1,0)} U ((1,1)+<(1,1),(1,2)>) at some stage")
    (enc,) = encode(p, edge((0, 0, 0), (0, 0, 1)), W, 1)
    rep = minimality_witnesses(enc, want)
    c.check(dict(rep.rays) == {vec(1, 1): vec(2, 2), vec(1, 2): vec(2, 3)}, "witnesses (2,2) and (2,3)")
    ARTIFACTS["c4"] = [enc]
    report(4, c, f"stage {stage}")


# ------------------------------------------------------------------ 5

def test_criterion_5_sum_evidence():
    c = Checks()
    t0 = time.perf_counter()
    X = ["x"]
    p1 = poly("(1+x+x^2-z)*(x^2-(1-x)*z)", X)
    p2 = poly("z*(x^2-(x-1)*z)", X)
    P = normalize_annihilator(annihilator_sum(p1, p2))
    stated = normalize_annihilator(poly("(1+x+x^3-z)*z*(-1+x^2+x^4-(x-1)*z)*(x^3-(1-x)*z)", X))
    c.check(P == stated, "square-free primitive sum annihilator equals the stated product")
    down, up = parse_order("(-sqrt(2))"), parse_order("(sqrt(2))")
    e1 = SeriesEncoding(normalize_annihilator(p1), down, parse_puiseux("x^2", X), vars=("x",))
    e2 = SeriesEncoding(normalize_annihilator(p2), up, parse_puiseux("x", X), vars=("x",))
    c.check(validate(e1) and validate(e2), "input encodings valid")
    res = combine(e1, e2, "+")
    c.check(res.kind == "NotAlgebraicEvidence", "combine returns NotAlgebraicEvidence")
    c.check(bool(res.witnesses) and all(w["rejected"] for w in res.witnesses), "every candidate root rejected")
    roots_down = {w["candidate"] for w in res.witnesses if w["order"] != "(1)"}
    c.check(len(roots_down) >= 4, "all four roots of the order-compatible field covered")
    cone_miss = [w for w in res.witnesses if w.get("exponent") == ["1"] and "outside cone bound" in w["knowledge"].values()]
    c.check(bool(cone_miss), "support-cone witness at exponent 1")
    prefix = [w for w in res.witnesses if w.get("sum_prefix") == "x + x^2" and w["candidate"] == "2*x + x^2"]
    c.check(bool(prefix), "prefix witness x^2+x vs x^2+2x")
    dt = time.perf_counter() - t0
    c.check(dt < 5.0, f"runtime {dt:.2f}s < 5s")
    ARTIFACTS["c5"] = [e1, e2]
    ARTIFACTS["c5_result"] = res
    import sympy
    from algseries.poly import to_sympy
    report(5, c, f"{dt:.2f}s; computed P = {sympy.factor(to_sympy(P).as_expr())}")


# ------------------------------------------------------------------ 6

def test_criterion_6_geometric_content():
    c = Checks()
    raw = poly("(1-x)*((1-y)*z-1)")
    W = parse_order("(-1,-sqrt(2))")
    e = edge((0, 0, 0), (0, 0, 1))
    (b_raw,) = expand(raw, e, W, 3).branches
    (b_pp,) = expand(primitive_part(raw), e, W, 3).branches
    c_raw, c_pp = b_raw.bounds[0].cone, b_pp.bounds[0].cone
    contains = all(c_raw.contains(g) for g in c_pp.generators)
    c.check(contains and c_raw != c_pp, "bound without primitive_part strictly contains the reduced one")
    c.check(c_pp == cone((0, 1)), "reduced bound cone generated by (0,1)")
    ARTIFACTS["c6"] = encode(raw, e, W, 3)
    report(6, c, f"raw {c_raw}, reduced {c_pp}")


# ------------------------------------------------------------------ 7

def _rand_ypoly(rng, n, max_deg, max_y, terms):
    from algseries.poly import YPoly
    pts = {}
    for _ in range(terms):
        k = tuple(Fraction(rng.randint(0, max_deg)) for _ in range(n)) + (Fraction(rng.randint(0, max_y)),)
        pts[k] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    return YPoly.from_points(pts, n)


def _eval_x(q, pt):
    total = Fraction(0)
    for e, cf in q.terms.items():
        t = cf
        for xi, k in zip(pt, e):
            t *= Fraction(xi) ** int(k)
        total += t
    return total


def test_criterion_7_property_suites():
    import test_geometry as tg
    c = Checks()
    rng = random.Random(20240607)
    counts = {}

    # (a) hull against the LP oracle
    n_hull = 0
    for dim, size, hi in [(2, 200, 6), (3, 100, 3)]:
        for _ in range(size // 2 if dim == 3 else size // 2):
            raw = [tuple(rng.randint(0, hi) for _ in range(dim)) for _ in range(rng.randint(1, 9))]
            try:
                tg.check_hull(raw)
            except AssertionError:
                c.check(False, f"hull mismatch on {raw}")
            n_hull += 1
        # rational points: scale an integer set by 1/2
        for _ in range(50):
            raw = [tuple(Fraction(rng.randint(0, 2 * hi), 2) for _ in range(dim)) for _ in range(rng.randint(1, 8))]
            try:
                tg.check_hull([tuple(2 * x for x in p) for p in raw])
                from algseries.geometry import convex_hull
                v_half, _ = convex_hull(raw)
                v_int, _ = convex_hull([tuple(2 * x for x in p) for p in raw])
                c.check(sorted(tuple(2 * x for x in v) for v in v_half) == v_int, "hull commutes with scaling")
            except AssertionError:
                c.check(False, f"hull mismatch on {raw}")
            n_hull += 1
    counts["a"] = n_hull
    c.check(n_hull >= 200, "(a) at least 200 point sets")

    # (b) resultant specialization
    n_res = 0
    while n_res < 100:
        f, g = _rand_ypoly(rng, 1, 3, 3, 5), _rand_ypoly(rng, 1, 3, 2, 4)
        x0 = (rng.randint(-3, 3),)
        if f.degree < 1 or g.degree < 1 or _eval_x(f.lc(), x0) == 0 or _eval_x(g.lc(), x0) == 0:
            continue
        lhs = _eval_x(resultant_y(f, g), x0)
        rhs = sylvester_resultant(specialize_x(f, x0), specialize_x(g, x0))
        c.check(lhs == rhs, f"(b) resultant specialization for {f} , {g} at {x0}")
        n_res += 1
    counts["b"] = n_res

    # (c) residual order strictly decreases
    W = parse_order("(-1,-sqrt(2))")
    n_poly, min_steps = 0, None
    while n_poly < 10:
        facs = []
        for _ in range(2):
            a = (rng.randint(-2, 2), rng.randint(-2, 2))
            if a == (0, 0):
                a = (1, 0)
            num = " + ".join(f"({rng.choice([-2, -1, 1, 2])})*x^{rng.randint(0, 2)}*y^{rng.randint(0, 2)}"
                             for _ in range(rng.randint(1, 3)))
            facs.append(f"((1 + ({a[0]})*x + ({a[1]})*y)*z - ({num}))")
        p = poly("*".join(facs))
        if not is_squarefree(p):
            continue
        steps = 0
        for b in all_roots(p, W).branches:
            prev = W.max(list(b.residual().terms)) if not b.residual().is_zero() else None
            for _ in range(20):
                if b.finished:
                    break
                b = advance(b, W)
                r = b.residual()
                steps += 1
                if r.is_zero():
                    break
                cur = W.max(list(r.terms))
                c.check(prev is None or W.compare(cur, prev) < 0, f"(c) residual order decreases for {p}")
                prev = cur
        min_steps = steps if min_steps is None else min(min_steps, steps)
        n_poly += 1
    counts["c"] = f"{n_poly} polys, min {min_steps} steps"
    c.check(min_steps >= 20, "(c) at least 20 steps per polynomial")

    # (d) total order axioms
    orders = [parse_order("(-1+1/2*sqrt(2),-2)"), parse_order("(-2+1/2*sqrt(2),-1)"),
              parse_order("(-sqrt(2),-1)"), parse_order("(-1,-sqrt(3),1/2+sqrt(3))")]
    n_tri = 0
    for _ in range(1000):
        Wd = rng.choice(orders)
        a, b, d = (tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(Wd.arity))
                   for _ in range(3))
        ab, bd, ad = order_compare(Wd, a, b), order_compare(Wd, b, d), order_compare(Wd, a, d)
        ok = order_compare(Wd, a, a) == 0 and ab == -order_compare(Wd, b, a) and (ab == 0) == (a == b)
        ok = ok and not (ab >= 0 and bd >= 0 and ad < 0)
        shift = lambda u: tuple(x + y for x, y in zip(u, d))
        ok = ok and order_compare(Wd, shift(a), shift(b)) == ab
        c.check(ok, f"(d) order axioms for {a},{b},{d}")
        n_tri += 1
    counts["d"] = n_tri

    # (e) JSON round trip of every artifact from criteria 1-6
    n_art = 0
    for key in ("c1", "c2", "c4", "c5", "c6"):
        for enc in ARTIFACTS.get(key, []):
            text = serialize(enc)
            c.check(deserialize(text) == enc and serialize(deserialize(text)) == text, f"(e) round trip {key}")
            n_art += 1
    if "c3" in ARTIFACTS:
        phi, hull = ARTIFACTS["c3"]
        text = json.dumps(hull.to_json(), sort_keys=True)
        c.check(json.dumps(SupportHull.from_json(json.loads(text)).to_json(), sort_keys=True) == text, "(e) hull")
        n_art += 2
    if "c5_result" in ARTIFACTS:
        obj = ARTIFACTS["c5_result"].to_json(["x"])
        c.check(json.loads(json.dumps(obj, sort_keys=True)) == obj, "(e) arithmetic report")
        n_art += 1
    counts["e"] = n_art
    c.check(n_art > 0, "(e) artifacts from criteria 1-6 available")
    report(7, c, ", ".join(f"{k}={v}" for k, v in counts.items()))


# ------------------------------------------------------------------ 8

def test_criterion_8_equality_resolves():
    c = Checks()
    encs = []
    for key in ("c1", "c2", "c4", "c5", "c6"):
        encs.extend(ARTIFACTS.get(key, []))
    if "c3" in ARTIFACTS:
        encs.append(ARTIFACTS["c3"][0])
    c.check(len(encs) >= 10, "encodings from criteria 1-6 available")
    n_eq = n_ne = 0
    for a, b in itertools.combinations_with_replacement(encs, 2):
        if a.arity != b.arity:
            continue
        v = equal(a, b, budget=8)
        if v.value is Verdict.UNKNOWN:
            c.check(False, f"Unknown for {a} vs {b}")
        elif v.value is Verdict.EQUAL:
            n_eq += 1
            c.check(check_certificate(v, a, b), f"certificate for {a} vs {b}")
        else:
            n_ne += 1
    report(8, c, f"{n_eq} Equal, {n_ne} NotEqual")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
