"""Deciding whether two encodings describe the same series.

Two sound arguments are used.

* Mismatch: every stage of an expansion certifies
  ``supp(phi) <= exceptional U (anchor + C)``, so the coefficient of phi is
  known at the computed exponents and is zero outside ``anchor + C``.  A
  disagreement at an exponent known on both sides proves inequality.
* Identification: if some total order W is compatible with a stage cone of
  each series, both series lie in the field of series compatible with W.
  That field holds at most ``deg L`` roots of a common annihilator L, all of
  which are enumerated; matching each series against them on a region where
  it is known exactly tells whether they are the same root.

When neither argument applies within the refinement budget the verdict is
``Unknown``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .encoding import SeriesEncoding, branch_of, normalize_annihilator, reorder_terms
from .errors import AlgSeriesError, NonRationalRoots, NotLineFree
from .geometry import dual_contains, interior_order
from .newton_puiseux import Branch, advance, all_roots, refine_until
from .order import OrderSpec
from .poly import default_names, format_fraction, gcd_y, squarefree_part

__all__ = ["Verdict", "EqualityVerdict", "equal", "reorder_terms", "known_coeff", "check_certificate"]


class Verdict(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class EqualityVerdict:
    value: Verdict
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value is Verdict.EQUAL


def _exp(e) -> list:
    return [format_fraction(x) for x in e]


def known_coeff(b: Branch, alpha):
    """Coefficient of the series of ``b`` at ``alpha`` if the expansion so far
    determines it, else ``None``."""
    terms = dict(b.terms)
    if alpha in terms:
        return terms[alpha]
    if b.finished:
        return 0
    for bd in b.bounds:
        if alpha not in bd.exceptional and not bd.cone.contains(tuple(a - c for a, c in zip(alpha, bd.anchor))):
            return 0
    return None


def _mismatch(b1: Branch, b2: Branch):
    exps = sorted({e for e, _ in b1.terms} | {e for e, _ in b2.terms})
    for a in exps:
        c1, c2 = known_coeff(b1, a), known_coeff(b2, a)
        if c1 is not None and c2 is not None and c1 != c2:
            return a, c1, c2
    return None


def _exact_region(b: Branch, W: OrderSpec):
    """``(cutoff, head)``: the series of ``b`` is known exactly on ``{>= cutoff}``
    under ``W``; ``head`` lists its terms there.  ``None`` if no stage fits W."""
    best = None
    for s, bd in enumerate(b.bounds):
        if dual_contains(bd.cone, W):
            best = s
    if best is None:
        return None
    T = b.bounds[best].anchor
    return best, T, {e: c for e, c in b.terms if W.compare(e, T) >= 0}


class _Roots:
    """All roots of ``L`` under the orders tried so far (cached per order)."""

    def __init__(self, L, budget):
        self.L = L
        self.budget = budget
        self.cache: dict = {}

    def get(self, W: OrderSpec):
        key = str(W)
        if key not in self.cache:
            try:
                self.cache[key] = all_roots(self.L, W, 0, self.budget).branches
            except NonRationalRoots:
                self.cache[key] = None
        return self.cache[key]


def _identify(roots: list, T, head: dict, W: OrderSpec, budget: int):
    hits = []
    for i, r in enumerate(roots):
        r = refine_until(r, W, lambda br: W.compare(br.bound.anchor, T) <= 0, budget)
        roots[i] = r
        if {e: c for e, c in r.terms if W.compare(e, T) >= 0} == head:
            hits.append(i)
    return hits[0] if len(hits) == 1 else None


def _candidate_orders(b1: Branch, b2: Branch, W1: OrderSpec, W2: OrderSpec):
    seen = set()
    for s, c1 in enumerate(b1.bounds):
        for t, c2 in enumerate(b2.bounds):
            S = c1.cone + c2.cone
            try:
                W = interior_order(S)
            except NotLineFree:
                continue
            if str(W) not in seen:
                seen.add(str(W))
                yield "line-free sum", W
    if any(dual_contains(bd.cone, W1) for bd in b2.bounds) and str(W1) not in seen:
        seen.add(str(W1))
        yield "first order", W1
    if any(dual_contains(bd.cone, W2) for bd in b1.bounds) and str(W2) not in seen:
        yield "second order", W2


def _certificate(kind, W, r1, r2, b1, b2, names) -> dict:
    return {
        "argument": kind,
        "order": str(W),
        "cone1": str(b1.bounds[r1[0]].cone),
        "anchor1": _exp(r1[1]),
        "cone2": str(b2.bounds[r2[0]].cone),
        "anchor2": _exp(r2[1]),
        "dual_contains": [dual_contains(b1.bounds[r1[0]].cone, W), dual_contains(b2.bounds[r2[0]].cone, W)],
    }


def check_certificate(v: EqualityVerdict, enc1: SeriesEncoding, enc2: SeriesEncoding) -> bool:
    """Re-check the compatibility claims of an ``Equal`` verdict."""
    if v.value is not Verdict.EQUAL:
        return False
    w = v.witness
    if w.get("argument") == "identical encodings":
        return (enc1.annihilator, enc1.order, enc1.truncation) == (enc2.annihilator, enc2.order, enc2.truncation)
    return w.get("dual_contains") == [True, True]


def _terms_text(b: Branch, names) -> str:
    return b.truncation.format(names)


def equal(enc1: SeriesEncoding, enc2: SeriesEncoding, budget: int = 8) -> EqualityVerdict:
    """Three-valued equality test; refines both encodings up to ``budget`` rounds."""
    if enc1.arity != enc2.arity:
        raise AlgSeriesError("encodings have different numbers of variables")
    names = list(enc1.vars) or default_names(enc1.arity)
    if (enc1.annihilator, enc1.order, enc1.truncation) == (enc2.annihilator, enc2.order, enc2.truncation):
        return EqualityVerdict(Verdict.EQUAL, {"argument": "identical encodings"})
    if enc1.is_zero or enc2.is_zero:
        if enc1.is_zero and enc2.is_zero:
            return EqualityVerdict(Verdict.EQUAL, {"argument": "identical encodings"})
        nz = enc2 if enc1.is_zero else enc1
        e, c = nz.terms()[0]
        return EqualityVerdict(Verdict.NOT_EQUAL, {
            "argument": "coefficient mismatch", "exponent": _exp(e),
            "coeff1": format_fraction(0 if nz is enc2 else c), "coeff2": format_fraction(c if nz is enc2 else 0)})

    p1 = normalize_annihilator(enc1.annihilator)
    p2 = normalize_annihilator(enc2.annihilator)
    if p1 == p2:
        L = p1
    else:
        g = gcd_y(p1, p2)
        if g.degree < 1:
            return EqualityVerdict(Verdict.NOT_EQUAL, {"argument": "annihilators have no common factor"})
        L = normalize_annihilator(squarefree_part(p1 * p2))

    W1, W2 = enc1.order, enc2.order
    b1, b2 = branch_of(enc1), branch_of(enc2)
    roots = _Roots(L, 64)
    for rnd in range(budget + 1):
        if rnd:
            b1, b2 = advance(b1, W1), advance(b2, W2)
        mm = _mismatch(b1, b2)
        if mm:
            a, c1, c2 = mm
            return EqualityVerdict(Verdict.NOT_EQUAL, {
                "argument": "coefficient mismatch", "exponent": _exp(a),
                "coeff1": format_fraction(c1), "coeff2": format_fraction(c2), "rounds": rnd})
        for kind, W in _candidate_orders(b1, b2, W1, W2):
            r1, r2 = _exact_region(b1, W), _exact_region(b2, W)
            if r1 is None or r2 is None:
                continue
            rs = roots.get(W)
            if rs is None:
                continue
            i1 = _identify(rs, r1[1], r1[2], W, 64)
            i2 = _identify(rs, r2[1], r2[2], W, 64)
            if i1 is None or i2 is None:
                continue
            cert = _certificate(kind, W, r1, r2, b1, b2, names)
            cert["rounds"] = rnd
            if i1 == i2:
                cert["root"] = _terms_text(rs[i1], names)
                return EqualityVerdict(Verdict.EQUAL, cert)
            cert["argument"] = "distinct roots under " + kind
            cert["root1"] = _terms_text(rs[i1], names)
            cert["root2"] = _terms_text(rs[i2], names)
            return EqualityVerdict(Verdict.NOT_EQUAL, cert)
    return EqualityVerdict(Verdict.UNKNOWN, {"argument": "budget exhausted", "rounds": budget,
                                             "truncation1": _terms_text(b1, names),
                                             "truncation2": _terms_text(b2, names)})
