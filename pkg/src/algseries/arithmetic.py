"""Sums, products and reciprocals of encoded series.

An annihilator of the result comes from a resultant.  The right root is then
picked among its series roots by comparing coefficients on a region where
the combination of the inputs is known exactly.

Without an order under which both inputs live, the sum may not even be
algebraic.  In that case every series root reachable from the admissible
edges of the annihilator is tested against the inputs at exponents where
all three coefficients are known; if each candidate is refuted the result
is ``NotAlgebraicEvidence``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .encoding import SeriesEncoding, branch_of, from_branch, normalize_annihilator, zero_series
from .equality import known_coeff
from .errors import (AlgSeriesError, BudgetExceeded, NonRationalRoots, NotLineFree, ZeroPolynomial,
                     ZeroRoot)
from .geometry import barrier_cone, dual_contains, interior_order, newton_polytope
from .newton_puiseux import DEFAULT_BUDGET, Branch, advance, all_roots, expand, refine_until
from .order import OrderSpec
from .poly import (PuiseuxPoly, YPoly, _gens, clear_monomial_content, exp_add, exp_sub, format_fraction,
                   from_sympy, to_sympy)

INVERSE_CAP = 256


def ord_w(q: PuiseuxPoly, W: OrderSpec) -> tuple:
    """W-minimal exponent of ``q``."""
    if q.is_zero():
        raise ZeroPolynomial("ord of the zero polynomial")
    return W.min(q.terms)


def lexp_w(q: PuiseuxPoly, W: OrderSpec) -> tuple:
    """W-maximal (leading) exponent of ``q``."""
    if q.is_zero():
        raise ZeroPolynomial("leading exponent of the zero polynomial")
    return W.max(q.terms)


# -------------------------------------------------------------- annihilators

def _sym(p: YPoly):
    return to_sympy(clear_monomial_content(p)).as_expr()


def _back(expr, n: int) -> YPoly:
    gens = _gens(n)
    expr = sympy.expand(expr)
    if expr == 0:
        raise ZeroPolynomial("elimination produced the zero polynomial")
    return normalize_annihilator(from_sympy(sympy.Poly(expr, *gens, domain=sympy.QQ), n))


def _check(p: YPoly):
    if p.is_zero():
        raise ZeroPolynomial("annihilator is zero")
    if p.degree < 1:
        raise AlgSeriesError("annihilator must involve the unknown")


def annihilator_sum(p1: YPoly, p2: YPoly) -> YPoly:
    """Square-free primitive part of ``Res_u(p1(x,u), p2(x,y-u))``."""
    _check(p1), _check(p2)
    n = p1.arity
    y = _gens(n)[-1]
    u = sympy.Dummy("u")
    f = _sym(p1).subs(y, u)
    g = _sym(p2).subs(y, y - u)
    return _back(sympy.resultant(f, g, u), n)


def annihilator_product(p1: YPoly, p2: YPoly) -> YPoly:
    """Square-free primitive part of ``Res_u(p1(x,u), u^d2 p2(x,y/u))``."""
    _check(p1), _check(p2)
    n = p1.arity
    y = _gens(n)[-1]
    u = sympy.Dummy("u")
    f = _sym(p1).subs(y, u)
    g = sympy.expand(sympy.cancel(u ** p2.degree * _sym(p2).subs(y, y / u)))
    return _back(sympy.resultant(f, g, u), n)


def annihilator_reciprocal(p: YPoly) -> YPoly:
    """``y^d p(x, 1/y)``, normalized."""
    _check(p)
    if p.coeff(0).is_zero():
        raise ZeroRoot("the annihilator is divisible by y; its zero root has no inverse")
    d = p.degree
    return normalize_annihilator(YPoly(list(reversed(p.coeffs)), p.arity)) if d else p


# ------------------------------------------------------------------- results

@dataclass
class ArithmeticResult:
    kind: str  # "encoding", "NotAlgebraicEvidence" or "Unknown"
    annihilator: YPoly | None = None
    encoding: SeriesEncoding | None = None
    witnesses: list = field(default_factory=list)
    order: OrderSpec | None = None
    diagnostic: str = ""

    def to_json(self, names=None) -> dict:
        from .encoding import to_json
        out = {"kind": self.kind, "diagnostic": self.diagnostic}
        if self.annihilator is not None:
            nm = list(names) if names else None
            out["annihilator"] = self.annihilator.format(nm, "z") if nm else str(self.annihilator)
        if self.order is not None:
            out["order"] = str(self.order)
        if self.encoding is not None:
            out["encoding"] = to_json(self.encoding)
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


def _exp(e) -> list:
    return [format_fraction(x) for x in e]


def _region(b: Branch, W: OrderSpec):
    """``(cutoff, head)`` where ``b`` is exactly known on ``{>= cutoff}``; the
    cutoff is ``None`` when the whole series is known."""
    if b.finished:
        return None, dict(b.terms)
    best = None
    for s, bd in enumerate(b.bounds):
        if dual_contains(bd.cone, W):
            best = s
    if best is None:
        return False, None
    T = b.bounds[best].anchor
    return T, {e: c for e, c in b.terms if W.compare(e, T) >= 0}


def _wmax(W, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if W.compare(a, b) >= 0 else b


def _restrict(W, terms: dict, T) -> dict:
    if T is None:
        return {e: c for e, c in terms.items() if c}
    return {e: c for e, c in terms.items() if c and W.compare(e, T) >= 0}


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = exp_add(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _inverse_head(W: OrderSpec, head: dict, T):
    """Terms of ``1/phi`` on the region determined by ``phi``'s known head."""
    lead = W.max(head)
    c0 = head[lead]
    eps = {exp_sub(e, lead): c / c0 for e, c in head.items() if e != lead}
    zero = tuple(Fraction(0) for _ in lead)
    D = None if T is None else exp_sub(T, lead)
    acc = {zero: Fraction(1)}
    power = {zero: Fraction(1)}
    neg = {e: -c for e, c in eps.items()}
    for _ in range(INVERSE_CAP):
        power = _restrict(W, _mul_terms(power, neg), D)
        if not power:
            break
        for e, c in power.items():
            acc[e] = acc.get(e, 0) + c
    else:
        if D is not None:
            raise BudgetExceeded("series inversion did not stabilize")
    inv_lead = tuple(-x for x in lead)
    res = {exp_add(e, inv_lead): c / c0 for e, c in acc.items() if c}
    return (None if D is None else exp_add(D, inv_lead)), res


def _combined(op: str, W: OrderSpec, b1: Branch, b2: Branch | None):
    """``(cutoff, head)`` of the combination, or ``None`` if an input is not
    known to lie in the field of W-series."""
    T1, h1 = _region(b1, W)
    if T1 is False:
        return None
    if op == "reciprocal":
        if not h1:
            raise ZeroRoot("cannot invert the zero series")
        return _inverse_head(W, h1, T1)
    T2, h2 = _region(b2, W)
    if T2 is False:
        return None
    if op == "+":
        T = _wmax(W, T1, T2)
        s = dict(h1)
        for e, c in h2.items():
            s[e] = s.get(e, 0) + c
        return T, _restrict(W, s, T)
    if op in ("*", "x"):
        if not h1 or not h2:
            return None, {}
        l1, l2 = W.max(h1), W.max(h2)
        a = None if T1 is None else exp_add(T1, l2)
        b = None if T2 is None else exp_add(T2, l1)
        T = _wmax(W, a, b)
        return T, _restrict(W, _mul_terms(h1, h2), T)
    raise ValueError(f"unknown operation {op!r}")


def _compatible(b: Branch, W: OrderSpec) -> bool:
    return b.finished or any(dual_contains(bd.cone, W) for bd in b.bounds)


def _find_order(b1: Branch, b2: Branch | None):
    other = b2.bounds if b2 is not None else [None]
    for c1 in b1.bounds:
        for c2 in other:
            S = c1.cone if c2 is None else c1.cone + c2.cone
            try:
                return interior_order(S)
            except NotLineFree:
                continue
    return None


def annihilator_for(op: str, p1: YPoly, p2: YPoly | None) -> YPoly:
    if op == "+":
        return annihilator_sum(p1, p2)
    if op in ("*", "x"):
        return annihilator_product(p1, p2)
    if op == "reciprocal":
        return annihilator_reciprocal(p1)
    raise ValueError(f"unknown operation {op!r}")


def combine(enc1: SeriesEncoding, enc2: SeriesEncoding | None, op: str, W: OrderSpec | None = None,
            budget: int = 8) -> ArithmeticResult:
    """Encode ``phi1 + phi2``, ``phi1 * phi2`` or ``1/phi1``."""
    if op not in ("+", "*", "x", "reciprocal"):
        raise ValueError(f"unknown operation {op!r}")
    unary = op == "reciprocal"
    if unary and enc1.is_zero:
        raise ZeroRoot("cannot invert the zero series")
    if not unary and (enc1.is_zero or enc2.is_zero):
        if op == "+":
            nz = enc2 if enc1.is_zero else enc1
            return ArithmeticResult("encoding", nz.annihilator, nz, order=nz.order,
                                    diagnostic="one summand is zero")
        return ArithmeticResult("encoding", YPoly.y(enc1.arity), zero_series(enc1.arity, W or enc1.order, enc1.vars),
                                order=W or enc1.order, diagnostic="one factor is zero")
    P = annihilator_for(op, enc1.annihilator, None if unary else enc2.annihilator)
    b1 = branch_of(enc1)
    b2 = None if unary else branch_of(enc2)
    diag = ""
    if W is not None:
        if not (_compatible(b1, W) and (unary or _compatible(b2, W))):
            diag = f"the bounds of the inputs do not certify that both lie in the field of series for {W}"
            W = None
    else:
        W = _find_order(b1, b2)
    if W is not None:
        res = _identify(op, P, W, b1, b2, enc1, None if unary else enc2.order, budget)
        if res is not None:
            return res
        diag = diag or "no unique root matched within the budget"
    if op != "+":
        return ArithmeticResult("Unknown", P, diagnostic=diag or "no common order found for the inputs")
    return _evidence(P, b1, b2, enc1.order, enc2.order, list(enc1.vars), budget, diag)


def _identify(op, P, W, b1, b2, enc1, W2, budget) -> ArithmeticResult | None:
    try:
        roots = list(all_roots(P, W, 0, DEFAULT_BUDGET).branches)
    except NonRationalRoots:
        return None
    for rnd in range(budget + 1):
        if rnd:
            b1 = advance(b1, enc1.order)
            if b2 is not None:
                b2 = advance(b2, W2)
        comb = _combined(op, W, b1, b2)
        if comb is None:
            return None
        T, head = comb
        if T is None and not head:
            return ArithmeticResult("encoding", YPoly.y(P.arity), zero_series(P.arity, W, enc1.vars), order=W,
                                    diagnostic="the result is exactly zero")
        if T is None:
            T = W.min(head)
        hits = []
        for i, r in enumerate(roots):
            r = refine_until(r, W, lambda br: W.compare(br.bound.anchor, T) <= 0, DEFAULT_BUDGET)
            roots[i] = r
            if {e: c for e, c in r.terms if W.compare(e, T) >= 0} == head:
                hits.append(r)
        if len(hits) == 1:
            enc = from_branch(P, W, hits[0], vars=enc1.vars, unknown=enc1.unknown)
            return ArithmeticResult("encoding", P, enc, order=W)
        if not hits:
            return None
    return None


def _source(b: Branch, alpha) -> str:
    return "truncation" if alpha in dict(b.terms) or b.finished else "outside cone bound"


def _evidence(P: YPoly, b1: Branch, b2: Branch, W1: OrderSpec, W2: OrderSpec, names, budget: int,
              diag: str) -> ArithmeticResult:
    cands = []
    if P.coeff(0).is_zero():
        zero = Branch(terms=(), shifted={}, parent={}, edge=None, finished=True, arity=P.arity)
        cands.append((None, zero))
    for e in newton_polytope(P).admissible_edges:
        try:
            We = interior_order(barrier_cone(P, e))
            for b in expand(P, e, We, 0).branches:
                cands.append((We, b))
        except (NotLineFree, NonRationalRoots):
            return ArithmeticResult("Unknown", P, diagnostic="some roots of the annihilator could not be expanded")
    # inputs refined once per round, shared by all candidates
    ins = [(b1, b2)]
    for _ in range(budget):
        x1, x2 = ins[-1]
        ins.append((advance(x1, W1), advance(x2, W2)))
    witnesses = []
    all_rejected = True
    for We, c in cands:
        start = c
        w = None
        for rnd in range(budget + 1):
            if rnd and not c.finished:
                c = advance(c, We)
            x1, x2 = ins[rnd]
            w = _refute(c, x1, x2)
            if w:
                break
        label = start.truncation.format(names)
        order = "any" if We is None else str(We)
        if w is None:
            all_rejected = False
            witnesses.append({"candidate": label, "order": order, "rejected": False})
            continue
        alpha, cc, s, sources = w
        comb_terms = {}
        for a, _ in start.terms:
            k1, k2 = known_coeff(x1, a), known_coeff(x2, a)
            if k1 is not None and k2 is not None and k1 + k2:
                comb_terms[a] = k1 + k2
        witnesses.append({
            "candidate": label,
            "order": order,
            "rejected": True,
            "exponent": _exp(alpha),
            "candidate_coeff": format_fraction(cc),
            "sum_coeff": format_fraction(s),
            "knowledge": sources,
            "sum_prefix": PuiseuxPoly(comb_terms, P.arity).format(names),
        })
    kind = "NotAlgebraicEvidence" if all_rejected else "Unknown"
    return ArithmeticResult(kind, P, witnesses=witnesses, diagnostic=diag or "no common order for the inputs")


def _refute(c: Branch, b1: Branch, b2: Branch):
    exps = sorted({e for e, _ in c.terms} | {e for e, _ in b1.terms} | {e for e, _ in b2.terms})
    for a in exps:
        k1, k2, kc = known_coeff(b1, a), known_coeff(b2, a), known_coeff(c, a)
        if None in (k1, k2, kc):
            continue
        if k1 + k2 != kc:
            return a, kc, k1 + k2, {"phi1": _source(b1, a), "phi2": _source(b2, a), "candidate": _source(c, a)}
    return None
