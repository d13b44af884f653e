"""Finite encodings ``(annihilator, order, truncation)`` of algebraic series.

A truncation determines a unique series root once it is long enough to
tell the roots apart under the order.  Re-expansion locates that root among
all series roots of the annihilator that live in the field of series
compatible with the order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import AlgSeriesError, ArityMismatch
from .expr import parse_expression
from .geometry import ConeBound, Edge
from .newton_puiseux import (DEFAULT_BUDGET, Branch, all_roots, expand, refine_to_terms,
                             refine_until)
from .order import OrderSpec
from .poly import PuiseuxPoly, YPoly, default_names, format_fraction, is_squarefree, primitive_part, squarefree_part


def normalize_annihilator(p: YPoly) -> YPoly:
    """Square-free, primitive, integer coefficients, positive leading term."""
    return primitive_part(squarefree_part(p))


def zero_annihilator(n: int) -> YPoly:
    return YPoly.y(n)


@dataclass(frozen=True)
class SeriesEncoding:
    annihilator: YPoly
    order: OrderSpec
    truncation: PuiseuxPoly
    bound: ConeBound | None = None
    vars: tuple = ()
    unknown: str = "z"

    def __post_init__(self):
        n = self.annihilator.arity
        if self.truncation.arity != n or self.order.arity != n:
            raise ArityMismatch("annihilator, order and truncation disagree on the number of variables")
        if not self.vars:
            object.__setattr__(self, "vars", tuple(default_names(n)))

    @property
    def arity(self) -> int:
        return self.annihilator.arity

    def terms(self) -> list:
        """Truncation terms in decreasing order."""
        return reorder_terms(self.truncation, self.order)

    @property
    def trailing(self):
        t = self.terms()
        return t[-1][0] if t else None

    @property
    def is_zero(self) -> bool:
        return self.truncation.is_zero()

    def __str__(self):
        return (f"({self.annihilator.format(self.vars, self.unknown)}, {self.order}, "
                f"{self.truncation.format(self.vars)})")


def reorder_terms(q: PuiseuxPoly, W: OrderSpec) -> list:
    """Terms of ``q`` as ``(exponent, coeff)`` pairs, strictly decreasing under ``W``."""
    exps = W.sort_desc(q.terms.keys())
    return [(e, q.terms[e]) for e in exps]


# ----------------------------------------------------------- branch helpers

def prefix(b: Branch, N: int) -> tuple:
    """``(truncation, bound)`` of the first ``N`` terms of a branch."""
    N = min(N, len(b.terms))
    trunc = PuiseuxPoly({e: c for e, c in b.terms[:N]}, b.arity)
    if N == 0:
        return trunc, b.bound
    return trunc, b.bounds[N - 1]


def _through(b: Branch, W: OrderSpec, cutoff, budget: int) -> Branch:
    """Refine ``b`` until every support element ``>= cutoff`` is known."""
    return refine_until(b, W, lambda br: W.compare(br.bound.anchor, cutoff) <= 0, budget)


def consistent(b: Branch, terms: list, W: OrderSpec, budget: int = DEFAULT_BUDGET):
    """Refined branch if the series of ``b`` starts with ``terms``, else ``None``."""
    if not terms:
        return b if b.finished and not b.terms else None
    cutoff = terms[-1][0]
    b = _through(b, W, cutoff, budget)
    head = [(e, c) for e, c in b.terms if W.compare(e, cutoff) >= 0]
    return b if head == list(terms) else None


def locate(enc: SeriesEncoding, budget: int = DEFAULT_BUDGET) -> list:
    """All root branches of the annihilator consistent with the truncation."""
    res = all_roots(enc.annihilator, enc.order, 0, budget)
    terms = enc.terms()
    out = []
    for b in res.branches:
        c = consistent(b, terms, enc.order, budget)
        if c is not None:
            out.append(c)
    return out


def branch_of(enc: SeriesEncoding, budget: int = DEFAULT_BUDGET) -> Branch:
    found = locate(enc, budget)
    if len(found) != 1:
        raise AlgSeriesError(f"truncation matches {len(found)} roots; the encoding is not valid")
    return found[0]


# --------------------------------------------------------------- operations

def from_branch(p: YPoly, W: OrderSpec, b: Branch, N: int | None = None, vars=(), unknown="z") -> SeriesEncoding:
    trunc, bound = prefix(b, len(b.terms) if N is None else N)
    return SeriesEncoding(p, W, trunc, bound, tuple(vars), unknown)


def encode(p: YPoly, e: Edge, W: OrderSpec, k: int = 0, budget: int = DEFAULT_BUDGET,
           vars=(), unknown: str = "z") -> list:
    """One encoding per series root arising from ``e``."""
    res = expand(p, e, W, k, budget)
    ann = normalize_annihilator(p)
    return [from_branch(ann, W, b, vars=vars, unknown=unknown) for b in res.branches]


def refine(enc: SeriesEncoding, k: int, budget: int = DEFAULT_BUDGET) -> SeriesEncoding:
    """Extend the truncation to at least ``k`` terms (exact roots stop early)."""
    have = len(enc.truncation.terms)
    if k <= have and enc.bound is not None:
        return enc
    if enc.is_zero:
        return enc
    b = refine_to_terms(branch_of(enc, budget), enc.order, k, budget)
    N = max(k, have)
    trunc, bound = prefix(b, N)
    return replace(enc, truncation=trunc, bound=bound)


def validate(enc: SeriesEncoding, budget: int = DEFAULT_BUDGET) -> bool:
    try:
        p = enc.annihilator
        if p.degree < 1 or not is_squarefree(p):
            return False
        terms = enc.terms()
        exps = [e for e, _ in terms]
        if len(set(exps)) != len(exps):
            return False
        return len(locate(enc, budget)) == 1
    except AlgSeriesError:
        return False


def zero_series(n: int, W: OrderSpec, vars=(), unknown="z") -> SeriesEncoding:
    return SeriesEncoding(zero_annihilator(n), W, PuiseuxPoly.zero(n), None, tuple(vars), unknown)


# ------------------------------------------------------------ serialization

def to_json(enc: SeriesEncoding) -> dict:
    obj = {
        "vars": list(enc.vars),
        "unknown": enc.unknown,
        "annihilator": enc.annihilator.format(enc.vars, enc.unknown),
        "order": enc.order.to_json(),
        "truncation": [{"coeff": format_fraction(c), "exp": [format_fraction(x) for x in e]}
                       for e, c in enc.terms()],
    }
    if enc.bound is not None:
        obj["bound"] = enc.bound.to_json()
    return obj


def from_json(obj: dict) -> SeriesEncoding:
    vars = tuple(obj["vars"])
    unknown = obj.get("unknown", "z")
    ann = parse_expression(obj["annihilator"], vars, unknown)
    order = OrderSpec.from_json(obj["order"])
    trunc = PuiseuxPoly({tuple(Fraction(x) for x in t["exp"]): Fraction(t["coeff"]) for t in obj["truncation"]},
                        len(vars))
    bound = ConeBound.from_json(obj["bound"]) if obj.get("bound") is not None else None
    return SeriesEncoding(ann, order, trunc, bound, vars, unknown)


def serialize(enc: SeriesEncoding) -> str:
    return json.dumps(to_json(enc), indent=2, sort_keys=True) + "\n"


def deserialize(text: str) -> SeriesEncoding:
    return from_json(json.loads(text))
