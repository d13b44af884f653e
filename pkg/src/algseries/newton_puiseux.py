"""Multivariate Newton-Puiseux expansion with respect to a total order.

A branch carries its accumulated terms together with the shifted polynomial
``p(x, phi + y)`` as a point dictionary ``{(alpha..., j): c}``.  Each
refinement substitutes one more term ``c*x^beta`` and reads the next terms
off the edges of the shifted Newton polytope that are compatible with the
order.

Compatible edges are found without building the full polytope: under a
total order only the order-maximal exponent at every y-degree can lie on a
compatible edge, so the edges form the upper hull of the points
``(j, max_W supp at height j)`` in the ordered vector space ``(Q^n, W)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import BudgetExceeded, NoCompatiblePath, NotAdmissible
from .geometry import Cone, ConeBound, Edge, barrier_cone, dual_contains, slope
from .order import OrderSpec
from .poly import PuiseuxPoly, YPoly, exp_add, exp_scale, exp_sub, rational_roots, shift_by_term

DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class Branch:
    terms: tuple  # ((exponent, coeff), ...), strictly decreasing under the order
    shifted: dict  # points of p(x, phi + y)
    parent: dict  # points of the polynomial in which ``edge`` is an edge
    edge: Edge | None
    weight: int = 1
    finished: bool = False
    bounds: tuple = ()  # one ConeBound per computed term
    arity: int = 0

    @property
    def truncation(self) -> PuiseuxPoly:
        return PuiseuxPoly({e: c for e, c in self.terms}, self.arity)

    @property
    def current_edge(self) -> Edge | None:
        return self.edge

    @property
    def exponents(self) -> list:
        return [e for e, _ in self.terms]

    @property
    def bound(self) -> ConeBound:
        if self.bounds:
            return self.bounds[-1]
        zero = tuple(Fraction(0) for _ in range(self.arity))
        return ConeBound((), zero, Cone.zero(self.arity))

    def residual(self) -> PuiseuxPoly:
        """``p(x, phi)``: the y-free part of the shifted polynomial."""
        return PuiseuxPoly({pt[:-1]: c for pt, c in self.shifted.items() if pt[-1] == 0}, self.arity)

    def known(self):
        """Coefficients known exactly: ``(coeffs, anchor)``; every support
        element not listed is in ``anchor + cone`` minus the anchor."""
        return dict(self.terms), self.bound.anchor

    def sort_key(self):
        return tuple(self.terms)


@dataclass
class ExpansionResult:
    branches: list = field(default_factory=list)

    @property
    def pairs(self) -> list:
        return [(b.truncation, b.bound) for b in self.branches]

    def __len__(self):
        return len(self.branches)


# --------------------------------------------------------------- edge level

def _points(p) -> dict:
    return p.points() if isinstance(p, YPoly) else p


def _arity(points) -> int:
    return len(next(iter(points))) - 1


def _projection(pt, beta):
    return exp_add(pt[:-1], exp_scale(beta, pt[-1]))


def edge_points(p, e: Edge) -> list:
    """Support points of ``p`` on the admissible edge ``e``."""
    pts = _points(p)
    beta = exp_scale(slope(e), -1)
    base = _projection(e.minor, beta)
    lo, hi = e.minor[-1], e.major[-1]
    return sorted(pt for pt in pts if lo <= pt[-1] <= hi and _projection(pt, beta) == base)


def edge_polynomial(p, e: Edge) -> list:
    """Ascending coefficients of ``sum a_I t^(I_last - m(e)_last)`` over I on ``e``."""
    if not e.admissible:
        raise NotAdmissible(f"edge {e} is not admissible")
    pts = _points(p)
    lo = e.minor[-1]
    coeffs = [Fraction(0)] * (e.height + 1)
    for pt in edge_points(pts, e):
        coeffs[int(pt[-1] - lo)] += pts[pt]
    return coeffs


def _profile(points, W: OrderSpec) -> dict:
    """Order-maximal exponent at every occurring y-degree."""
    best: dict = {}
    for pt in points:
        j = int(pt[-1])
        g = pt[:-1]
        if j not in best or W.compare(g, best[j]) > 0:
            best[j] = g
    return best


def _beta(ha, va, hb, vb):
    return exp_scale(exp_sub(va, vb), Fraction(1, hb - ha))


def compatible_edges(points, W: OrderSpec, lo: int | None = None, hi: int | None = None) -> list:
    """Edges of the Newton polytope compatible with ``W`` between heights lo..hi.

    They are returned bottom-up and form a connected chain.
    """
    prof = _profile(points, W)
    hs = sorted(h for h in prof if (lo is None or h >= lo) and (hi is None or h <= hi))
    stack: list = []
    for h in hs:
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if W.compare(_beta(a, prof[a], b, prof[b]), _beta(b, prof[b], h, prof[h])) >= 0:
                stack.pop()
            else:
                break
        stack.append(h)
    return [Edge(prof[a] + (Fraction(a),), prof[b] + (Fraction(b),)) for a, b in zip(stack, stack[1:])]


def _on_line(pt, e: Edge) -> bool:
    beta = exp_scale(slope(e), -1)
    return _projection(pt, beta) == _projection(e.minor, beta)


def edge_path(p, e_ref: Edge | None, W: OrderSpec) -> list:
    """The compatible edge chain starting at the lowest y-degree of ``p`` and
    ending at the lowest support point on the line through ``e_ref``.

    With ``e_ref=None`` the chain runs to the top degree.
    """
    pts = _points(p)
    lo = min(int(pt[-1]) for pt in pts)
    if e_ref is None:
        return compatible_edges(pts, W, lo)
    on = [pt for pt in pts if _on_line(pt, e_ref)]
    if not on:
        raise NoCompatiblePath(f"no support point on the line through {e_ref}")
    top = min(on, key=lambda pt: pt[-1])
    hi = int(top[-1])
    path = compatible_edges(pts, W, lo, hi)
    if hi == lo:
        return []
    if not path or path[-1].major != top or _on_line(path[-1].minor, e_ref):
        raise NoCompatiblePath(f"order {W} admits no edge path ending on the line through {e_ref}")
    return path


# ------------------------------------------------------------- branch level

def _children(parent: dict, edges, terms: tuple, bounds: tuple, n: int) -> list:
    out = []
    for e in edges:
        beta = exp_scale(slope(e), -1)
        roots = rational_roots(edge_polynomial(parent, e))
        cone = barrier_cone(parent, e)
        exc = tuple(t for t, _ in terms)
        bound = ConeBound(exc, beta, cone)
        for c, mult in roots:
            out.append(Branch(
                terms=terms + ((beta, c),),
                shifted=shift_by_term(parent, c, beta),
                parent=parent,
                edge=e,
                weight=mult,
                bounds=bounds + (bound,),
                arity=n,
            ))
    return out


def _exact_root(b: Branch, weight: int) -> Branch:
    exc = tuple(t for t, _ in b.terms[:-1])
    if b.terms:
        bound = ConeBound(exc, b.terms[-1][0], Cone.zero(b.arity))
        bounds = b.bounds[:-1] + (bound,)
    else:
        bounds = ()
    return replace(b, finished=True, weight=weight, bounds=bounds)


def split(b: Branch, W: OrderSpec) -> list:
    """One refinement step: the children of ``b`` (an exact root stays put)."""
    P = b.shifted
    h0 = min(int(pt[-1]) for pt in P)
    out = []
    if h0 > 0:
        out.append(_exact_root(b, h0))
        if b.weight == h0:
            return out
    path = edge_path(P, b.edge, W) if b.edge is not None else compatible_edges(P, W, h0)
    out.extend(_children(P, path, b.terms, b.bounds, b.arity))
    return out


def advance(b: Branch, W: OrderSpec) -> Branch:
    """Next term of a distinguished (weight one) branch."""
    if b.finished:
        return b
    kids = split(b, W)
    if len(kids) != 1:
        raise NoCompatiblePath(f"branch {b.truncation} did not refine to a single child")
    return kids[0]


def _needs_work(b: Branch, k: int) -> bool:
    return not b.finished and (b.weight > 1 or len(b.terms) < k)


def _distinguish(L: list, target: int, W: OrderSpec, k: int, budget: int) -> list:
    rounds = 0
    while sum(b.weight for b in L) != target or len(L) != target or any(_needs_work(b, k) for b in L):
        if rounds >= budget:
            raise BudgetExceeded(f"expansion not distinguished after {budget} rounds")
        rounds += 1
        nxt = []
        for b in L:
            nxt.extend(split(b, W) if _needs_work(b, k) else [b])
        L = nxt
    return sorted(L, key=Branch.sort_key)


def initial_branches(p, e: Edge, W: OrderSpec, check: bool = True) -> list:
    pts = _points(p)
    if not e.admissible:
        raise NotAdmissible(f"edge {e} is not admissible")
    if check and not dual_contains(barrier_cone(pts, e), W):
        raise NoCompatiblePath(f"order {W} is not in the dual of the barrier cone of {e}")
    return _children(pts, [e], (), (), _arity(pts))


def expand(p, e: Edge, W: OrderSpec, k: int = 0, budget: int = DEFAULT_BUDGET) -> ExpansionResult:
    """Series solutions of ``p(x, y) = 0`` arising from the admissible edge ``e``.

    Every branch is distinguished from the others and carries at least ``k``
    terms (unless it is an exact polynomial root).
    """
    L = initial_branches(p, e, W)
    return ExpansionResult(_distinguish(L, e.height, W, k, budget))


def all_roots(p, W: OrderSpec, k: int = 0, budget: int = DEFAULT_BUDGET) -> ExpansionResult:
    """All series roots of ``p`` whose support lies in a cone compatible with ``W``."""
    pts = _points(p)
    n = _arity(pts)
    deg = max(int(pt[-1]) for pt in pts)
    root = Branch(terms=(), shifted=pts, parent=pts, edge=None, weight=deg, arity=n)
    L = split(root, W)
    return ExpansionResult(_distinguish(L, deg, W, k, budget))


def refine_until(b: Branch, W: OrderSpec, stop, budget: int = DEFAULT_BUDGET) -> Branch:
    """Advance ``b`` until ``stop(b)`` holds or the branch is an exact root."""
    steps = 0
    while not b.finished and not stop(b):
        if steps >= budget:
            raise BudgetExceeded(f"refinement did not reach its target within {budget} steps")
        b = advance(b, W)
        steps += 1
    return b


def refine_to_terms(b: Branch, W: OrderSpec, k: int, budget: int = DEFAULT_BUDGET) -> Branch:
    return refine_until(b, W, lambda br: len(br.terms) >= k, budget)


def truncate(b: Branch, W: OrderSpec, cutoff) -> PuiseuxPoly:
    return PuiseuxPoly({e: c for e, c in b.terms if W.compare(e, cutoff) >= 0}, b.arity)


def expand_to_order(p, e: Edge, W: OrderSpec, cutoff, budget: int = DEFAULT_BUDGET) -> ExpansionResult:
    """Expand every branch until all terms ``>= cutoff`` are known.

    The returned branches keep their full term lists and bounds; use
    :func:`truncate` for the terms at or above the cutoff.
    """
    cutoff = tuple(Fraction(c) for c in cutoff)
    res = expand(p, e, W, 0, budget)
    out = [refine_until(b, W, lambda br: W.compare(br.bound.anchor, cutoff) <= 0, budget) for b in res.branches]
    return ExpansionResult(out)
