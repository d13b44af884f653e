"""Sparse Puiseux polynomials over Q and polynomials in y over them.

``PuiseuxPoly`` maps rational exponent vectors to nonzero rational
coefficients.  ``YPoly`` is a dense list of ``PuiseuxPoly`` coefficients
indexed by the degree in the distinguished variable ``y``.

Square-free parts, primitive parts and resultants go through sympy, which
requires nonnegative integer exponents; everything else works for arbitrary
rational exponents.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import comb, lcm

import sympy

from .errors import ArityMismatch, NonRationalRoots, ZeroPolynomial
from .field import format_fraction, to_fraction

Exponent = tuple  # tuple[Fraction, ...]


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_scale(a, s):
    return tuple(x * s for x in a)


def as_exponent(v) -> tuple:
    return tuple(to_fraction(c) for c in v)


class PuiseuxPoly:
    """Finite sum of terms ``c * x^alpha`` with rational ``alpha``."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms=None, arity: int | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = as_exponent(e)
            c = to_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        if arity is None:
            if not clean:
                raise ValueError("arity is required for the zero polynomial")
            arity = len(next(iter(clean)))
        for e in clean:
            if len(e) != arity:
                raise ArityMismatch(f"exponent {e} has length != {arity}")
        self.terms = clean
        self.arity = arity

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "PuiseuxPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.arity = arity
        return obj

    @classmethod
    def zero(cls, n: int) -> "PuiseuxPoly":
        return cls._raw({}, n)

    @classmethod
    def constant(cls, c, n: int) -> "PuiseuxPoly":
        c = to_fraction(c)
        return cls._raw({(Fraction(0),) * n: c} if c else {}, n)

    @classmethod
    def monomial(cls, c, exp) -> "PuiseuxPoly":
        exp = as_exponent(exp)
        c = to_fraction(c)
        return cls._raw({exp: c} if c else {}, len(exp))

    @classmethod
    def variable(cls, i: int, n: int) -> "PuiseuxPoly":
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        return cls._raw({tuple(e): Fraction(1)}, n)

    def _check(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other, self.arity)
        if other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return PuiseuxPoly._raw(out, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxPoly._raw({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = to_fraction(other)
            if not other:
                return PuiseuxPoly.zero(self.arity)
            return PuiseuxPoly._raw({e: c * other for e, c in self.terms.items()}, self.arity)
        other = self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return PuiseuxPoly._raw(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have polynomial inverses")
            (e, c), = self.terms.items()
            return PuiseuxPoly.monomial(1 / c, exp_scale(e, -1)) ** (-k)
        result = PuiseuxPoly.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp) -> "PuiseuxPoly":
        """Multiply by the monomial ``x^exp``."""
        return PuiseuxPoly._raw({exp_add(e, exp): c for e, c in self.terms.items()}, self.arity)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxPoly.constant(other, self.arity)
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list:
        return sorted(self.terms)

    def coeff(self, exp) -> Fraction:
        return self.terms.get(as_exponent(exp), Fraction(0))

    def items(self) -> list:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self.terms.items())

    def is_polynomial(self) -> bool:
        return all(x.denominator == 1 and x >= 0 for e in self.terms for x in e)

    def format(self, names) -> str:
        return format_terms(self.items(), names)

    def __str__(self):
        return self.format(default_names(self.arity))

    def __repr__(self):
        return f"PuiseuxPoly({self})"


def default_names(n: int) -> list:
    return ["x", "y"][:n] if n <= 2 else [f"x{i + 1}" for i in range(n)]


def format_monomial(exp, names) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 0:
            continue
        if k == 1:
            parts.append(name)
        elif k.denominator == 1 and k > 0:
            parts.append(f"{name}^{k.numerator}")
        else:
            parts.append(f"{name}^({format_fraction(k)})")
    return "*".join(parts)


def format_terms(items, names) -> str:
    if not items:
        return "0"
    out = []
    for exp, c in items:
        mono = format_monomial(exp, names)
        mag = abs(c)
        if not mono:
            body = format_fraction(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_fraction(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class YPoly:
    """Polynomial in ``y`` with ``PuiseuxPoly`` coefficients (ascending degree)."""

    __slots__ = ("coeffs", "arity")

    def __init__(self, coeffs, arity: int | None = None):
        coeffs = list(coeffs)
        if arity is None:
            if not coeffs:
                raise ValueError("arity is required for the zero polynomial")
            arity = coeffs[0].arity
        for c in coeffs:
            if c.arity != arity:
                raise ArityMismatch(f"coefficient arity {c.arity} != {arity}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.arity = arity

    @classmethod
    def from_points(cls, points: dict, n: int) -> "YPoly":
        """Build from ``{(alpha_1..alpha_n, j): c}``."""
        by_deg: dict = {}
        for pt, c in points.items():
            pt = as_exponent(pt)
            j = pt[-1]
            if j.denominator != 1 or j < 0:
                raise ValueError(f"y-degree must be a nonnegative integer, got {j}")
            by_deg.setdefault(int(j), {})[pt[:-1]] = c
        deg = max(by_deg, default=-1)
        return cls([PuiseuxPoly(by_deg.get(j, {}), n) for j in range(deg + 1)], n)

    @classmethod
    def y(cls, n: int) -> "YPoly":
        return cls([PuiseuxPoly.zero(n), PuiseuxPoly.constant(1, n)], n)

    @classmethod
    def from_x(cls, q: PuiseuxPoly) -> "YPoly":
        return cls([q], q.arity)

    def points(self) -> dict:
        out = {}
        for j, c in enumerate(self.coeffs):
            fj = Fraction(j)
            for e, v in c.terms.items():
                out[e + (fj,)] = v
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> PuiseuxPoly:
        return self.coeffs[-1]

    def coeff(self, j: int) -> PuiseuxPoly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else PuiseuxPoly.zero(self.arity)

    def _lift(self, other):
        if isinstance(other, YPoly):
            if other.arity != self.arity:
                raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
            return other
        if isinstance(other, PuiseuxPoly):
            return YPoly.from_x(other)
        return YPoly([PuiseuxPoly.constant(other, self.arity)], self.arity)

    def __add__(self, other):
        other = self._lift(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return YPoly([self.coeff(j) + other.coeff(j) for j in range(m)], self.arity)

    __radd__ = __add__

    def __neg__(self):
        return YPoly([-c for c in self.coeffs], self.arity)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return YPoly([], self.arity)
        out = [PuiseuxPoly.zero(self.arity) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return YPoly(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = YPoly([PuiseuxPoly.constant(1, self.arity)], self.arity)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.arity, self.coeffs))

    def derivative(self) -> "YPoly":
        return YPoly([c * j for j, c in enumerate(self.coeffs)][1:], self.arity)

    def format(self, names, unknown: str) -> str:
        items = sorted(self.points().items())
        return format_terms(items, list(names) + [unknown])

    def __str__(self):
        return self.format(default_names(self.arity), "z")

    def __repr__(self):
        return f"YPoly({self})"


def poly_arith(f, g, op: str):
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op in ("*", "x", "×"):
        return f * g
    raise ValueError(f"unsupported operation {op!r}")


def evaluate_y(p: YPoly, q: PuiseuxPoly) -> PuiseuxPoly:
    """``p(x, q)`` by Horner's rule."""
    acc = PuiseuxPoly.zero(p.arity)
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return acc


def substitute_shift(p: YPoly, q: PuiseuxPoly) -> YPoly:
    """``p(x, q + y)`` expanded."""
    n = p.arity
    shift = YPoly([q, PuiseuxPoly.constant(1, n)], n)
    acc = YPoly([], n)
    for c in reversed(p.coeffs):
        acc = acc * shift + c
    return acc


def shift_by_term(points: dict, c: Fraction, beta: tuple) -> dict:
    """Point-dict form of ``P(x, c*x^beta + y)``; used on the expansion hot path."""
    out: dict = {}
    for pt, a in points.items():
        gamma, j = pt[:-1], int(pt[-1])
        for i in range(j + 1):
            k = j - i
            v = a * comb(j, i) * c ** k
            e = tuple(g + k * b for g, b in zip(gamma, beta)) + (Fraction(i),)
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


# ---------------------------------------------------------------- sympy bridge

def _gens(n: int):
    return sympy.symbols(f"x1:{n + 1}") + (sympy.Symbol("y"),) if n else (sympy.Symbol("y"),)


def to_sympy(p: YPoly) -> sympy.Poly:
    n = p.arity
    data = {}
    for pt, c in p.points().items():
        if any(v.denominator != 1 or v < 0 for v in pt):
            raise ValueError("operation requires nonnegative integer exponents")
        data[tuple(int(v) for v in pt)] = sympy.Rational(c.numerator, c.denominator)
    if not data:
        data = {(0,) * (n + 1): sympy.Integer(0)}
    return sympy.Poly.from_dict(data, *_gens(n), domain=sympy.QQ)


def from_sympy(P: sympy.Poly, n: int) -> YPoly:
    pts = {}
    for mon, c in P.terms():
        c = sympy.Rational(c)
        if c:
            pts[tuple(Fraction(v) for v in mon)] = Fraction(int(c.p), int(c.q))
    return YPoly.from_points(pts, n)


def clear_monomial_content(p: YPoly) -> YPoly:
    """Divide by the largest monomial in x dividing every coefficient.

    Makes Laurent annihilators polynomial; exponents must be integral.
    """
    pts = p.points()
    if not pts:
        return p
    n = p.arity
    low = tuple(min(pt[i] for pt in pts) for i in range(n))
    if any(v.denominator != 1 for pt in pts for v in pt):
        raise ValueError("fractional exponents are not supported here")
    return YPoly.from_points({exp_sub(pt[:-1], low) + (pt[-1],): c for pt, c in pts.items()}, n)


def normalize_integer(p: YPoly) -> YPoly:
    """Scale to coprime integer coefficients with a positive leading term.

    The leading term is the one with the lexicographically greatest
    (y-degree, exponent) key.
    """
    pts = p.points()
    if not pts:
        return p
    den = reduce(lcm, (c.denominator for c in pts.values()), 1)
    from math import gcd
    num = reduce(gcd, (abs(c.numerator * (den // c.denominator)) for c in pts.values()), 0)
    lead = max(pts, key=lambda pt: (pt[-1],) + pt[:-1])
    s = Fraction(den, num) * (1 if pts[lead] > 0 else -1)
    return YPoly.from_points({pt: c * s for pt, c in pts.items()}, p.arity)


def squarefree_part(p: YPoly) -> YPoly:
    if p.is_zero():
        raise ZeroPolynomial("square-free part of zero")
    P = to_sympy(clear_monomial_content(p))
    return normalize_integer(from_sympy(sympy.Poly(sympy.sqf_part(P), *P.gens, domain=sympy.QQ), p.arity))


def primitive_part(p: YPoly) -> YPoly:
    """Remove the content (monomial and polynomial) in x."""
    if p.is_zero():
        raise ZeroPolynomial("primitive part of zero")
    n = p.arity
    q = clear_monomial_content(p)
    P = to_sympy(q)
    gens = P.gens
    coeffs = [c for c in sympy.Poly(P.as_expr(), gens[-1]).all_coeffs() if c != 0]
    g = reduce(sympy.gcd, coeffs)
    quo = sympy.cancel(P.as_expr() / g)
    return normalize_integer(from_sympy(sympy.Poly(sympy.expand(quo), *gens, domain=sympy.QQ), n))


def is_squarefree(p: YPoly) -> bool:
    """True iff ``p`` has no repeated factor involving y (over Q(x))."""
    if p.degree < 1:
        return False
    P = to_sympy(clear_monomial_content(p))
    y = P.gens[-1]
    return sympy.Poly(sympy.gcd(P, P.diff(y)), *P.gens).degree(y) == 0


def resultant_y(f: YPoly, g: YPoly) -> PuiseuxPoly:
    """Resultant with respect to y; a polynomial in x alone."""
    n = f.arity
    F, G = to_sympy(f), to_sympy(g)
    R = sympy.resultant(F.as_expr(), G.as_expr(), F.gens[-1])
    out = {}
    if n:
        RP = sympy.Poly(R, *F.gens[:-1], domain=sympy.QQ)
        for mon, c in RP.terms():
            c = sympy.Rational(c)
            if c:
                out[tuple(Fraction(v) for v in mon)] = Fraction(int(c.p), int(c.q))
    else:
        c = sympy.Rational(R)
        if c:
            out[()] = Fraction(int(c.p), int(c.q))
    return PuiseuxPoly(out, n)


def gcd_y(f: YPoly, g: YPoly) -> YPoly:
    F, G = to_sympy(clear_monomial_content(f)), to_sympy(clear_monomial_content(g))
    return normalize_integer(from_sympy(sympy.Poly(sympy.gcd(F, G), *F.gens, domain=sympy.QQ), f.arity))


# ---------------------------------------------------------------- univariate

def _trim(coeffs):
    coeffs = [to_fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_univariate(coeffs, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _divide_linear(coeffs, r):
    """Synthetic division of an ascending coefficient list by (t - r)."""
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * r + c
        out.append(acc)
    rem = out.pop()
    return list(reversed(out)), rem


def rational_roots(coeffs) -> list:
    """All roots of an ascending coefficient list, as ``(root, multiplicity)``.

    Raises ``NonRationalRoots`` with the unsplit cofactor when the
    polynomial does not factor into linear factors over Q.
    """
    f = _trim(coeffs)
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    roots: dict = {}
    zero_mult = 0
    while len(f) > 1 and f[0] == 0:
        f = f[1:]
        zero_mult += 1
    if zero_mult:
        roots[Fraction(0)] = zero_mult
    if len(f) == 2:
        r = -f[0] / f[1]
        roots[r] = roots.get(r, 0) + 1
        f = [f[1]]
    elif len(f) == 3:
        a, b, c = f[2], f[1], f[0]
        disc = b * b - 4 * a * c
        s = _fraction_sqrt(disc)
        if s is not None:
            for r in ((-b + s) / (2 * a), (-b - s) / (2 * a)):
                roots[r] = roots.get(r, 0) + 1
            f = [a]
    if len(f) > 1:
        t = sympy.Symbol("t")
        P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], t, domain=sympy.QQ)
        _, factors = P.factor_list()
        rest = [Fraction(1)]
        for fac, mult in factors:
            if fac.degree() == 1:
                a1, a0 = [sympy.Rational(c) for c in fac.all_coeffs()]
                r = Fraction(int((-a0 / a1).p), int((-a0 / a1).q))
                roots[r] = roots.get(r, 0) + mult
            else:
                fc = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(fac.all_coeffs())]
                for _ in range(mult):
                    rest = mul_univariate(rest, fc)
        if len(rest) > 1:
            raise NonRationalRoots(rest)
    return sorted(roots.items(), key=lambda rm: (-rm[0], rm[1]))


def _fraction_sqrt(q: Fraction):
    from math import isqrt
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def mul_univariate(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def sylvester_resultant(f, g) -> Fraction:
    """Resultant of two univariate polynomials (ascending coefficients) via
    the Sylvester determinant; exact Gaussian elimination over Q."""
    f, g = _trim(f), _trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return _det(rows)


def _det(rows) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def specialize_x(p: YPoly, point) -> list:
    """Ascending univariate coefficients of ``p(point, y)``; integer exponents only."""
    out = []
    for c in p.coeffs:
        v = Fraction(0)
        for e, a in c.terms.items():
            term = a
            for xi, k in zip(point, e):
                term *= Fraction(xi) ** int(k)
            v += term
        out.append(v)
    return out


def monomials_upto(n: int, deg: int):
    for e in product(range(deg + 1), repeat=n):
        if sum(e) <= deg:
            yield tuple(Fraction(v) for v in e)
