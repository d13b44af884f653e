"""Exact scalars: rationals for coefficients, Q(sqrt d) for order weights.

Rationals are plain :class:`fractions.Fraction`.  Elements of a real
quadratic field are :class:`QuadExt` values ``a + b*sqrt(d)`` whose sign is
decided exactly, without floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import MismatchedRadicand, ParseError

Rational = Fraction


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot convert {v!r} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign(q) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class QuadExt:
    """The real number ``a + b*sqrt(d)``; ``d`` is square-free, or ``b == 0``."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))
        if self.b != 0 and not is_squarefree(self.d):
            raise ValueError(f"radicand {self.d} is not a square-free integer > 1")

    @classmethod
    def coerce(cls, v, d: int) -> "QuadExt":
        if isinstance(v, QuadExt):
            return v
        return cls(to_fraction(v), Fraction(0), d)

    def _other(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise MismatchedRadicand(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        return QuadExt(to_fraction(other), Fraction(0), self.d)

    def _radicand(self, other: "QuadExt") -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        o = self._other(other)
        return QuadExt(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        d = self._radicand(o)
        return QuadExt(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._other(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        num = self * o.conjugate()
        return QuadExt(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def sign(self) -> int:
        return quad_sign(self)

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        return format_quad(self)


def quad_sign(v: QuadExt) -> int:
    """Exact sign of ``a + b*sqrt(d)``."""
    sa, sb = _sign(v.a), _sign(v.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with d*b^2
    lhs, rhs = v.a * v.a, v.d * v.b * v.b
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def quad_arith(u: QuadExt, v: QuadExt, op: str) -> QuadExt:
    if u.d != v.d:
        raise MismatchedRadicand(f"sqrt({u.d}) vs sqrt({v.d})")
    if op == "+":
        return u + v
    if op == "-":
        return u - v
    if op in ("*", "x", "×"):
        return u * v
    raise ValueError(f"unsupported operation {op!r}")


def format_quad(v: QuadExt) -> str:
    if v.b == 0:
        return format_fraction(v.a)
    b = format_fraction(abs(v.b))
    rad = f"sqrt({v.d})" if abs(v.b) == 1 else f"{b}*sqrt({v.d})"
    if v.a == 0:
        return ("-" if v.b < 0 else "") + rad
    return f"{format_fraction(v.a)}{'-' if v.b < 0 else '+'}{rad}"


_QUAD_TOKEN = re.compile(r"\s*(?:(sqrt)|(\d+(?:/\d+)?)|(.))")


def parse_quad(text: str, d: int | None = None) -> QuadExt:
    """Parse an arithmetic expression over Q(sqrt d).

    Accepts numbers, ``p/q``, ``sqrt(n)``, ``+ - * /`` and parentheses, e.g.
    ``-1+1/sqrt(2)`` or ``3-2*sqrt(2)``.  All square roots must share one
    radicand (after extracting square factors).
    """
    toks = []
    for m in _QUAD_TOKEN.finditer(text):
        if m.group(1):
            toks.append(("sqrt", None, m.start(1)))
        elif m.group(2):
            toks.append(("num", Fraction(m.group(2)), m.start(2)))
        elif m.group(3):
            toks.append(("op", m.group(3), m.start(3)))
    state = {"i": 0, "d": d}

    def peek():
        return toks[state["i"]] if state["i"] < len(toks) else (None, None, len(text))

    def take(kind=None, val=None):
        t = peek()
        if t[0] is None or (kind and t[0] != kind) or (val and t[1] != val):
            raise ParseError(f"unexpected {t[1]!r}" if t[0] else "unexpected end of input", t[2], text)
        state["i"] += 1
        return t

    def radical(n: Fraction, pos) -> QuadExt:
        if n < 0 or n.denominator != 1:
            raise ParseError("sqrt argument must be a non-negative integer", pos, text)
        n = n.numerator
        s = isqrt(n)
        if s * s == n:
            return QuadExt(Fraction(s), Fraction(0), state["d"] or 2)
        sq, core = 1, n
        k = 2
        while k * k <= core:
            while core % (k * k) == 0:
                core //= k * k
                sq *= k
            k += 1
        if state["d"] is None:
            state["d"] = core
        elif state["d"] != core:
            raise MismatchedRadicand(f"mixed radicands sqrt({state['d']}) and sqrt({core})")
        return QuadExt(Fraction(0), Fraction(sq), core)

    def atom():
        t = peek()
        if t[0] == "num":
            take()
            return QuadExt(t[1], Fraction(0), state["d"] or 2)
        if t[0] == "sqrt":
            take()
            take("op", "(")
            inner = expr()
            take("op", ")")
            if not inner.is_rational():
                raise ParseError("nested radicals are not supported", t[2], text)
            return radical(inner.a, t[2])
        if t[0] == "op" and t[1] == "(":
            take()
            v = expr()
            take("op", ")")
            return v
        if t[0] == "op" and t[1] in "+-":
            take()
            v = atom()
            return -v if t[1] == "-" else v
        raise ParseError(f"unexpected {t[1]!r}" if t[0] else "unexpected end of input", t[2], text)

    def term():
        v = atom()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            w = atom()
            v = v * w if op == "*" else v / w
        return v

    def expr():
        v = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    value = expr()
    if peek()[0] is not None:
        t = peek()
        raise ParseError(f"unexpected {t[1]!r}", t[2], text)
    dd = state["d"] or d or 2
    return QuadExt(value.a, value.b, dd)
