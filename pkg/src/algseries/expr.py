"""Parser for polynomial expressions in the canonical textual form.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := NUMBER | NAME | '(' expr ')'
    exponent := INTEGER | '-' INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')'

Division is allowed by rational constants and by monomials.  Rational or
negative powers are allowed on monomials only.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, UnknownVariable
from .poly import PuiseuxPoly, YPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(src: str) -> list:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            if src[pos:].strip() == "":
                break
            bad = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[bad]!r}", bad, src)
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(("op", op, m.start(3)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, src: str, names: list, unknown: bool = False):
        self.src = src
        self.unknown = unknown  # last coordinate is the unknown
        self.toks = _tokenize(src)
        self.i = 0
        self.index = {v: k for k, v in enumerate(names)}
        self.dim = len(names)

    # points are exponent tuples of length dim
    def peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return (None, None, len(self.src))

    def fail(self, tok=None):
        t = tok or self.peek()
        msg = f"unexpected {t[1]!r}" if t[0] else "unexpected end of input"
        raise ParseError(msg, t[2], self.src)

    def accept(self, op):
        t = self.peek()
        if t[0] == "op" and t[1] == op:
            self.i += 1
            return True
        return False

    def expect(self, op):
        if not self.accept(op):
            self.fail()

    def parse(self) -> dict:
        if not self.toks:
            raise ParseError("empty expression", 0, self.src)
        v = self.expr()
        if self.peek()[0] is not None:
            self.fail()
        return v

    def expr(self) -> dict:
        v = self.term()
        while True:
            if self.accept("+"):
                v = _add(v, self.term())
            elif self.accept("-"):
                v = _add(v, _scale(self.term(), -1))
            else:
                return v

    def term(self) -> dict:
        v = self.unary()
        while True:
            if self.accept("*"):
                v = _mul(v, self.unary())
            elif self.peek()[0] == "op" and self.peek()[1] == "/":
                tok = self.peek()
                self.i += 1
                d = self.unary()
                if len(d) != 1:
                    raise ParseError("can only divide by a monomial", tok[2], self.src)
                (e, c), = d.items()
                if self.unknown and e[-1] != 0:
                    raise ParseError("cannot divide by the unknown", tok[2], self.src)
                v = _mul(v, {tuple(-x for x in e): 1 / c})
            else:
                return v

    def unary(self) -> dict:
        if self.accept("-"):
            return _scale(self.unary(), -1)
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> dict:
        start = self.peek()
        base = self.atom()
        if not self.accept("^"):
            return base
        k = self.exponent()
        if k.denominator == 1 and k >= 0:
            out = {(Fraction(0),) * self.dim: Fraction(1)}
            for _ in range(int(k)):
                out = _mul(out, base)
            return out
        if len(base) != 1:
            raise ParseError("rational or negative powers need a monomial base", start[2], self.src)
        (e, c), = base.items()
        if c != 1 and (k.denominator != 1):
            raise ParseError("rational powers need a unit coefficient", start[2], self.src)
        if self.unknown and e[-1] != 0 and (k.denominator != 1 or k < 0):
            raise ParseError("the unknown only takes nonnegative integer powers", start[2], self.src)
        return {tuple(x * k for x in e): c ** int(k) if k.denominator == 1 else c}

    def exponent(self) -> Fraction:
        neg = self.accept("-")
        t = self.peek()
        if t[0] == "num":
            self.i += 1
            return Fraction(-t[1] if neg else t[1])
        if neg or not self.accept("("):
            self.fail()
        sign = -1 if self.accept("-") else 1
        t = self.peek()
        if t[0] != "num":
            self.fail()
        self.i += 1
        num = t[1]
        den = 1
        if self.accept("/"):
            t = self.peek()
            if t[0] != "num" or t[1] == 0:
                self.fail()
            self.i += 1
            den = t[1]
        self.expect(")")
        return Fraction(sign * num, den)

    def atom(self) -> dict:
        t = self.peek()
        zero = (Fraction(0),) * self.dim
        if t[0] == "num":
            self.i += 1
            return {zero: Fraction(t[1])} if t[1] else {}
        if t[0] == "name":
            self.i += 1
            if t[1] not in self.index:
                raise UnknownVariable(f"unknown variable {t[1]!r}", t[2], self.src)
            e = list(zero)
            e[self.index[t[1]]] = Fraction(1)
            return {tuple(e): Fraction(1)}
        if self.accept("("):
            v = self.expr()
            self.expect(")")
            return v
        self.fail()


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _scale(a: dict, s) -> dict:
    return {e: c * s for e, c in a.items()}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def parse_expression(src: str, vars, unknown: str = "z") -> YPoly:
    """Parse ``src`` as a polynomial in ``unknown`` over Puiseux polynomials in ``vars``."""
    vars = list(vars)
    if len(set(vars)) != len(vars):
        raise ValueError("variable names must be distinct")
    if unknown in vars:
        raise ValueError(f"unknown {unknown!r} clashes with a variable name")
    pts = _Parser(src, vars + [unknown], unknown=True).parse()
    n = len(vars)
    for e in pts:
        if e[-1].denominator != 1 or e[-1] < 0:
            raise ParseError(f"{unknown} must appear with nonnegative integer powers", None, src)
    if not pts:
        return YPoly([], n)
    return YPoly.from_points(pts, n)


def parse_puiseux(src: str, vars) -> PuiseuxPoly:
    """Parse a Puiseux polynomial (no unknown)."""
    vars = list(vars)
    pts = _Parser(src, vars).parse()
    return PuiseuxPoly(pts, len(vars))
