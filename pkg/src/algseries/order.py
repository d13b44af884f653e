"""Total orders on Q^n given by generalized weights.

An :class:`OrderSpec` is a non-empty sequence of weight rows with entries in
Q(sqrt d).  Exponents are compared by the sign of ``<alpha - beta, row>``,
row after row.  A single row with Q-linearly independent entries (such as
``(-sqrt(2), -1)``) is already total; otherwise later rows break ties.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .errors import MismatchedRadicand, NotTotal, ParseError
from .field import QuadExt, format_quad, parse_quad, quad_sign


def rank(rows) -> int:
    """Rank over Q of a list of rational row vectors."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@dataclass(frozen=True)
class OrderSpec:
    rows: tuple  # tuple[tuple[QuadExt, ...], ...]
    d: int = 2

    def __post_init__(self):
        rows = tuple(tuple(QuadExt.coerce(v, self.d) for v in row) for row in self.rows)
        if not rows:
            raise NotTotal("an order needs at least one row")
        n = len(rows[0])
        for row in rows:
            if len(row) != n:
                raise ValueError("order rows must have equal length")
            for v in row:
                if v.b != 0 and v.d != self.d:
                    raise MismatchedRadicand(f"order mixes sqrt({self.d}) and sqrt({v.d})")
        rows = tuple(tuple(QuadExt(v.a, v.b, self.d) for v in row) for row in rows)
        object.__setattr__(self, "rows", rows)
        stacked = []
        for row in rows:
            stacked.append([v.a for v in row])
            stacked.append([v.b for v in row])
        if rank(stacked) != n:
            raise NotTotal("weight rows do not define a total order")
        # rational/irrational parts per row, for fast comparisons
        object.__setattr__(self, "_parts", tuple(
            (tuple(v.a for v in row), tuple(v.b for v in row)) for row in rows))

    @classmethod
    def from_rows(cls, rows, d: int | None = None) -> "OrderSpec":
        rows = [list(r) for r in rows]
        if d is None:
            d = next((v.d for r in rows for v in r if isinstance(v, QuadExt) and v.b != 0), 2)
        return cls(tuple(tuple(r) for r in rows), d)

    @classmethod
    def with_tiebreak(cls, row, d: int | None = None) -> "OrderSpec":
        """One weight row completed by identity tie-break rows."""
        n = len(row)
        rows = [list(row)] + [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, d)

    @property
    def arity(self) -> int:
        return len(self.rows[0])

    def weigh(self, v) -> list:
        """Signs-ready values ``<v, row>`` for every row."""
        out = []
        for a, b in self._parts:
            out.append(QuadExt(sum((x * y for x, y in zip(v, a)), Fraction(0)),
                               sum((x * y for x, y in zip(v, b)), Fraction(0)), self.d))
        return out

    def sign(self, v) -> int:
        """Sign of the vector ``v`` under the order (0 only for v = 0)."""
        for a, b in self._parts:
            ra = sum((x * y for x, y in zip(v, a)), Fraction(0))
            rb = sum((x * y for x, y in zip(v, b)), Fraction(0))
            s = quad_sign(QuadExt(ra, rb, self.d)) if rb else (ra > 0) - (ra < 0)
            if s:
                return s
        return 0

    def compare(self, alpha, beta) -> int:
        return self.sign(tuple(x - y for x, y in zip(alpha, beta)))

    def key(self):
        return cmp_to_key(self.compare)

    def max(self, exps):
        it = iter(exps)
        best = next(it)
        for e in it:
            if self.compare(e, best) > 0:
                best = e
        return best

    def min(self, exps):
        it = iter(exps)
        best = next(it)
        for e in it:
            if self.compare(e, best) < 0:
                best = e
        return best

    def sort_desc(self, exps) -> list:
        return sorted(exps, key=self.key(), reverse=True)

    def to_json(self) -> dict:
        return {"d": self.d, "rows": [[{"a": _fs(v.a), "b": _fs(v.b)} for v in row] for row in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "OrderSpec":
        d = int(obj.get("d", 2))
        rows = [[QuadExt(Fraction(e["a"]), Fraction(e["b"]), d) for e in row] for row in obj["rows"]]
        return cls(tuple(tuple(r) for r in rows), d)

    def __str__(self):
        return ",".join("(" + ",".join(format_quad(v) for v in row) + ")" for row in self.rows)


def _fs(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def order_compare(W: OrderSpec, alpha, beta) -> int:
    return W.compare(alpha, beta)


def parse_order(text: str, n: int | None = None, tiebreak: bool = True) -> OrderSpec:
    """Parse ``"(-sqrt(2),-1)"`` or ``"(-1+1/sqrt(2),-2),(1,0)"``.

    A bare comma list without parentheses is read as a single row.  With
    ``tiebreak`` a single row that is not total by itself gets identity
    tie-break rows appended.
    """
    text = text.strip()
    rows = []
    if text.startswith("("):
        depth, start = 0, None
        for i, ch in enumerate(text):
            if ch == "(":
                if depth == 0:
                    start = i + 1
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    rows.append(text[start:i])
                elif depth < 0:
                    raise ParseError("unbalanced ')'", i, text)
        if depth != 0:
            raise ParseError("unbalanced '('", len(text), text)
    else:
        rows = [text]
    parsed = []
    d = None
    for r in rows:
        entries = _split_top(r)
        vals = [parse_quad(e, d) for e in entries]
        for v in vals:
            if v.b != 0:
                d = v.d if d is None else d
                if v.d != d:
                    raise MismatchedRadicand(f"mixed radicands {d} and {v.d}")
        parsed.append(vals)
    if n is not None and any(len(r) != n for r in parsed):
        raise ValueError(f"order rows must have {n} entries")
    d = d or 2
    if len(parsed) == 1 and tiebreak:
        try:
            return OrderSpec.from_rows(parsed, d)
        except NotTotal:
            return OrderSpec.with_tiebreak(parsed[0], d)
    return OrderSpec.from_rows(parsed, d)


def _split_top(s: str) -> list:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [p for p in (x.strip() for x in out) if p]
