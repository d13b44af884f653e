"""Shared inputs for the worked examples."""
from fractions import Fraction

from algseries.encoding import encode
from algseries.expr import parse_expression
from algseries.geometry import Edge
from algseries.order import parse_order

V = ["x", "y"]
TWO_BRANCH = "4*x^2*y + (x^2*y + x*y^2 + x*y + y)^2 - z^2"
RATIONAL = "x + y - (1+x+y)*z"
QUADRATIC = "1 + x + y + (1 + x*y + 2*y)*z + y*z^2"


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def edge(a, b):
    return Edge(vec(*a), vec(*b))


def poly(src, vars=V):
    return parse_expression(src, vars, "z")


def two_branch_encodings(k=1):
    return encode(poly(TWO_BRANCH), edge((0, 2, 0), (0, 0, 2)), parse_order("(-sqrt(2),-1)"), k)


# edge, order and expected truncation of the four encodings of (x+y)/(1+x+y) and friends
RATIONAL_SPECS = [
    (((1, 0, 0), (0, 0, 1)), "(-1+1/2*sqrt(2),-2)", "x"),
    (((0, 1, 0), (0, 0, 1)), "(-2+1/2*sqrt(2),-1)", "y"),
    (((0, 1, 0), (0, 1, 1)), "(-1+1/2*sqrt(2),1)", "1"),
    (((1, 0, 0), (1, 0, 1)), "(1-1/2*sqrt(2),-1)", "1"),
]


def rational_encodings():
    p = poly(RATIONAL)
    out = []
    for (a, b), w, _ in RATIONAL_SPECS:
        (enc,) = encode(p, edge(a, b), parse_order(w), 1)
        out.append(enc)
    return out


def quadratic_encoding(k=1):
    (enc,) = encode(poly(QUADRATIC), edge((0, 0, 0), (0, 0, 1)), parse_order("(-1+1/2*sqrt(2),-1)"), k)
    return enc
