from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from algseries.arithmetic import (annihilator_product, annihilator_reciprocal, annihilator_sum, combine, lexp_w,
                                  ord_w)
from algseries.encoding import SeriesEncoding, normalize_annihilator, refine, validate, zero_series
from algseries.errors import ZeroRoot
from algseries.expr import parse_puiseux
from algseries.order import parse_order
from algseries.poly import to_sympy

from helpers import poly, vec

X = ["x"]
DOWN, UP = parse_order("(-sqrt(2))"), parse_order("(sqrt(2))")


def enc1(src, W, trunc):
    return SeriesEncoding(normalize_annihilator(poly(src, X)), W, parse_puiseux(trunc, X), vars=("x",))


def geometric():
    return enc1("(1-x)*z - 1", DOWN, "1")


def fmt(p):
    return p.format(["x"], "z")


def test_closed_forms():
    assert fmt(annihilator_product(poly("z^2 - x", X), poly("z - x", X))) == "z^2 - x^3"
    assert fmt(annihilator_sum(poly("z^2 - x", X), poly("z^2 - x", X))) == "z^3 - 4*x*z" or \
        normalize_annihilator(annihilator_sum(poly("z^2 - x", X), poly("z^2 - x", X))) == \
        normalize_annihilator(poly("z^3 - 4*x*z", X))
    with pytest.raises(ZeroRoot):
        annihilator_reciprocal(poly("z*(z - x)", X))


def _roots(p):
    P = to_sympy(p)
    y = P.gens[-1]
    return sympy.roots(sympy.Poly(P.as_expr().subs(P.gens[0], sympy.Rational(3, 7)), y), multiple=True)


@settings(max_examples=25)
@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3), st.integers(-3, 3).filter(bool), st.integers(-3, 3))
def test_annihilators_vanish_at_combined_roots(a, b, c, d):
    # linear annihilators a z - (b + x), c z - (d + x^2): roots are known exactly
    p1, p2 = poly(f"({a})*z - ({b} + x)", X), poly(f"({c})*z - ({d} + x^2)", X)
    x = sympy.Rational(3, 7)
    r1, r2 = (b + x) / a, (d + x ** 2) / c
    for P, val in [(annihilator_sum(p1, p2), r1 + r2), (annihilator_product(p1, p2), r1 * r2)]:
        S = to_sympy(P)
        assert S.as_expr().subs({S.gens[0]: x, S.gens[-1]: val}) == 0
    if r1 != 0:
        R = to_sympy(annihilator_reciprocal(p1))
        assert R.as_expr().subs({R.gens[0]: x, R.gens[-1]: 1 / r1}) == 0


def test_geometric_sum_product_reciprocal():
    g = geometric()
    s = combine(g, g, "+")
    assert s.kind == "encoding" and validate(s.encoding)
    assert refine(s.encoding, 3).truncation == parse_puiseux("2 + 2*x + 2*x^2", X)
    m = combine(g, g, "*")
    assert refine(m.encoding, 4).truncation == parse_puiseux("1 + 2*x + 3*x^2 + 4*x^3", X)
    r = combine(g, None, "reciprocal")
    assert refine(r.encoding, 2).truncation == parse_puiseux("1 - x", X)


def test_bivariate_product():
    from helpers import rational_encodings
    phi = rational_encodings()[0]
    res = combine(phi, phi, "*")
    assert res.kind == "encoding"
    # phi^2 = (x+y)^2/(1+x+y)^2; under the result order x^4 still beats x*y
    assert str(res.encoding.order) == "(-1+1/4*sqrt(2),-2)"
    assert refine(res.encoding, 4).truncation == parse_puiseux("x^2 - 2*x^3 + 3*x^4 + 2*x*y", ["x", "y"])
    assert validate(res.encoding)


def test_zero_operands():
    g = geometric()
    z = zero_series(1, DOWN, ("x",))
    assert combine(g, z, "+").encoding == g
    assert combine(g, z, "*").encoding.is_zero


def test_non_algebraic_sum_evidence():
    e1 = enc1("(1+x+x^2-z)*(x^2-(1-x)*z)", DOWN, "x^2")
    e2 = enc1("z*(x^2-(x-1)*z)", UP, "x")
    assert validate(e1) and validate(e2)
    res = combine(e1, e2, "+")
    assert res.kind == "NotAlgebraicEvidence"
    assert res.witnesses and all(w["rejected"] for w in res.witnesses)
    by = {w["candidate"]: w for w in res.witnesses}
    assert by["x^2"]["exponent"] == ["1"] and by["x^2"]["knowledge"]["phi1"] == "outside cone bound"
    assert by["2*x + x^2"]["sum_prefix"] == "x + x^2"


def test_ord_and_lexp():
    q = parse_puiseux("x^-1 + 3 + x^2", X)
    assert lexp_w(q, DOWN) == vec(-1)
    assert lexp_w(q, UP) == vec(2)
    assert ord_w(q, UP) is not None


def test_stated_product_belongs_to_cubic_variants():
    # the four-factor product quoted for the sum example is the sum annihilator
    # of the variants with x^3 in place of x^2 (see the decisions ledger)
    p1 = poly("(1+x+x^3-z)*(x^3-(1-x)*z)", X)
    p2 = poly("z*(x^3-(x-1)*z)", X)
    stated = poly("(1+x+x^3-z)*z*(-1+x^2+x^4-(x-1)*z)*(x^3-(1-x)*z)", X)
    assert normalize_annihilator(annihilator_sum(p1, p2)) == normalize_annihilator(stated)


def test_literal_sum_annihilator_factors():
    p1 = poly("(1+x+x^2-z)*(x^2-(1-x)*z)", X)
    p2 = poly("z*(x^2-(x-1)*z)", X)
    want = poly("z*(x^2+x*z-z)*(x^2+x-z+1)*(x^3+x^2-x*z+z-1)", X)
    assert normalize_annihilator(annihilator_sum(p1, p2)) == normalize_annihilator(want)
