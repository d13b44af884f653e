import json

import pytest
from hypothesis import given, settings, strategies as st

from algseries.encoding import (SeriesEncoding, deserialize, encode, from_json, refine, serialize, to_json,
                                validate, zero_series)
from algseries.errors import ArityMismatch
from algseries.expr import parse_puiseux
from algseries.order import parse_order

from helpers import RATIONAL_SPECS, V, two_branch_encodings, rational_encodings, quadratic_encoding, poly


def test_two_branch_encodings():
    encs = two_branch_encodings()
    assert sorted(e.truncation.format(V) for e in encs) == ["-y", "y"]
    assert all(validate(e) for e in encs)
    refined = sorted(refine(e, 2).truncation.format(V) for e in encs)
    assert refined == ["-y - x*y", "y + x*y"]


def test_rational_four_encodings():
    encs = rational_encodings()
    assert [e.truncation.format(V) for e in encs] == [t for _, _, t in RATIONAL_SPECS]
    assert all(validate(e) for e in encs)


def test_invalid_truncation_detected():
    enc = two_branch_encodings()[0]
    bad = SeriesEncoding(enc.annihilator, enc.order, parse_puiseux("2*y", V))
    assert not validate(bad)


def test_refine_quadratic():
    enc = refine(quadratic_encoding(), 5)
    assert enc.truncation.format(V) == "-1 - x + x*y + x^2*y^2 - x^2*y^3"


def test_arity_mismatch():
    enc = two_branch_encodings()[0]
    with pytest.raises(ArityMismatch):
        SeriesEncoding(enc.annihilator, parse_order("(-1)"), enc.truncation)


def test_annihilator_is_normalized():
    enc = two_branch_encodings()[0]
    (g,) = encode(poly("(1-x)*((1-y)*z-1)"), enc_edge(), parse_order("(-1,-sqrt(2))"))
    assert g.annihilator.degree == 1
    assert validate(g)


def enc_edge():
    from helpers import edge
    return edge((0, 0, 0), (0, 0, 1))


def test_zero_series():
    z = zero_series(2, parse_order("(-1,-sqrt(2))"))
    assert z.is_zero and validate(z)


def _all_encodings():
    encs = two_branch_encodings() + rational_encodings() + [quadratic_encoding(5)]
    return encs + [refine(e, 3) for e in encs[:2]]


def test_json_round_trip_bit_exact():
    for enc in _all_encodings():
        text = serialize(enc)
        back = deserialize(text)
        assert back == enc
        assert serialize(back) == text
        assert json.loads(text) == to_json(enc)


@settings(max_examples=60)
@given(st.dictionaries(st.tuples(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4)),
                       st.fractions(-9, 9, max_denominator=7).filter(bool), max_size=6))
def test_json_round_trip_random_truncations(terms):
    enc = two_branch_encodings()[0]
    from algseries.poly import PuiseuxPoly
    e = SeriesEncoding(enc.annihilator, enc.order, PuiseuxPoly(terms, 2), enc.bound)
    assert from_json(json.loads(serialize(e))) == e
