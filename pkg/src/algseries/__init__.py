"""Exact toolkit for multivariate algebraic series.

Series are described by finite encodings (annihilator, total order, leading
truncation); the package expands them, compares them, describes the convex
hull of their supports and combines them arithmetically.
"""
from .arithmetic import ArithmeticResult, annihilator_product, annihilator_reciprocal, annihilator_sum, combine
from .encoding import SeriesEncoding, deserialize, encode, refine, serialize, validate, zero_series
from .equality import EqualityVerdict, Verdict, equal
from .errors import AlgSeriesError
from .expr import parse_expression, parse_puiseux
from .field import QuadExt
from .geometry import Cone, ConeBound, Edge, barrier_cone, interior_order, newton_polytope, slope
from .newton_puiseux import all_roots, edge_polynomial, expand
from .order import OrderSpec, parse_order
from .poly import PuiseuxPoly, YPoly
from .support import minimality_witnesses, support_hull
from .svg import render_svg

__version__ = "0.1.0"
