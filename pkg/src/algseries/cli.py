"""Command-line front end.

Exit status: 0 success, 1 negative verdict (NotEqual, or evidence that a sum
is not algebraic), 2 Unknown, 3 library error, 4 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import arithmetic, encoding, equality, support
from .errors import AlgSeriesError, ParseError
from .expr import parse_expression
from .geometry import ConeBound, Edge, newton_polytope
from .newton_puiseux import DEFAULT_BUDGET, expand
from .order import parse_order
from .svg import render_svg

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_ERROR, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _vars(text: str) -> list:
    return [v.strip() for v in text.split(",") if v.strip()]


_VEC = re.compile(r"\(([^()]*)\)")


def parse_edge(text: str) -> Edge:
    """``"(0,2,0)-(0,0,2)"``."""
    vs = _VEC.findall(text)
    if len(vs) != 2:
        raise UsageError(f"edge must look like (v1)-(v2), got {text!r}")
    a, b = ([Fraction(c.strip()) for c in v.split(",")] for v in vs)
    return Edge(tuple(a), tuple(b))


def _text(obj, indent="") -> list:
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_text(v, indent + "  "))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            for i, x in enumerate(v):
                lines.append(f"{indent}{k}[{i}]:")
                lines.extend(_text(x, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v if isinstance(v, str) else json.dumps(v)}")
    return lines


_FORMAT = "json"


def _emit(obj, out: str | None):
    if _FORMAT == "text":
        body = obj if isinstance(obj, dict) else {"items": obj}
        text = "\n".join(_text(body)) + "\n"
    else:
        text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def load_encoding(path: str, index: int | None = None) -> encoding.SeriesEncoding:
    obj = _load_json(path)
    if isinstance(obj, list):
        if index is None:
            if len(obj) != 1:
                raise UsageError(f"{path} holds {len(obj)} encodings; pick one with --index")
            index = 0
        obj = obj[index]
    return encoding.from_json(obj)


def _poly(args):
    return parse_expression(args.poly, _vars(args.vars), args.unknown)


def _select_edge(args, p):
    edges = newton_polytope(p).admissible_edges
    if args.edge:
        return parse_edge(args.edge)
    if args.edge_index is not None:
        if not 0 <= args.edge_index < len(edges):
            raise UsageError(f"edge index out of range (0..{len(edges) - 1})")
        return edges[args.edge_index]
    raise UsageError("an edge is required (-e or --edge-index)")


def _list_edges(p):
    return {"admissible_edges": [{"index": i, "edge": str(e)} for i, e in enumerate(newton_polytope(p).admissible_edges)]}


def cmd_expand(args):
    p = _poly(args)
    if args.list_edges:
        _emit(_list_edges(p), args.output)
        return EXIT_OK
    e = _select_edge(args, p)
    W = parse_order(args.order, p.arity)
    res = expand(p, e, W, args.k, args.budget)
    names = _vars(args.vars)
    fs = encoding.format_fraction
    branches = []
    for b in res.branches:
        branches.append({
            "truncation": b.truncation.format(names),
            "terms": [{"coeff": fs(c), "exp": [fs(x) for x in t]} for t, c in b.terms],
            "bound": b.bound.to_json(),
            "finished": b.finished,
        })
    _emit({"edge": str(e), "order": str(W), "branches": branches}, args.output)
    return EXIT_OK


def cmd_encode(args):
    p = _poly(args)
    e = _select_edge(args, p)
    W = parse_order(args.order, p.arity)
    encs = encoding.encode(p, e, W, args.k, args.budget, _vars(args.vars), args.unknown)
    if args.branch is not None:
        _emit(encoding.to_json(encs[args.branch]), args.output)
    else:
        _emit([encoding.to_json(x) for x in encs], args.output)
    return EXIT_OK


def cmd_refine(args):
    enc = load_encoding(args.encoding, args.index)
    _emit(encoding.to_json(encoding.refine(enc, args.k, args.budget)), args.output)
    return EXIT_OK


def cmd_equal(args):
    e1, e2 = load_encoding(args.first), load_encoding(args.second)
    v = equality.equal(e1, e2, args.budget)
    _emit({"verdict": v.value.value, "witness": v.witness}, args.output)
    return {equality.Verdict.EQUAL: EXIT_OK, equality.Verdict.NOT_EQUAL: EXIT_NO}.get(v.value, EXIT_UNKNOWN)


def cmd_support_hull(args):
    enc = load_encoding(args.encoding, args.index)
    hull = support.support_hull(enc, args.budget)
    _emit(hull.to_json(), args.output)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(hull))
    return EXIT_OK if all(hull.verified.values()) else EXIT_UNKNOWN


def _arith(args, op):
    e1 = load_encoding(args.first)
    e2 = load_encoding(args.second) if op != "reciprocal" else None
    W = parse_order(args.order, e1.arity) if args.order else None
    res = arithmetic.combine(e1, e2, op, W, args.budget)
    _emit(res.to_json(e1.vars), args.output)
    return {"encoding": EXIT_OK, "NotAlgebraicEvidence": EXIT_NO}.get(res.kind, EXIT_UNKNOWN)


def cmd_render(args):
    obj = _load_json(args.input)
    if "vertices" in obj:
        target = support.SupportHull.from_json(obj)
    elif "bound" in obj:
        target = ConeBound.from_json(obj["bound"])
    elif "anchor" in obj:
        target = ConeBound.from_json(obj)
    else:
        raise UsageError("input is neither a hull, an encoding nor a bound")
    svg = render_svg(target)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="algseries", description="Exact multivariate algebraic series toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        # accepted for interface stability; all work is sequential
        sp.add_argument("--jobs", type=int, default=1)

    def poly_opts(sp):
        sp.add_argument("-p", "--poly", required=True, help="annihilating polynomial")
        sp.add_argument("--vars", default="x,y", help="comma separated variable names (default x,y)")
        sp.add_argument("--unknown", default="z", help="name of the unknown (default z)")
        sp.add_argument("-e", "--edge", help='edge "(v1)-(v2)"')
        sp.add_argument("--edge-index", type=int, help="index into the admissible edge list")
        sp.add_argument("-w", "--order", help='order rows, e.g. "(-sqrt(2),-1)"')
        sp.add_argument("-k", type=int, default=0, help="minimum number of terms")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        common(sp)

    sp = sub.add_parser("expand", help="expand the series roots from an edge")
    poly_opts(sp)
    sp.add_argument("--list-edges", action="store_true", help="print the admissible edges and stop")
    sp.set_defaults(func=cmd_expand, needs_order=True)

    sp = sub.add_parser("encode", help="finite encodings of the roots from an edge")
    poly_opts(sp)
    sp.add_argument("--branch", type=int, help="emit only this branch")
    sp.set_defaults(func=cmd_encode, needs_order=True)

    sp = sub.add_parser("refine", help="extend an encoding's truncation")
    sp.add_argument("encoding")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--index", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("equal", help="decide whether two encodings agree")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--budget", type=int, default=8)
    common(sp)
    sp.set_defaults(func=cmd_equal)

    sp = sub.add_parser("support-hull", help="vertices and bounded faces of the support")
    sp.add_argument("encoding")
    sp.add_argument("--index", type=int)
    sp.add_argument("--budget", type=int, default=8)
    sp.add_argument("--svg", help="also write an SVG picture")
    common(sp)
    sp.set_defaults(func=cmd_support_hull)

    for name, op in (("add", "+"), ("mul", "*")):
        sp = sub.add_parser(name, help=f"{'sum' if op == '+' else 'product'} of two encodings")
        sp.add_argument("first")
        sp.add_argument("second")
        sp.add_argument("-w", "--order", help="an order under which both series live")
        sp.add_argument("--budget", type=int, default=8)
        common(sp)
        sp.set_defaults(func=lambda a, op=op: _arith(a, op))

    sp = sub.add_parser("inv", help="reciprocal of an encoding")
    sp.add_argument("first")
    sp.add_argument("-w", "--order")
    sp.add_argument("--budget", type=int, default=8)
    common(sp)
    sp.set_defaults(func=lambda a: _arith(a, "reciprocal"))

    sp = sub.add_parser("render", help="SVG of a hull, encoding bound or bound JSON")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "needs_order", False) and not args.order and not getattr(args, "list_edges", False):
        ap.error("an order (-w) is required")
    global _FORMAT
    _FORMAT = getattr(args, "format", "json")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgSeriesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
