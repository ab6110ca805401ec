"""Command line entry point: ``sensbound <subcommand> ...``.

Exit status is 0 on success, 1 for invalid networks or arguments and 2 when
the evidence has probability zero.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds as bd
from .inference import ZeroEvidenceError, marginal_prob, posterior, sensitivity_constants
from .model import (NetworkError, enumerate_parameters, load_network, make_query,
                    parse_parameter)
from .screen import (ScreenOptions, emit, emit_verify, emit_xy, filter_rank, screen, verify)
from .sensfun import Hyperbolic, Linear, classify, sensitivity_value, vertex
from .vertexloc import VertexWindow, vertex_possible

EXIT_OK, EXIT_INVALID, EXIT_ZERO_EVIDENCE = 0, 1, 2


def _load(args):
    return load_network(Path(args.network).read_text(encoding="utf-8"))


def _query(net, args):
    if not args.target:
        raise NetworkError("--target is required")
    return make_query(net, args.target, args.evidence or "")


def _options(args) -> ScreenOptions:
    opts = ScreenOptions(workers=getattr(args, "workers", 1))
    if getattr(args, "vertex_window", None):
        opts.window = VertexWindow(*args.vertex_window)
    if getattr(args, "vicinity", None) is not None:
        opts.vicinity = args.vicinity
    return opts


def cmd_validate(args) -> int:
    net = _load(args)
    n = len(enumerate_parameters(net))
    print(f"ok: {len(net.variables)} variables, {n} parameters")
    return EXIT_OK


def cmd_infer(args) -> int:
    net = _load(args)
    q = _query(net, args)
    pe = marginal_prob(net, q.evidence_dict)
    if pe <= 0:
        raise ZeroEvidenceError("the evidence has probability zero")
    print(f"Pr(e) = {pe!r}")
    print(f"Pr({args.target} | e) = {posterior(net, q)!r}")
    return EXIT_OK


def cmd_sensfun(args) -> int:
    net = _load(args)
    q = _query(net, args)
    if not args.parameter:
        raise NetworkError("--parameter is required")
    p = parse_parameter(net, args.parameter)
    x0 = net.value(p)
    c = sensitivity_constants(net, p, q)
    k = classify(c)
    out = {"parameter": args.parameter, "x0": x0, "p0": c(x0),
           "c1": c.c1, "c2": c.c2, "c3": c.c3, "c4": c.c4,
           "kind": type(k).__name__.lower(), "sensitivity_value": sensitivity_value(k, x0)}
    if isinstance(k, Hyperbolic):
        v = vertex(k.form)
        out.update(s=k.form.s, t=k.form.t, r=k.form.r, quadrant=k.quadrant.value,
                   xv=v.x, yv=v.y)
    elif isinstance(k, Linear):
        out.update(slope=k.slope, intercept=k.intercept)
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_screen(args) -> int:
    net = _load(args)
    q = _query(net, args)
    opts = _options(args)
    rows = screen(net, q, opts)
    if args.sv_threshold is not None:
        rows = filter_rank(rows, args.sv_threshold)
    sys.stdout.write(emit(rows, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    net = _load(args)
    q = _query(net, args)
    summary = verify(net, q, _options(args))
    sys.stdout.write(emit_verify(summary, args.format))
    return EXIT_OK if summary.ok else EXIT_INVALID


def _point_from_args(args):
    """(x0, p0, s) from explicit flags or from a network parameter."""
    if args.network:
        net = _load(args)
        q = _query(net, args)
        if not args.parameter:
            raise NetworkError("--parameter is required with --network")
        p = parse_parameter(net, args.parameter)
        c = sensitivity_constants(net, p, q)
        x0 = net.value(p)
        if c.c3 == 0:
            raise NetworkError("sensitivity function is linear; no asymptote")
        return x0, c(x0), -c.c4 / c.c3
    if args.x0 is None or args.p0 is None or args.s_value is None:
        raise NetworkError("need --x0, --p0 and --s-value (or --network/--parameter)")
    return args.x0, args.p0, args.s_value


def cmd_plotdata(args) -> int:
    if args.what == "surface":
        if args.s_value is None:
            raise NetworkError("--s-value is required")
        axis, sv, general = bd.bound_surface_grid(args.grid, args.s_value)
        values = general if args.general else sv
        rows = bd.grid_to_csv_rows(axis, values)
        sys.stdout.write(emit_xy(("x0", "p0", "value"), list(zip(*rows))))
        return EXIT_OK

    x0, p0, s = _point_from_args(args)
    tp = bd.ThroughPoint(x0, p0)
    grid = np.linspace(0.0, 1.0, args.grid)
    if args.what == "envelope":
        lower, upper = bd.bounding_curves(tp, s, grid)
        sys.stdout.write(emit_xy(("x", "t_lo_curve", "t_hi_curve"), (grid, lower, upper)))
    elif args.what == "family":
        tb = bd.t_range(tp, s)
        ts = np.linspace(tb.lo, tb.hi, args.curves)
        cols = [grid] + [bd.envelope_value(tp, s, t, grid) for t in ts]
        sys.stdout.write(emit_xy(["x"] + [f"t={t!r}" for t in ts], cols))
    elif args.what == "vertex":
        w = VertexWindow(*args.vertex_window) if args.vertex_window else VertexWindow()
        verdict = vertex_possible(tp, s, w)
        print(json.dumps({
            "possible": verdict.possible,
            "regions": [{"t": g.t, "r": g.r, "xv": g.x_v, "yv": g.y_v,
                         "quadrant": g.quadrant.value, "direction": g.direction(tp)}
                        for g in verdict.regions]}, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensbound", description=(
        "Screen Bayesian network parameters with evidence-dependent sensitivity bounds."))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, query=True):
        p.add_argument("--network", required=True, help="network document (JSON)")
        if query:
            p.add_argument("--target", help="output value, e.g. A=a")
            p.add_argument("--evidence", default="", help="comma separated Var=state")

    p = sub.add_parser("validate", help="parse and validate a network")
    common(p, query=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("infer", help="Pr(e) and the posterior of the target")
    common(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("sensfun", help="full sensitivity function of one parameter")
    common(p)
    p.add_argument("--parameter", help="Child=state|Parent=state,...")
    p.set_defaults(func=cmd_sensfun)

    for name, func, helptext in (("screen", cmd_screen, "bound every parameter"),
                                 ("verify", cmd_verify, "check bounds against full functions")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--vertex-window", nargs=2, type=float, metavar=("A", "B"))
        p.add_argument("--vicinity", type=float,
                       help="use [x0 - v, x0 + v] as vertex window (e.g. 0.1)")
        p.add_argument("--workers", type=int, default=1)
        if name == "screen":
            p.add_argument("--sv-threshold", type=float)
        p.set_defaults(func=func)

    p = sub.add_parser("plotdata", help="CSV data for bound curves and surfaces")
    p.add_argument("what", choices=("envelope", "surface", "family", "vertex"))
    p.add_argument("--network")
    p.add_argument("--target")
    p.add_argument("--evidence", default="")
    p.add_argument("--parameter")
    p.add_argument("--x0", type=float)
    p.add_argument("--p0", type=float)
    p.add_argument("--s-value", type=float)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--curves", type=int, default=5, help="number of functions for 'family'")
    p.add_argument("--general", action="store_true", help="surface: the s-free general bound")
    p.add_argument("--vertex-window", nargs=2, type=float, metavar=("A", "B"))
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZeroEvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_EVIDENCE
    except (NetworkError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
