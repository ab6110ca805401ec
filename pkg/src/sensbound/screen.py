"""Parameter screening: s for every parameter, evidence-dependent bounds and
vertex analysis per parameter, ranking, reports, and a verification harness
that computes the full sensitivity functions and checks every bound.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bounds as bd
from .inference import (SensConstants, ZeroEvidenceError, linear_coeffs, marginal_prob,
                        posterior, s_value, sensitivity_constants)
from .model import NetworkDef, ParameterRef, Query, enumerate_parameters, format_parameter
from .sensfun import Constant, Hyperbolic, classify, derivative, evaluate, vertex
from .vertexloc import VertexWindow, vertex_possible

S_INSIDE_TOL = 1e-9
CHECK_TOL = 1e-9

KINDS = ("hyperbolic", "linear", "constant", "boundary", "degenerate-covariation")

CSV_COLUMNS = ("parameter", "x0", "p0", "kind", "s", "t_lo", "t_hi", "r_lo", "r_hi",
               "d_lo", "d_hi", "sv_bound", "sv_bound_general", "rule_le_one",
               "vertex_possible", "xv_lo", "xv_hi", "yv_lo", "yv_hi", "flags")


@dataclass
class ScreenRow:
    parameter: str
    x0: float
    p0: float
    kind: str
    s: float | None = None
    t_lo: float | None = None
    t_hi: float | None = None
    r_lo: float | None = None
    r_hi: float | None = None
    d_lo: float | None = None
    d_hi: float | None = None
    sv_bound: float | None = None
    sv_bound_general: float | None = None
    rule_le_one: bool | None = None
    vertex_possible: bool = False
    xv_lo: float | None = None
    xv_hi: float | None = None
    yv_lo: float | None = None
    yv_hi: float | None = None
    flags: tuple[str, ...] = ()
    regions: tuple = field(default=(), repr=False, compare=False)

    def as_record(self) -> dict:
        rec = {k: getattr(self, k) for k in CSV_COLUMNS}
        rec["flags"] = ";".join(self.flags)
        return rec


@dataclass
class ScreenOptions:
    """``vicinity`` replaces the fixed window by [x0 - vicinity, x0 + vicinity]."""

    window: VertexWindow = field(default_factory=VertexWindow)
    vicinity: float | None = None
    sort: bool = True
    workers: int = 1

    def window_for(self, x0: float) -> VertexWindow:
        if self.vicinity is not None:
            return VertexWindow.around(x0, self.vicinity)
        return self.window


def _s_inside(s: float) -> bool:
    return -S_INSIDE_TOL <= s <= 1 + S_INSIDE_TOL


def _general(x0: float, p0: float) -> float | None:
    return bd.general_sv_bound(bd.ThroughPoint(x0, p0)) if 0 < x0 < 1 else None


def screen_parameter(net: NetworkDef, q: Query, p: ParameterRef, p0: float,
                     options: ScreenOptions | None = None) -> ScreenRow:
    options = options or ScreenOptions()
    ev = q.evidence_dict
    x0 = net.value(p)
    name = format_parameter(net, p)
    den = linear_coeffs(net, p, ev)
    s = s_value(den)
    row = ScreenRow(name, x0, p0, "hyperbolic", s=s, sv_bound_general=_general(x0, p0))

    if x0 >= 1.0:
        row.kind = "degenerate-covariation"
        row.flags = ("x0-is-one", "uniform-covariation")
        return row

    if s is None:
        # Pr(e) does not depend on x: one extra evaluation gives the exact function
        num = linear_coeffs(net, p, {**ev, q.target: q.target_state}, role="joint-numerator")
        kind = classify(SensConstants(num.slope, num.intercept, 0.0, den.intercept))
        row.kind = "constant" if isinstance(kind, Constant) else "linear"
        row.d_lo = row.d_hi = 0.0 if isinstance(kind, Constant) else kind.slope
        row.sv_bound = abs(row.d_lo)
        row.flags = ("exact",)
        return row

    flags = []
    if _s_inside(s):
        flags.append("s-inside-unit-interval")
    if x0 <= 0.0:
        flags.append("x0-boundary")
    if p0 <= 0.0 or p0 >= 1.0:
        flags.append("p0-boundary")
    if flags:
        row.kind = "boundary"
        row.flags = tuple(flags)
        return row

    tp = bd.ThroughPoint(x0, p0)
    tb = bd.t_range(tp, s)
    row.t_lo, row.t_hi = tb.lo, tb.hi
    row.r_lo, row.r_hi = bd.r_range(tp, s)
    db = bd.deriv_bounds(tp, s)
    row.d_lo, row.d_hi = db.lo, db.hi
    row.sv_bound = db.sv_bound
    row.rule_le_one = bd.simple_sign_rules(tp, bd.sign_of(s))
    verdict = vertex_possible(tp, s, options.window_for(x0))
    row.vertex_possible = verdict.possible
    row.regions = verdict.regions
    if verdict.possible:
        row.xv_lo = min(g.x_v[0] for g in verdict.regions)
        row.xv_hi = max(g.x_v[1] for g in verdict.regions)
        row.yv_lo = min(g.y_v[0] for g in verdict.regions)
        row.yv_hi = max(g.y_v[1] for g in verdict.regions)
    row.flags = (f"binding-{tb.lo_surface}{tb.hi_surface}",)
    return row


def _sort_key(row: ScreenRow):
    sv = row.sv_bound
    return (sv is None, -(sv if sv is not None else 0.0), row.parameter)


def screen(net: NetworkDef, q: Query, options: ScreenOptions | None = None) -> list[ScreenRow]:
    """One row per network parameter, sorted by descending sv_bound."""
    options = options or ScreenOptions()
    if marginal_prob(net, q.evidence_dict) <= 0.0:
        raise ZeroEvidenceError("the evidence has probability zero")
    p0 = posterior(net, q)
    params = enumerate_parameters(net)
    if options.workers > 1:
        with ThreadPoolExecutor(options.workers) as pool:
            rows = list(pool.map(lambda p: screen_parameter(net, q, p, p0, options), params))
    else:
        rows = [screen_parameter(net, q, p, p0, options) for p in params]
    if options.sort:
        rows.sort(key=_sort_key)
    return rows


def filter_rank(rows: Iterable[ScreenRow], sv_threshold: float = 0.0,
                vertex_window: VertexWindow | None = None) -> list[ScreenRow]:
    """Keep rows with sv_bound >= threshold or a possible vertex in the window.

    Without ``vertex_window`` the verdict computed during screening is used.
    Rows without bounds (boundary, degenerate co-variation) are always kept,
    since nothing rules them out.
    """
    kept = []
    for r in rows:
        if r.sv_bound is None or r.sv_bound >= sv_threshold:
            kept.append(r)
            continue
        if r.kind != "hyperbolic":
            continue
        if vertex_window is None:
            possible = r.vertex_possible
        else:
            possible = vertex_possible(bd.ThroughPoint(r.x0, r.p0), r.s, vertex_window).possible
        if possible:
            kept.append(r)
    return sorted(kept, key=_sort_key)


# -- verification harness ----------------------------------------------------

@dataclass
class VerifyRow:
    parameter: str
    kind: str
    c: tuple[float, float, float, float]
    s: float | None = None
    t: float | None = None
    r: float | None = None
    sv_true: float | None = None
    vertex: tuple[float, float] | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    violations: dict[str, float] = field(default_factory=dict)
    gaps: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


@dataclass
class VerifySummary:
    rows: list[VerifyRow]

    @property
    def n_checks(self) -> int:
        return sum(len(r.checks) for r in self.rows)

    @property
    def n_failed(self) -> int:
        return sum(len(r.failed) for r in self.rows)

    @property
    def max_violation(self) -> float:
        return max((v for r in self.rows for v in r.violations.values()), default=0.0)

    @property
    def ok(self) -> bool:
        return self.n_failed == 0


def _excess(value: float, lo: float, hi: float) -> float:
    """How far ``value`` falls outside [lo, hi], relative to the magnitudes involved."""
    scale = max(1.0, abs(lo), abs(hi), abs(value))
    return max(lo - value, value - hi, 0.0) / scale


def _record(vr: VerifyRow, name: str, value: float, lo: float, hi: float, tol: float) -> None:
    ex = _excess(value, lo, hi)
    vr.checks[name] = ex <= tol
    vr.violations[name] = ex


def verify_row(net: NetworkDef, q: Query, p: ParameterRef, row: ScreenRow,
               options: ScreenOptions | None = None, tol: float = CHECK_TOL) -> VerifyRow:
    options = options or ScreenOptions()
    c = sensitivity_constants(net, p, q)
    kind = classify(c)
    x0 = row.x0
    vr = VerifyRow(row.parameter, row.kind, c.astuple())
    vr.sv_true = float(abs(derivative(kind, x0)))

    _record(vr, "through_point", float(c(x0)), row.p0, row.p0, tol)
    if row.sv_bound_general is not None:
        _record(vr, "general_bound", vr.sv_true, 0.0, row.sv_bound_general, tol)

    if row.kind in ("linear", "constant"):
        _record(vr, "exact_sv", vr.sv_true, row.sv_bound, row.sv_bound, tol)
        vr.checks["kind"] = row.kind == ("constant" if isinstance(kind, Constant) else "linear")
        return vr
    if row.kind != "hyperbolic":
        return vr

    s = row.s
    tp = bd.ThroughPoint(x0, row.p0)
    slope = float(derivative(kind, x0))
    _record(vr, "deriv_bounds", slope, row.d_lo, row.d_hi, tol)
    _record(vr, "sv_bound", vr.sv_true, 0.0, row.sv_bound, tol)
    vr.gaps["sv"] = row.sv_bound - vr.sv_true
    _record(vr, "dominance", row.sv_bound, 0.0, row.sv_bound_general, tol)
    if row.rule_le_one:
        _record(vr, "sign_rule", row.sv_bound, 0.0, 1.0, tol)

    # Envelope: the true function between the two extreme curves
    grid = np.linspace(0.0, 1.0, 21)
    lower, upper = bd.envelope_value(tp, s, row.t_lo, grid), bd.envelope_value(tp, s, row.t_hi, grid)
    vals = evaluate(kind, grid)
    env = max(_excess(float(v), min(a, b), max(a, b)) for v, a, b in zip(vals, lower, upper))
    vr.checks["envelope"] = env <= tol
    vr.violations["envelope"] = env

    if not isinstance(kind, Hyperbolic):
        # r = 0 numerically: flat function, t is not identifiable
        return vr

    h = kind.form
    vr.s, vr.t, vr.r = h.s, h.t, h.r
    _record(vr, "s_value", h.s, s, s, tol)
    _record(vr, "t_range", h.t, row.t_lo, row.t_hi, tol)
    _record(vr, "r_range", h.r, row.r_lo, row.r_hi, tol)
    vr.gaps["t"] = min(h.t - row.t_lo, row.t_hi - h.t)
    lo, hi, _, _ = bd.r_limits(h.s, h.t)
    _record(vr, "subspace", h.r, lo, hi, tol)

    v = vertex(h)
    vr.vertex = (v.x, v.y)
    w = options.window_for(x0)
    margin = tol * max(1.0, abs(v.x))
    in_window = w.alpha - margin <= v.x <= w.beta + margin
    clearly_out = v.x < w.alpha - margin or v.x > w.beta + margin
    near_edge = not clearly_out and not (w.alpha + margin <= v.x <= w.beta - margin)
    contained = any(
        _excess(v.x, *g.x_v) <= tol and _excess(v.y, *g.y_v) <= tol and _excess(h.t, *g.t) <= tol
        for g in row.regions
    )
    if near_edge:
        vr.checks["vertex"] = True
    else:
        vr.checks["vertex"] = (in_window and row.vertex_possible and contained) or (clearly_out and not contained)
    vr.violations["vertex"] = 0.0 if vr.checks["vertex"] else 1.0
    return vr


def verify(net: NetworkDef, q: Query, options: ScreenOptions | None = None,
           rows: Sequence[ScreenRow] | None = None, tol: float = CHECK_TOL) -> VerifySummary:
    """Check every screening bound against the full sensitivity function.

    ``rows`` may be supplied (e.g. altered) instead of running ``screen``.
    Failures are reported per row, never raised.
    """
    options = options or ScreenOptions()
    if rows is None:
        rows = screen(net, q, options)
    by_name = {format_parameter(net, p): p for p in enumerate_parameters(net)}
    out = [verify_row(net, q, by_name[r.parameter], r, options, tol) for r in rows]
    out.sort(key=lambda v: v.parameter)
    return VerifySummary(out)


# -- reports -------------------------------------------------------------------

def _fmt_csv(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _fmt_table(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{round(v, 4) + 0.0:.4f}"  # no "-0.0000"
    return str(v)


def emit(rows: Sequence[ScreenRow], fmt: str = "table") -> str:
    records = [r.as_record() for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in records:
            w.writerow([_fmt_csv(rec[k]) for k in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "table":
        return _table([[_fmt_table(rec[k]) for k in CSV_COLUMNS] for rec in records], CSV_COLUMNS)
    raise ValueError(f"unknown format {fmt!r}; choose table, csv or json")


def _table(cells: list[list[str]], header: Sequence[str]) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def emit_verify(summary: VerifySummary, fmt: str = "table") -> str:
    records = [
        {"parameter": r.parameter, "kind": r.kind,
         "c1": r.c[0], "c2": r.c[1], "c3": r.c[2], "c4": r.c[3],
         "s": r.s, "t": r.t, "r": r.r, "sv_true": r.sv_true,
         "xv": r.vertex[0] if r.vertex else None, "yv": r.vertex[1] if r.vertex else None,
         "passed": r.ok, "failed": ";".join(r.failed),
         "gap_t": r.gaps.get("t"), "gap_sv": r.gaps.get("sv")}
        for r in summary.rows
    ]
    cols = list(records[0]) if records else ["parameter"]
    tail = (f"checks={summary.n_checks} failed={summary.n_failed} "
            f"max_violation={summary.max_violation:.3g}\n")
    if fmt == "json":
        return json.dumps({"rows": records, "checks": summary.n_checks,
                           "failed": summary.n_failed,
                           "max_violation": summary.max_violation}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for rec in records:
            w.writerow([_fmt_csv(rec[k]) for k in cols])
        return buf.getvalue()
    if fmt == "table":
        return _table([[_fmt_table(rec[k]) for k in cols] for rec in records], cols) + tail
    raise ValueError(f"unknown format {fmt!r}; choose table, csv or json")


def emit_xy(header: Sequence[str], columns: Sequence[Sequence[float]]) -> str:
    """CSV of parallel numeric columns at full precision."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for vals in zip(*columns):
        w.writerow([repr(float(v)) for v in vals])
    return buf.getvalue()
