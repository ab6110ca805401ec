"""Exact inference by variable elimination, and the linear coefficients of
Pr(e) and Pr(a, e) as functions of one co-varied parameter.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .model import NetworkDef, ParameterRef, Query, covary, enumerate_parameters

LINEARITY_TOL = 1e-9
LINEAR_EPS = 1e-12


class ZeroEvidenceError(ValueError):
    """Pr(e) = 0 for the entered evidence."""


class LinearityError(RuntimeError):
    pass


@dataclass(frozen=True)
class LinCoeffs:
    slope: float
    intercept: float
    role: str = "evidence-denominator"

    def __call__(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class SensConstants:
    c1: float
    c2: float
    c3: float
    c4: float

    def __call__(self, x: float) -> float:
        return (self.c1 * x + self.c2) / (self.c3 * x + self.c4)

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.c3, self.c4)


# -- plain inference ---------------------------------------------------------

def joint_prob(net: NetworkDef, assignment: Mapping[str, int]) -> float:
    """Chain-rule product of one CPT entry per variable."""
    missing = [n for n in net.names if n not in assignment]
    if missing:
        raise ValueError(f"assignment does not cover {', '.join(missing)}")
    prob = 1.0
    for name in net.names:
        cpt = net.cpt(name)
        idx = tuple(assignment[p] for p in cpt.parents) + (assignment[name],)
        prob *= cpt.table[idx]
    return float(prob)


def enumerate_marginal(net: NetworkDef, partial: Mapping[str, int]) -> float:
    """Sum of joint_prob over every completion of ``partial`` (exponential)."""
    free = [n for n in net.names if n not in partial]
    total = 0.0
    for states in itertools.product(*(range(net.card(n)) for n in free)):
        full = dict(partial)
        full.update(zip(free, states))
        total += joint_prob(net, full)
    return total


def _min_fill_order(scopes: list[tuple[str, ...]], variables: set[str]) -> list[str]:
    adj: dict[str, set[str]] = {v: set() for v in variables}
    for scope in scopes:
        for a in scope:
            adj[a].update(b for b in scope if b != a)
    order = []
    remaining = set(variables)
    while remaining:
        def fill(v):
            nb = list(adj[v] & remaining)
            return sum(1 for a, b in itertools.combinations(nb, 2) if b not in adj[a])
        v = min(sorted(remaining), key=fill)
        nb = adj[v] & remaining
        for a in nb:
            adj[a].update(nb - {a})
        order.append(v)
        remaining.remove(v)
    return order


def marginal_prob(net: NetworkDef, partial: Mapping[str, int]) -> float:
    """Pr(partial) by variable elimination with a greedy min-fill order."""
    factors: list[tuple[tuple[str, ...], np.ndarray]] = []
    for name in net.names:
        cpt = net.cpt(name)
        scope = cpt.parents + (name,)
        table = cpt.table
        index = tuple(partial[v] if v in partial else slice(None) for v in scope)
        table = table[index]
        scope = tuple(v for v in scope if v not in partial)
        factors.append((scope, np.asarray(table)))

    label = {n: i for i, n in enumerate(net.names)}
    free = {n for n in net.names if n not in partial}
    for var in _min_fill_order([s for s, _ in factors], free):
        touching = [f for f in factors if var in f[0]]
        factors = [f for f in factors if var not in f[0]]
        out_scope = tuple(sorted({v for s, _ in touching for v in s} - {var}, key=label.get))
        args = []
        for scope, table in touching:
            args += [table, [label[v] for v in scope]]
        factors.append((out_scope, np.einsum(*args, [label[v] for v in out_scope])))

    return float(math.prod(float(t) for _, t in factors))


def posterior(net: NetworkDef, q: Query) -> float:
    ev = q.evidence_dict
    pe = marginal_prob(net, ev)
    if pe <= 0.0:
        raise ZeroEvidenceError("the evidence has probability zero")
    return marginal_prob(net, {**ev, q.target: q.target_state}) / pe


# -- linear forms under co-variation -----------------------------------------

def linear_coeffs(net: NetworkDef, p: ParameterRef, event: Mapping[str, int],
                  role: str = "evidence-denominator") -> LinCoeffs:
    """Slope and intercept of Pr(event) as a function of parameter ``p``.

    Two evaluations fix the line; a third at x = 1/2 guards linearity.
    """
    at0 = marginal_prob(covary(net, p, 0.0), event)
    at1 = marginal_prob(covary(net, p, 1.0), event)
    mid = marginal_prob(covary(net, p, 0.5), event)
    slope = at1 - at0
    if abs(mid - (slope / 2 + at0)) > LINEARITY_TOL:
        raise LinearityError(f"Pr(event) is not linear in {p}: midpoint off by "
                             f"{mid - (slope / 2 + at0):.3g}")
    return LinCoeffs(slope, at0, role)


def sensitivity_constants(net: NetworkDef, p: ParameterRef, q: Query) -> SensConstants:
    ev = q.evidence_dict
    den = linear_coeffs(net, p, ev)
    x0 = net.value(p)
    if den(x0) <= 0.0:
        raise ZeroEvidenceError("the evidence has probability zero")
    num = linear_coeffs(net, p, {**ev, q.target: q.target_state}, role="joint-numerator")
    return SensConstants(num.slope, num.intercept, den.slope, den.intercept)


def is_linear(c3: float, c4: float, eps: float = LINEAR_EPS) -> bool:
    """|c3| negligible relative to the size of Pr(e)'s coefficients."""
    return abs(c3) < eps * (abs(c3) + abs(c4))


def s_value(lc: LinCoeffs, eps: float = LINEAR_EPS) -> float | None:
    """Vertical asymptote -c4/c3, or None when Pr(e) does not depend on x."""
    if is_linear(lc.slope, lc.intercept, eps):
        return None
    return -lc.intercept / lc.slope


def s_for_all_parameters(net: NetworkDef, evidence: Mapping[str, int],
                         params: list[ParameterRef] | None = None) -> dict[ParameterRef, float | None]:
    """s for every parameter under ``evidence``; None flags a linear function.

    The result does not depend on the output probability of interest.
    """
    if marginal_prob(net, evidence) <= 0.0:
        raise ZeroEvidenceError("the evidence has probability zero")
    if params is None:
        params = enumerate_parameters(net)
    return {p: s_value(linear_coeffs(net, p, evidence)) for p in params}
