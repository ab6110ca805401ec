"""Discrete Bayesian network representation, loading, parameter addressing
and proportional co-variation of a single CPT row.

Tables are stored as numpy arrays of shape ``parent_cards + (child_card,)``.
Parent configurations follow document order with the last listed parent
cycling fastest, which is exactly C order for that shape.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

ROW_SUM_TOL = 1e-6


class NetworkError(ValueError):
    """Raised for malformed or invalid network documents."""


class NetworkParseError(NetworkError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"{msg}{where}")
        self.line = line
        self.col = col


class CovariationError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    states: tuple[str, ...]

    def index(self, state: str | int) -> int:
        if isinstance(state, (int, np.integer)):
            if not 0 <= state < len(self.states):
                raise NetworkError(f"state index {state} out of range for {self.name}")
            return int(state)
        try:
            return self.states.index(state)
        except ValueError:
            raise NetworkError(f"unknown state {state!r} for variable {self.name}") from None

    @property
    def card(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class CPT:
    child: str
    parents: tuple[str, ...]
    table: np.ndarray = field(compare=False)

    @property
    def rows(self) -> np.ndarray:
        """Table flattened to one row per parent configuration."""
        return self.table.reshape(-1, self.table.shape[-1])


@dataclass(frozen=True)
class ParameterRef:
    """Address of the parameter p(child=child_state | parents=parent_config)."""

    child: str
    child_state: int
    parent_config: tuple[int, ...] = ()


@dataclass(frozen=True)
class Query:
    target: str
    target_state: int
    evidence: tuple[tuple[str, int], ...] = ()

    @property
    def evidence_dict(self) -> dict[str, int]:
        return dict(self.evidence)


class NetworkDef:
    """Immutable discrete Bayesian network.

    Construct through :func:`load_network` or :meth:`from_dict`; the
    constructor validates every invariant and renormalizes rows exactly.
    """

    def __init__(self, variables: Sequence[Variable], cpts: Mapping[str, CPT]):
        self._variables = tuple(variables)
        self._by_name = {v.name: v for v in self._variables}
        if len(self._by_name) != len(self._variables):
            raise NetworkError("duplicate variable names")
        for v in self._variables:
            if len(v.states) < 2:
                raise NetworkError(f"variable {v.name} needs at least two states")
            if len(set(v.states)) != len(v.states):
                raise NetworkError(f"duplicate state names in variable {v.name}")
        missing = [v.name for v in self._variables if v.name not in cpts]
        if missing:
            raise NetworkError(f"no CPT for variable(s) {', '.join(missing)}")
        extra = [c for c in cpts if c not in self._by_name]
        if extra:
            raise NetworkError(f"CPT for unknown variable(s) {', '.join(extra)}")

        checked = {}
        for v in self._variables:
            checked[v.name] = self._check_cpt(cpts[v.name])
        self._cpts = checked
        self._order = self._topological_order()

    def _check_cpt(self, cpt: CPT) -> CPT:
        for p in cpt.parents:
            if p not in self._by_name:
                raise NetworkError(f"CPT {cpt.child}: unknown parent {p!r}")
            if p == cpt.child:
                raise NetworkError(f"CPT {cpt.child}: variable is its own parent")
        if len(set(cpt.parents)) != len(cpt.parents):
            raise NetworkError(f"CPT {cpt.child}: duplicate parents")
        shape = tuple(self._by_name[p].card for p in cpt.parents) + (self._by_name[cpt.child].card,)
        table = np.asarray(cpt.table, dtype=float)
        n_rows = math.prod(shape[:-1])
        if table.size != n_rows * shape[-1]:
            raise NetworkError(
                f"CPT {cpt.child}: expected {n_rows} rows of {shape[-1]} entries, "
                f"got table of size {table.size}"
            )
        rows = table.reshape(n_rows, shape[-1]).copy()
        bad = ~np.all(np.isfinite(rows) & (rows >= 0) & (rows <= 1), axis=1)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NetworkError(f"CPT {cpt.child}, row {i}: entries must lie in [0, 1]")
        totals = rows.sum(axis=1)
        off = np.abs(totals - 1.0) > ROW_SUM_TOL
        if off.any():
            i = int(np.flatnonzero(off)[0])
            raise NetworkError(f"CPT {cpt.child}, row {i}: sums to {totals[i]:.6g}, not 1")
        rows /= totals[:, None]
        table = rows.reshape(shape)
        table.setflags(write=False)
        return CPT(cpt.child, tuple(cpt.parents), table)

    def _topological_order(self) -> tuple[str, ...]:
        indeg = {v.name: len(self._cpts[v.name].parents) for v in self._variables}
        children: dict[str, list[str]] = {v.name: [] for v in self._variables}
        for v in self._variables:
            for p in self._cpts[v.name].parents:
                children[p].append(v.name)
        ready = [v.name for v in self._variables if indeg[v.name] == 0]
        order = []
        while ready:
            n = ready.pop(0)
            order.append(n)
            for c in children[n]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if len(order) != len(self._variables):
            cyclic = sorted(n for n, d in indeg.items() if d > 0)
            raise NetworkError(f"parent graph contains a cycle through {', '.join(cyclic)}")
        return tuple(order)

    @classmethod
    def from_dict(cls, doc: Mapping) -> "NetworkDef":
        try:
            variables = [Variable(str(v["name"]), tuple(str(s) for s in v["states"]))
                         for v in doc["variables"]]
            cpts = {}
            for c in doc["cpts"]:
                child = str(c["child"])
                if child in cpts:
                    raise NetworkError(f"duplicate CPT for {child}")
                cpts[child] = CPT(child, tuple(str(p) for p in c.get("parents", [])),
                                  np.asarray(c["table"], dtype=float))
        except (KeyError, TypeError) as exc:
            raise NetworkError(f"malformed network document: {exc!r}") from None
        except ValueError as exc:
            if isinstance(exc, NetworkError):
                raise
            raise NetworkError(f"malformed CPT table: {exc}") from None
        return cls(variables, cpts)

    def to_dict(self) -> dict:
        return {
            "variables": [{"name": v.name, "states": list(v.states)} for v in self._variables],
            "cpts": [
                {"child": v.name, "parents": list(self._cpts[v.name].parents),
                 "table": self._cpts[v.name].rows.tolist()}
                for v in self._variables
            ],
        }

    @property
    def variables(self) -> tuple[Variable, ...]:
        return self._variables

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self._variables)

    @property
    def topological_order(self) -> tuple[str, ...]:
        return self._order

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise NetworkError(f"unknown variable {name!r}") from None

    def cpt(self, name: str) -> CPT:
        self.variable(name)
        return self._cpts[name]

    def card(self, name: str) -> int:
        return self.variable(name).card

    def value(self, p: ParameterRef) -> float:
        """Original value x0 of a parameter."""
        self.check_parameter(p)
        return float(self._cpts[p.child].table[p.parent_config + (p.child_state,)])

    def check_parameter(self, p: ParameterRef) -> None:
        cpt = self.cpt(p.child)
        if len(p.parent_config) != len(cpt.parents):
            raise NetworkError(f"parameter for {p.child} needs {len(cpt.parents)} parent states")
        if not 0 <= p.child_state < self.card(p.child):
            raise NetworkError(f"child state {p.child_state} out of range for {p.child}")
        for par, idx in zip(cpt.parents, p.parent_config):
            if not 0 <= idx < self.card(par):
                raise NetworkError(f"state {idx} out of range for parent {par}")

    def with_cpt_table(self, child: str, table: np.ndarray) -> "NetworkDef":
        """Copy with one CPT replaced; only the new table is validated."""
        new = object.__new__(NetworkDef)
        new._variables = self._variables
        new._by_name = self._by_name
        new._order = self._order
        new._cpts = dict(self._cpts)
        old = self._cpts[child]
        new._cpts[child] = new._check_cpt(CPT(child, old.parents, np.asarray(table, dtype=float)))
        return new

    def __repr__(self) -> str:
        return f"NetworkDef({', '.join(self.names)})"


def load_network(text: str) -> NetworkDef:
    """Parse and validate a JSON network document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise NetworkParseError("top-level value must be an object", 1, 1)
    return NetworkDef.from_dict(doc)


def dump_network(net: NetworkDef) -> str:
    return json.dumps(net.to_dict(), indent=2)


def enumerate_parameters(net: NetworkDef) -> list[ParameterRef]:
    """All CPT cells, by variable order, then parent configuration, then child state."""
    out = []
    for v in net.variables:
        cpt = net.cpt(v.name)
        pcards = [net.card(p) for p in cpt.parents]
        for config in itertools.product(*(range(c) for c in pcards)):
            for b in range(v.card):
                out.append(ParameterRef(v.name, b, tuple(config)))
    return out


def covary(net: NetworkDef, p: ParameterRef, x: float) -> NetworkDef:
    """Return a copy of ``net`` with parameter ``p`` set to ``x``.

    The other entries of the addressed row are scaled by (1 - x)/(1 - x0).
    When x0 == 1 the remaining mass is spread uniformly instead.
    """
    if not 0.0 <= x <= 1.0:
        raise CovariationError(f"parameter value {x} outside [0, 1]")
    net.check_parameter(p)
    table = np.array(net.cpt(p.child).table)
    row = table[p.parent_config]
    x0 = row[p.child_state]
    if x == x0:
        return net
    others = np.arange(row.size) != p.child_state
    rest = row[others].sum()
    if x0 < 1.0 and rest > 0.0:
        # rest equals 1 - x0 up to rounding; dividing by it keeps the row exact
        row[others] = row[others] * ((1.0 - x) / rest)
    else:
        row[others] = (1.0 - x) / (row.size - 1)
    row[p.child_state] = x
    np.clip(row, 0.0, 1.0, out=row)
    table[p.parent_config] = row
    return net.with_cpt_table(p.child, table)


def is_degenerate_covariation(net: NetworkDef, p: ParameterRef) -> bool:
    return net.value(p) >= 1.0


# -- textual addresses -----------------------------------------------------

def format_parameter(net: NetworkDef, p: ParameterRef) -> str:
    cpt = net.cpt(p.child)
    child = f"{p.child}={net.variable(p.child).states[p.child_state]}"
    parents = ",".join(f"{par}={net.variable(par).states[i]}"
                       for par, i in zip(cpt.parents, p.parent_config))
    return f"{child}|{parents}"


def parse_assignments(net: NetworkDef, text: str) -> dict[str, int]:
    """Parse ``Var=state,Var=state``; an empty string gives no assignments."""
    out: dict[str, int] = {}
    text = text.strip()
    if not text:
        return out
    for item in text.split(","):
        name, sep, state = item.partition("=")
        name, state = name.strip(), state.strip()
        if not sep or not name or not state:
            raise NetworkError(f"bad assignment {item!r}; expected Var=state")
        if name in out:
            raise NetworkError(f"variable {name} assigned twice")
        out[name] = net.variable(name).index(state)
    return out


def parse_parameter(net: NetworkDef, text: str) -> ParameterRef:
    """Parse ``Child=state|Parent1=ps1,Parent2=ps2``."""
    head, sep, tail = text.partition("|")
    if not sep:
        raise NetworkError(f"bad parameter address {text!r}; expected Child=state|parents")
    child = parse_assignments(net, head)
    if len(child) != 1:
        raise NetworkError(f"bad parameter address {text!r}")
    (name, state), = child.items()
    given = parse_assignments(net, tail)
    cpt = net.cpt(name)
    if set(given) != set(cpt.parents):
        raise NetworkError(f"parameter {text!r} must assign exactly the parents "
                           f"({', '.join(cpt.parents) or 'none'}) of {name}")
    return ParameterRef(name, state, tuple(given[par] for par in cpt.parents))


def make_query(net: NetworkDef, target: str, evidence: Mapping[str, int] | str = "") -> Query:
    """Build a query from ``Var=state`` target text and evidence."""
    tgt = parse_assignments(net, target)
    if len(tgt) != 1:
        raise NetworkError(f"target must be a single Var=state, got {target!r}")
    (name, state), = tgt.items()
    ev = parse_assignments(net, evidence) if isinstance(evidence, str) else dict(evidence)
    for v, s in ev.items():
        net.variable(v).index(s)
    if name in ev:
        raise NetworkError(f"target variable {name} is also observed")
    return Query(name, state, tuple(sorted(ev.items())))


def evidence_items(evidence: Mapping[str, int] | Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    items = evidence.items() if isinstance(evidence, Mapping) else evidence
    return tuple(sorted(items))
