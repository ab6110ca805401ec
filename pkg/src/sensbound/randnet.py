"""Random small networks and queries for property tests and demos."""
from __future__ import annotations

import numpy as np

from .model import CPT, NetworkDef, Query, Variable


def random_network(rng: np.random.Generator, n_vars: int = 5, states=(2, 3),
                   max_parents: int = 2, concentration: float = 1.0) -> NetworkDef:
    """DAG over X0..X{n-1} (parents drawn from earlier variables), Dirichlet CPT rows."""
    variables = []
    cpts = {}
    for i in range(n_vars):
        card = int(rng.choice(states))
        variables.append(Variable(f"X{i}", tuple(f"s{k}" for k in range(card))))
    for i, v in enumerate(variables):
        k = int(rng.integers(0, min(i, max_parents) + 1))
        parents = tuple(sorted(rng.choice(i, size=k, replace=False).tolist())) if k else ()
        pnames = tuple(variables[j].name for j in parents)
        shape = tuple(variables[j].card for j in parents) + (v.card,)
        rows = rng.dirichlet(np.full(v.card, concentration), size=int(np.prod(shape[:-1])))
        cpts[v.name] = CPT(v.name, pnames, rows.reshape(shape))
    return NetworkDef(variables, cpts)


def random_query(rng: np.random.Generator, net: NetworkDef, max_evidence: int = 2) -> Query:
    names = list(net.names)
    target = names[int(rng.integers(len(names)))]
    rest = [n for n in names if n != target]
    k = int(rng.integers(0, min(max_evidence, len(rest)) + 1))
    observed = rng.choice(len(rest), size=k, replace=False) if k else []
    evidence = tuple(sorted((rest[j], int(rng.integers(net.card(rest[j])))) for j in observed))
    return Query(target, int(rng.integers(net.card(target))), evidence)
