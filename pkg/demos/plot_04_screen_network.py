"""
Screening every parameter of a network
======================================

The bundled two-variable network has A -> B. With evidence B = b the
posterior of A = a is 0.75. Screening bounds each parameter's sensitivity
value, and verification then compares those bounds with the exact
sensitivity functions.
"""

from importlib.resources import files

from sensbound import emit, emit_verify, filter_rank, load_network, make_query, screen, verify

net = load_network(files("sensbound").joinpath("data/n1.json").read_text())
q = make_query(net, "A=a", "B=b")

rows = screen(net, q)
print(emit(rows, "table"))

###############################################################################
# Keep only rows that could matter: sensitivity value above 0.5, or a
# vertex that may fall inside the window.

print(emit(filter_rank(rows, sv_threshold=0.5), "table"))

###############################################################################
# Every bound holds for the true functions.

print(emit_verify(verify(net, q)))
