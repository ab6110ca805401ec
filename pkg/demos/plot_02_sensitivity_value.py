"""
How large can the sensitivity value be?
=======================================

At x0 = 0.1, p0 = 0.6 the general bound allows a slope of up to 2.67.
Once the asymptote is known to be s = -2, that drops to 0.95, so the
parameter cannot be highly sensitive.
"""

from sensbound import ThroughPoint, deriv_bounds, general_sv_bound, simple_sign_rules

tp = ThroughPoint(0.1, 0.6)

db = deriv_bounds(tp, -2.0)
print(f"f'(x0) in [{db.lo:.4f}, {db.hi:.4f}]")
print(f"evidence-dependent bound: {db.sv_bound:.4f}")
print(f"general bound:            {general_sv_bound(tp):.4f}")

###############################################################################
# The position of (x0, p0) alone can already settle the question for some
# points. Here it cannot, which is why the bound above is informative.

print("sign rules grant sv <= 1:", simple_sign_rules(tp, "negative"))
for s in (-10.0, -2.0, -0.5, -0.1, 1.1, 3.0):
    print(f"s = {s:+5.1f}: sv_bound = {deriv_bounds(tp, s).sv_bound:.4f}")
