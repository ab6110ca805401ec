"""
Bounding an unknown sensitivity function from one observation
=============================================================

Only the original parameter value x0 = 0.1, the posterior p0 = 0.6 and the
asymptote s = -2 are known. The horizontal asymptote t and the scale r are
not. Because the function has to stay inside the unit window, t and r can
still only move within a limited range.
"""

import numpy as np

from sensbound import ThroughPoint, r_range, t_range, thresholds

tp = ThroughPoint(0.1, 0.6)
s = -2.0

th = thresholds(tp, s)
print(f"binding-surface switch points: p_AB = {th.p_ab:.4f}, p_CD = {th.p_cd:.4f}")

tb = t_range(tp, s)
print(f"t in [{tb.lo:.4f}, {tb.hi:.4f}]  (ends set by surfaces {tb.lo_surface} and {tb.hi_surface})")

lo, hi = r_range(tp, s)
print(f"r in [{lo:.4f}, {hi:.4f}]")

###############################################################################
# Every admissible function is f_t(x) = (x0 - s)(p0 - t)/(x - s) + t. Sample
# a few members of the family and confirm each one stays in the window.

xs = np.linspace(0, 1, 11)
for t in np.linspace(tb.lo, tb.hi, 5):
    f = (tp.x0 - s) * (tp.p0 - t) / (xs - s) + t
    print(f"t = {t:+.3f}: min {f.min():.3f}, max {f.max():.3f}, f(x0) = {np.interp(tp.x0, xs, f):.3f}")
