"""
Where can the vertex be?
========================

The vertex is the point where the slope of the function has magnitude 1.
Parameter values on the steep side of it are the interesting ones. The
question here is whether any admissible function puts its vertex inside
the unit window, and where.
"""

from sensbound import ThroughPoint, VertexWindow, t_intervals_for_vertex, vertex_possible

tp = ThroughPoint(0.1, 0.6)
s = -2.0

t1, t2 = t_intervals_for_vertex(tp, s)
print(f"vertex x in [0, 1] needs t in [{t1[0]:.2f}, {t1[1]:.2f}] or [{t2[0]:.2f}, {t2[1]:.2f}]")

verdict = vertex_possible(tp, s)
print(verdict)
for g in verdict.regions:
    print(f"  t  {g.t[0]:+.4f} .. {g.t[1]:+.4f}")
    print(f"  r  {g.r[0]:+.4f} .. {g.r[1]:+.4f}")
    print(f"  x_v {g.x_v[0]:.4f} .. {g.x_v[1]:.4f}, y_v {g.y_v[0]:.4f} .. {g.y_v[1]:.4f}")
    print(f"  quadrant {g.quadrant.value}, {g.direction(tp)} of (x0, p0)")

###############################################################################
# Restricting attention to a window close to x0 can rule the vertex out.

print(vertex_possible(tp, s, VertexWindow(0.5, 1.0)))
