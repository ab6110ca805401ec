"""
Bound surfaces over the unit window
===================================

For a fixed s, sweep (x0, p0) over a 99 x 99 grid and compare the
evidence-dependent bound with the general one. Saves a figure when
matplotlib is installed.
"""

import numpy as np

from sensbound import bound_surface_grid

for s in (-5.0, -1.0, -0.1, 1.05, 2.0, 4.0):
    axis, sv, general = bound_surface_grid(99, s)
    ratio = np.median(sv / general)
    print(f"s = {s:+5.2f}: max sv_bound {sv.max():8.2f}, "
          f"share of grid <= 1: {np.mean(sv <= 1):.2f}, median ratio to general {ratio:.3f}")

###############################################################################
# Near s = 0 the surface is lopsided: small x0 gives the larger bound.

axis, sv, _ = bound_surface_grid(99, -0.1)
for p0 in (0.1, 0.5, 0.9):
    j = int(round(p0 * 100)) - 1
    print(f"p0 = {p0}: x0 = 0.1 -> {sv[9, j]:.3f}, x0 = 0.9 -> {sv[89, j]:.3f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.contourf(axis, axis, np.minimum(sv, 3).T, levels=20)
    ax.set_xlabel("x0")
    ax.set_ylabel("p0")
    fig.colorbar(im, label="sv_bound (clipped at 3)")
    fig.savefig("bound_surface_s-0.1.png", dpi=120)
    print("wrote bound_surface_s-0.1.png")
