"""Where can the vertex of a sensitivity function through (x0, p0) with
asymptote s lie?

Solving x_v = s +/- sqrt(|r|) for t, with r = (x0 - s)(p0 - t), gives two
t-intervals per query window [alpha, beta]: ``t1`` for branches in quadrants
II/IV (r < 0) and ``t2`` for I/III (r > 0). Intersecting them with the
feasible t-range yields the t-values whose function has its vertex in the
window; each piece maps back to ranges for r, x_v and y_v.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import ThroughPoint, surface_r, t_range
from .sensfun import Quadrant, quadrant_of

R_EPS = 1e-12


@dataclass(frozen=True)
class VertexWindow:
    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha > self.beta:
            raise ValueError(f"empty vertex window [{self.alpha}, {self.beta}]")

    @classmethod
    def around(cls, x0: float, radius: float = 0.1) -> "VertexWindow":
        """[x0 - radius, x0 + radius] clipped to the unit interval."""
        return cls(max(0.0, x0 - radius), min(1.0, x0 + radius))


Interval = tuple[float, float]


@dataclass(frozen=True)
class VertexRegion:
    t: Interval
    r: Interval
    x_v: Interval
    y_v: Interval
    quadrant: Quadrant

    def direction(self, tp: ThroughPoint) -> str:
        """Compass position of the region relative to (x0, p0), e.g. 'northwest'."""
        ns = "north" if self.y_v[0] > tp.p0 else "south" if self.y_v[1] < tp.p0 else ""
        ew = "east" if self.x_v[0] > tp.x0 else "west" if self.x_v[1] < tp.x0 else ""
        return (ns + ew) or "around"


@dataclass(frozen=True)
class VertexVerdict:
    possible: bool
    regions: tuple[VertexRegion, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        if not self.possible:
            return "impossible"
        return "possible (" + ", ".join(f"x_v in [{g.x_v[0]:.4f}, {g.x_v[1]:.4f}], "
                                        f"y_v in [{g.y_v[0]:.4f}, {g.y_v[1]:.4f}]"
                                        for g in self.regions) + ")"


def t_intervals_for_vertex(tp: ThroughPoint, s: float,
                           w: VertexWindow | None = None) -> tuple[Interval, Interval]:
    w = w or VertexWindow()
    x0, p0 = tp.x0, tp.p0
    da = (s - w.alpha) ** 2 / (x0 - s)
    db = (s - w.beta) ** 2 / (x0 - s)
    t1 = tuple(sorted((p0 + da, p0 + db)))
    t2 = tuple(sorted((p0 - db, p0 - da)))
    return t1, t2


def _intersect(a: Interval, b: Interval) -> Interval | None:
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    return (lo, hi) if lo <= hi else None


def _trim_flat(tp: ThroughPoint, s: float, iv: Interval) -> Interval | None:
    """Cut away the t-values around p0 where |r| < R_EPS."""
    half = R_EPS / abs(tp.x0 - s)
    lo, hi = iv
    if lo >= tp.p0 + half or hi <= tp.p0 - half:
        return iv
    if lo < tp.p0 - half:
        return (lo, tp.p0 - half)
    if hi > tp.p0 + half:
        return (tp.p0 + half, hi)
    return None


def vertex_t_set(tp: ThroughPoint, s: float, w: VertexWindow | None = None) -> list[Interval]:
    """Sorted disjoint t-intervals whose function has x_v in the window."""
    w = w or VertexWindow()
    tb = t_range(tp, s)
    out = []
    for iv in t_intervals_for_vertex(tp, s, w):
        piece = _intersect(iv, (tb.lo, tb.hi))
        if piece is not None:
            piece = _trim_flat(tp, s, piece)
        if piece is not None:
            out.append(piece)
    return sorted(out)


def _vertex_y_range(tp: ThroughPoint, s: float, sign: float, xv: Interval) -> Interval:
    # y_v = p0 + sign*(x - s)(x - x0)/(x0 - s) on the vertex locus: a parabola in x_v
    def y(x):
        return tp.p0 + sign * (x - s) * (x - tp.x0) / (tp.x0 - s)
    candidates = [y(xv[0]), y(xv[1])]
    mid = (s + tp.x0) / 2
    if xv[0] < mid < xv[1]:
        candidates.append(y(mid))
    return min(candidates), max(candidates)


def vertex_regions(tp: ThroughPoint, s: float, w: VertexWindow | None = None) -> list[VertexRegion]:
    regions = []
    for lo, hi in vertex_t_set(tp, s, w):
        r_ends = sorted(surface_r("E", s, t, tp.x0, tp.p0) for t in (lo, hi))
        r_mid = surface_r("E", s, (lo + hi) / 2, tp.x0, tp.p0)
        quad = quadrant_of(s, r_mid)
        x_sign = 1.0 if s < 0 else -1.0
        x_ends = sorted(s + x_sign * math.sqrt(abs(r)) for r in r_ends)
        # r < 0 (II/IV) sits on the t1 branch of the vertex locus
        y_sign = 1.0 if r_mid < 0 else -1.0
        y_ends = _vertex_y_range(tp, s, y_sign, (x_ends[0], x_ends[1]))
        regions.append(VertexRegion((lo, hi), (r_ends[0], r_ends[1]),
                                    (x_ends[0], x_ends[1]), y_ends, quad))
    return regions


def vertex_possible(tp: ThroughPoint, s: float, w: VertexWindow | None = None) -> VertexVerdict:
    regions = vertex_regions(tp, s, w)
    return VertexVerdict(bool(regions), tuple(regions))
