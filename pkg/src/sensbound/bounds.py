"""Evidence-dependent bounds on sensitivity functions through a point (x0, p0)
with a known vertical asymptote s.

All hyperbolas through (x0, p0) with asymptote s form a one-parameter family
in t, with r = (x0 - s)(p0 - t). Requiring the branch to stay inside the unit
window cuts t down to an interval whose ends lie on the boundary surfaces
A-D; everything else here follows from that interval.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SURFACES = ("A", "B", "C", "D", "E")


class BoundaryPointError(ValueError):
    """x0 at 0 or 1, where the bound formulas divide by zero."""


@dataclass(frozen=True)
class ThroughPoint:
    x0: float
    p0: float

    def __post_init__(self):
        if not (0.0 <= self.x0 <= 1.0 and 0.0 <= self.p0 <= 1.0):
            raise ValueError(f"({self.x0}, {self.p0}) is outside the unit window")

    @property
    def interior(self) -> bool:
        return 0.0 < self.x0 < 1.0


@dataclass(frozen=True)
class Thresholds:
    p_ab: float
    p_cd: float


@dataclass(frozen=True)
class TBounds:
    lo: float
    hi: float
    lo_surface: str
    hi_surface: str


@dataclass(frozen=True)
class DerivBounds:
    lo: float
    hi: float

    @property
    def sv_bound(self) -> float:
        return max(abs(self.lo), abs(self.hi))


def _check_s(s: float) -> None:
    if 0.0 <= s <= 1.0:
        raise ValueError(f"asymptote s={s} lies inside the unit interval")


def _check_x0(tp: ThroughPoint) -> None:
    if not tp.interior:
        raise BoundaryPointError(f"x0={tp.x0} must lie strictly between 0 and 1")


def surface_r(surface: str, s: float, t: float, x0: float | None = None,
              p0: float | None = None) -> float:
    """r on one of the boundary surfaces A-D, or on the through-point surface E."""
    if surface == "A":
        return s * (t - 1)
    if surface == "B":
        return t * (s - 1)
    if surface == "C":
        return s * t
    if surface == "D":
        return (t - 1) * (s - 1)
    if surface == "E":
        if x0 is None or p0 is None:
            raise ValueError("surface E needs x0 and p0")
        return (x0 - s) * (p0 - t)
    raise ValueError(f"unknown surface {surface!r}")


def r_limits(s: float, t: float) -> tuple[float, float, str, str]:
    """Admissible r-interval for fixed (s, t) and the surfaces that bind it.

    Follows from requiring f(0) and f(1) in [0, 1]; for s < 0 the f(0)
    conditions give [C, A] and f(1) gives [B, D], for s > 1 they give [A, C]
    and [D, B].
    """
    _check_s(s)
    a, b, c, d = (surface_r(k, s, t) for k in "ABCD")
    if s < 0:
        lo, lo_s = (c, "C") if c >= b else (b, "B")
        hi, hi_s = (a, "A") if a <= d else (d, "D")
    else:
        lo, lo_s = (a, "A") if a >= d else (d, "D")
        hi, hi_s = (c, "C") if c <= b else (b, "B")
    return lo, hi, lo_s, hi_s


def in_subspace(s: float, t: float, r: float, tol: float = 1e-9) -> bool:
    """Does the hyperbola (s, t, r) map [0, 1] into [0, 1]?

    ``tol`` is relative to the magnitude of the bounding values. r = 0 is
    accepted (the constant function t) although it is not hyperbolic.
    """
    lo, hi, _, _ = r_limits(s, t)
    slack = tol * max(1.0, abs(lo), abs(hi))
    return lo - slack <= r <= hi + slack


def intersection_lines(tp: ThroughPoint, s: float) -> dict[str, float]:
    """t-values at which surface E meets each of the surfaces A-D."""
    _check_x0(tp)
    _check_s(s)
    x0, p0 = tp.x0, tp.p0
    return {
        "A": p0 + (1 - p0) * s / x0,
        "B": p0 * (x0 - s) / (x0 - 1),
        "C": p0 * (1 - s / x0),
        "D": (s * (1 - p0) + p0 * x0 - 1) / (x0 - 1),
    }


def thresholds(tp: ThroughPoint, s: float) -> Thresholds:
    _check_s(s)
    x0 = tp.x0
    return Thresholds(s * (x0 - 1) / (x0 - s), (1 - s) * x0 / (x0 - s))


def t_range(tp: ThroughPoint, s: float) -> TBounds:
    """Feasible interval for the horizontal asymptote t.

    Row selection: p0 against p_AB chooses between the A and B lines, p0
    against p_CD between C and D. For s < 0 the A/B line is the lower end,
    for s > 1 it is the upper end. At a threshold the two candidates agree.
    """
    lines = intersection_lines(tp, s)
    th = thresholds(tp, s)
    p0 = tp.p0
    ab = "A" if p0 >= th.p_ab else "B"
    cd = "C" if p0 <= th.p_cd else "D"
    if s < 0:
        return TBounds(lines[ab], lines[cd], ab, cd)
    return TBounds(lines[cd], lines[ab], cd, ab)


def r_range(tp: ThroughPoint, s: float) -> tuple[float, float]:
    tb = t_range(tp, s)
    ends = sorted(surface_r("E", s, t, tp.x0, tp.p0) for t in (tb.lo, tb.hi))
    return ends[0], ends[1]


def slope_at_x0(tp: ThroughPoint, s: float, t) -> float:
    """f'(x0) of the hyperbola through (x0, p0) with asymptotes s and t."""
    return (np.asarray(t, dtype=float) - tp.p0) / (tp.x0 - s)


def deriv_bounds(tp: ThroughPoint, s: float) -> DerivBounds:
    tb = t_range(tp, s)
    lo, hi = sorted(float(slope_at_x0(tp, s, t)) for t in (tb.lo, tb.hi))
    return DerivBounds(lo, hi)


def general_sv_bound(tp: ThroughPoint) -> float:
    """Bound on the sensitivity value valid for every s."""
    _check_x0(tp)
    return tp.p0 * (1 - tp.p0) / (tp.x0 * (1 - tp.x0))


def simple_sign_rules(tp: ThroughPoint, s_sign: str) -> bool:
    """True when the position of (x0, p0) alone guarantees a sensitivity value <= 1."""
    x0, p0 = tp.x0, tp.p0
    if s_sign == "negative":
        return x0 >= p0 or x0 + p0 >= 1
    if s_sign == "positive":
        return x0 <= p0 or x0 + p0 <= 1
    raise ValueError(f"s_sign must be 'negative' or 'positive', not {s_sign!r}")


def sign_of(s: float) -> str:
    return "negative" if s < 0 else "positive"


def envelope_value(tp: ThroughPoint, s: float, t, x):
    """f_t(x) = (x0 - s)(p0 - t)/(x - s) + t, broadcasting over t and x."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    return (tp.x0 - s) * (tp.p0 - t) / (x - s) + t


def bounding_curves(tp: ThroughPoint, s: float, grid) -> tuple[np.ndarray, np.ndarray]:
    """The two extreme functions (t = t_lo and t = t_hi) sampled on ``grid``.

    f_t(x) is affine in t, so every admissible function lies between them.
    """
    tb = t_range(tp, s)
    return envelope_value(tp, s, tb.lo, grid), envelope_value(tp, s, tb.hi, grid)


def grid_points(resolution: int) -> np.ndarray:
    """Interior grid k/(n+1), k = 1..n; n = 99 gives 0.01 .. 0.99."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    return np.arange(1, resolution + 1) / (resolution + 1)


def bound_surface_grid(resolution: int, s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evidence-dependent and general sensitivity-value bounds over (x0, p0).

    Returns ``(axis, sv, general)`` where ``sv[i, j]`` and ``general[i, j]``
    belong to ``x0 = axis[i]``, ``p0 = axis[j]``.
    """
    _check_s(s)
    axis = grid_points(resolution)
    x0 = axis[:, None]
    p0 = axis[None, :]
    # vectorised t_range; same row selection as the scalar version
    t_a = p0 + (1 - p0) * s / x0
    t_b = p0 * (x0 - s) / (x0 - 1)
    t_c = p0 * (1 - s / x0)
    t_d = (s * (1 - p0) + p0 * x0 - 1) / (x0 - 1)
    p_ab = s * (x0 - 1) / (x0 - s)
    p_cd = (1 - s) * x0 / (x0 - s)
    t_ab = np.where(p0 >= p_ab, t_a, t_b)
    t_cd = np.where(p0 <= p_cd, t_c, t_d)
    d1 = (t_ab - p0) / (x0 - s)
    d2 = (t_cd - p0) / (x0 - s)
    sv = np.maximum(np.abs(d1), np.abs(d2))
    general = p0 * (1 - p0) / (x0 * (1 - x0))
    return axis, sv, general


def grid_to_csv_rows(axis: np.ndarray, values: np.ndarray) -> list[tuple[float, float, float]]:
    return [(float(axis[i]), float(axis[j]), float(values[i, j]))
            for i in range(len(axis)) for j in range(len(axis))]
