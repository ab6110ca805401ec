"""Sensitivity functions f(x) = (c1 x + c2) / (c3 x + c4) in hyperbola form
r / (x - s) + t, with classification, derivative, sensitivity value and vertex.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .inference import LINEAR_EPS, SensConstants, is_linear

SCALE_EPS = 1e-12


class Quadrant(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class DegenerateFunctionError(ValueError):
    pass


def quadrant_of(s: float, r: float) -> Quadrant:
    """Branch position relative to the asymptotes for a window-resident branch."""
    if s < 0:
        return Quadrant.I if r > 0 else Quadrant.IV
    return Quadrant.III if r > 0 else Quadrant.II


@dataclass(frozen=True)
class HyperbolaForm:
    s: float
    t: float
    r: float

    @property
    def quadrant(self) -> Quadrant:
        return quadrant_of(self.s, self.r)

    def __call__(self, x):
        return self.r / (np.asarray(x, dtype=float) - self.s) + self.t


@dataclass(frozen=True)
class Hyperbolic:
    form: HyperbolaForm

    @property
    def quadrant(self) -> Quadrant:
        return self.form.quadrant


@dataclass(frozen=True)
class Linear:
    slope: float
    intercept: float


@dataclass(frozen=True)
class Constant:
    value: float


FunctionKind = Union[Hyperbolic, Linear, Constant]


@dataclass(frozen=True)
class Vertex:
    x: float
    y: float


def classify(c: SensConstants, eps: float = LINEAR_EPS) -> FunctionKind:
    """Classify the four constants as a hyperbola or one of its degenerate forms.

    Both degeneracy tests are relative to the magnitude of the constants, so
    rounding noise in differences of probabilities does not leak through.
    """
    c1, c2, c3, c4 = c.astuple()
    if abs(c3) < eps and abs(c4) < eps:
        raise DegenerateFunctionError("denominator vanishes identically")
    det = c2 * c3 - c1 * c4
    if abs(det) <= SCALE_EPS * (abs(c1) + abs(c2)) * (abs(c3) + abs(c4)):
        # numerator proportional to denominator
        x_ref = 0.5
        return Constant(float(c(x_ref)))
    if is_linear(c3, c4, eps):
        return Linear(c1 / c4, c2 / c4)
    s = -c4 / c3
    t = c1 / c3
    r = det / c3 ** 2
    if abs(r) < SCALE_EPS:
        return Constant(t)
    return Hyperbolic(HyperbolaForm(s, t, r))


def evaluate(k: FunctionKind, x):
    """Function value; not clamped to [0, 1]."""
    if isinstance(k, Hyperbolic):
        return k.form(x)
    if isinstance(k, Linear):
        return k.slope * np.asarray(x, dtype=float) + k.intercept
    return np.full_like(np.asarray(x, dtype=float), k.value)


def derivative(k: FunctionKind, x):
    if isinstance(k, Hyperbolic):
        h = k.form
        return -h.r / (np.asarray(x, dtype=float) - h.s) ** 2
    if isinstance(k, Linear):
        return np.full_like(np.asarray(x, dtype=float), k.slope)
    return np.zeros_like(np.asarray(x, dtype=float))


def sensitivity_value(k: FunctionKind, x0: float) -> float:
    return float(abs(derivative(k, x0)))


def vertex(h: HyperbolaForm) -> Vertex:
    """Point of the window-side branch where |f'| = 1."""
    root = math.sqrt(abs(h.r))
    q = h.quadrant
    if q is Quadrant.I:
        return Vertex(h.s + root, h.t + root)
    if q is Quadrant.III:
        return Vertex(h.s - root, h.t - root)
    if q is Quadrant.II:
        return Vertex(h.s - root, h.t + root)
    return Vertex(h.s + root, h.t - root)


def hyperbola_through(x0: float, p0: float, s: float, t: float) -> HyperbolaForm:
    """The rectangular hyperbola with asymptotes s, t passing through (x0, p0)."""
    return HyperbolaForm(s, t, (x0 - s) * (p0 - t))


def sample(k: FunctionKind, grid) -> np.ndarray:
    """Function values over ``grid`` (for plotting families of functions)."""
    return np.asarray(evaluate(k, np.asarray(grid, dtype=float)), dtype=float)
