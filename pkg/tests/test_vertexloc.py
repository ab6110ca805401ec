import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sensbound.bounds import ThroughPoint, in_subspace, t_range
from sensbound.sensfun import HyperbolaForm, Quadrant, vertex
from sensbound.vertexloc import (VertexWindow, t_intervals_for_vertex, vertex_possible,
                                 vertex_regions, vertex_t_set)

EX = ThroughPoint(0.1, 0.6)
N1A = ThroughPoint(0.4, 0.75)
UNIT = VertexWindow(0.0, 1.0)


def test_t_intervals_example():
    t1, t2 = t_intervals_for_vertex(EX, -2, UNIT)
    assert t1 == pytest.approx((2.50, 4.89), abs=5e-3)
    assert t2 == pytest.approx((-3.69, -1.30), abs=5e-3)
    assert t1[0] == pytest.approx(0.6 + 4 / 2.1)
    assert t2[0] == pytest.approx(0.6 - 9 / 2.1)


def vertex_x_for_t(tp, s, t):
    return vertex(HyperbolaForm(s, t, (tp.x0 - s) * (tp.p0 - t))).x


def test_t_intervals_n1():
    t1, t2 = t_intervals_for_vertex(N1A, -2 / 7, UNIT)
    assert t1 == pytest.approx((0.869, 3.161), abs=1e-3)
    assert t2 == pytest.approx((-1.661, 0.631), abs=1e-3)
    # endpoints put the vertex exactly on the window edges
    for t in (*t1, *t2):
        assert min(abs(vertex_x_for_t(N1A, -2 / 7, t) - a) for a in (0.0, 1.0)) < 1e-12


def test_t_intervals_point_window():
    t1, t2 = t_intervals_for_vertex(EX, -2, VertexWindow(0.3, 0.3))
    assert t1[0] == t1[1] and t2[0] == t2[1]


def test_vertex_t_set_example():
    (iv,) = vertex_t_set(EX, -2, UNIT)
    assert iv == pytest.approx((-1.40, -1.30), abs=5e-3)


def test_vertex_t_set_n1():
    ivs = vertex_t_set(N1A, -2 / 7, UNIT)
    assert len(ivs) == 2
    assert ivs[0] == pytest.approx((0.5714, 0.631), abs=1e-3)
    assert ivs[1] == pytest.approx((0.869, 1.2857), abs=1e-3)


def test_vertex_t_set_empty_subwindow():
    assert vertex_t_set(EX, -2, VertexWindow(0.9, 1.0)) == []
    assert vertex_regions(EX, -2, VertexWindow(0.9, 1.0)) == []
    assert not vertex_possible(EX, -2, VertexWindow(0.9, 1.0)).possible


def test_vertex_regions_example():
    (g,) = vertex_regions(EX, -2, UNIT)
    assert g.r == pytest.approx((4.0, 4.2), abs=1e-9)
    assert g.x_v == pytest.approx((0.0, 0.0494), abs=1e-4)
    assert g.y_v[0] == pytest.approx(0.6494, abs=1e-4)
    assert g.y_v[1] == pytest.approx(0.6952, abs=1e-4)
    assert g.quadrant is Quadrant.I
    assert g.direction(EX) == "northwest"


def test_vertex_region_contains_true_n1_vertex():
    regions = vertex_regions(N1A, -2 / 7, UNIT)
    true = HyperbolaForm(-2 / 7, 9 / 7, -0.18 / 0.49)
    v = vertex(true)
    hit = [g for g in regions if g.t[0] <= true.t <= g.t[1] + 1e-12]
    assert len(hit) == 1
    g = hit[0]
    assert g.x_v[0] - 1e-12 <= v.x <= g.x_v[1] + 1e-12
    assert g.y_v[0] - 1e-12 <= v.y <= g.y_v[1] + 1e-12
    assert v.x == pytest.approx(0.3204, abs=1e-4)


def test_flat_functions_trimmed():
    # window collapsed onto the asymptote would only admit r = 0
    tp = ThroughPoint(0.5, 0.5)
    assert vertex_t_set(tp, -1e-13, VertexWindow(-1e-13, -1e-13)) == []


def test_verdict_text():
    verdict = vertex_possible(EX, -2)
    assert verdict.possible
    assert str(verdict).startswith("possible")
    assert str(vertex_possible(EX, -2, VertexWindow(0.9, 1.0))) == "impossible"


# -- properties ------------------------------------------------------------------

@st.composite
def family_member(draw):
    """(x0, p0, s, t) for an admissible hyperbola through (x0, p0)."""
    x0 = draw(st.floats(0.01, 0.99))
    p0 = draw(st.floats(0.01, 0.99))
    s = draw(st.one_of(st.floats(-20, -1e-3), st.floats(1.001, 21)))
    tb = t_range(ThroughPoint(x0, p0), s)
    t = tb.lo + draw(st.floats(0, 1)) * (tb.hi - tb.lo)
    return ThroughPoint(x0, p0), s, t


windows = st.tuples(st.floats(0, 1), st.floats(0, 1)).map(lambda ab: VertexWindow(min(ab), max(ab)))


@settings(max_examples=500, deadline=None)
@given(family_member(), windows)
def test_vertex_in_window_iff_t_in_set(member, w):
    tp, s, t = member
    r = (tp.x0 - s) * (tp.p0 - t)
    assume(abs(r) > 1e-9)
    h = HyperbolaForm(s, t, r)
    assert in_subspace(s, t, r)
    v = vertex(h)
    ivs = vertex_t_set(tp, s, w)
    scale = max(1.0, abs(t))
    in_set = any(lo - 1e-9 * scale <= t <= hi + 1e-9 * scale for lo, hi in ivs)
    edge = min(abs(v.x - w.alpha), abs(v.x - w.beta)) < 1e-7
    assume(not edge)
    assert in_set == (w.alpha <= v.x <= w.beta)
    if in_set:
        regions = vertex_regions(tp, s, w)
        assert any(g.x_v[0] - 1e-9 <= v.x <= g.x_v[1] + 1e-9
                   and g.y_v[0] - 1e-9 <= v.y <= g.y_v[1] + 1e-9 for g in regions)


@settings(max_examples=300, deadline=None)
@given(family_member(), windows, st.floats(0, 0.5))
def test_enlarging_window_never_shrinks(member, w, grow):
    tp, s, _ = member
    big = VertexWindow(max(0.0, w.alpha - grow), min(1.0, w.beta + grow))
    small_set = vertex_t_set(tp, s, w)
    big_set = vertex_t_set(tp, s, big)
    for lo, hi in small_set:
        assert any(blo - 1e-12 <= lo and hi <= bhi + 1e-12 for blo, bhi in big_set)


@settings(max_examples=300, deadline=None)
@given(family_member())
def test_regions_internally_consistent(member):
    tp, s, _ = member
    for g in vertex_regions(tp, s):
        for t in np.linspace(g.t[0], g.t[1], 9):
            r = (tp.x0 - s) * (tp.p0 - t)
            v = vertex(HyperbolaForm(s, t, r))
            tol = 1e-9 * max(1.0, abs(t), abs(r))
            assert g.r[0] - tol <= r <= g.r[1] + tol
            assert g.x_v[0] - tol <= v.x <= g.x_v[1] + tol
            assert g.y_v[0] - tol <= v.y <= g.y_v[1] + tol
            assert HyperbolaForm(s, t, r).quadrant is g.quadrant
