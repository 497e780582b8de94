from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from classcover.geom import (
    OrientedRect,
    Point,
    Q,
    Rect,
    bbox,
    fmt,
    point_in_open_segment,
    point_on_segment,
    segment_rect_interval,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
pos = st.fractions(min_value=0, max_value=30, max_denominator=12)
points = st.builds(Point, rats, rats)


@st.composite
def rects(draw):
    a, b = draw(rats), draw(rats)
    c, d = draw(rats), draw(rats)
    return Rect(min(a, b), min(c, d), max(a, b), max(c, d))


@st.composite
def oriented(draw):
    dx = draw(st.integers(-6, 6))
    dy = draw(st.integers(-6, 6))
    assume((dx, dy) != (0, 0))
    return OrientedRect(draw(points), dx, dy, draw(pos), draw(pos))


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/6") == Fraction(1, 2)
    assert fmt(Fraction(-4, 6)) == "-2/3" and fmt(Fraction(7)) == "7"


def test_rect_closed_and_degenerate():
    r = Rect(0, 0, 0, 5)
    assert r.contains(Point(0, 5)) and not r.contains(Point(Fraction(1, 10**9), 2))
    with pytest.raises(ValueError):
        Rect(1, 0, 0, 0)


def test_bbox_empty():
    with pytest.raises(ValueError):
        bbox([])


@given(rects(), points, points)
def test_axis_convexity(r, p, q):
    if r.contains(p) and r.contains(q):
        assert r.contains(Point((p.x + q.x) / 2, (p.y + q.y) / 2))


@given(oriented(), points, points, st.fractions(0, 1, max_denominator=9))
def test_oriented_convexity(r, p, q, t):
    if r.contains(p) and r.contains(q):
        assert r.contains(Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))


@given(oriented(), points, st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8))
def test_oriented_scaling_invariance(r, p, k):
    scaled = OrientedRect(Point(r.center.x * k, r.center.y * k), r.dx, r.dy, r.u * k, r.v * k)
    assert r.contains(p) == scaled.contains(Point(p.x * k, p.y * k))


@given(oriented())
def test_oriented_corners_inside(r):
    for c in r.corners():
        assert r.contains(c)


@given(rects(), points)
def test_axis_and_oriented_agree(r, p):
    assert r.contains(p) == OrientedRect.from_rect(r).contains(p)


def _mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


@given(oriented(), points)
def test_oriented_matches_high_precision_float(r, p):
    # independent formulation: unit direction, plain half-lengths, 60 digits
    with mpmath.workdps(60):
        norm = mpmath.sqrt(_mp(r.dx) ** 2 + _mp(r.dy) ** 2)
        ux, uy = _mp(r.dx) / norm, _mp(r.dy) / norm
        wx, wy = _mp(p.x) - _mp(r.center.x), _mp(p.y) - _mp(r.center.y)
        s = wx * ux + wy * uy
        t = -wx * uy + wy * ux
        hu, hv = _mp(r.u) * norm, _mp(r.v) * norm
        margin = min(abs(abs(s) - hu), abs(abs(t) - hv))
        assume(margin > mpmath.mpf(10) ** -40)  # boundary ties are the exact code's job
        inside = abs(s) <= hu and abs(t) <= hv
    assert r.contains(p) == inside


def test_point_on_segment():
    a, b = Point(0, 0), Point(4, 2)
    assert point_on_segment(Point(2, 1), a, b)
    assert point_on_segment(a, a, b) and not point_in_open_segment(a, a, b)
    assert not point_on_segment(Point(6, 3), a, b)
    assert not point_on_segment(Point(2, Fraction(3, 2)), a, b)
    assert point_on_segment(a, a, a) and not point_on_segment(b, a, a)


@given(points, points, rects())
def test_segment_rect_interval(a, b, r):
    span = segment_rect_interval(a, b, r)
    at = lambda t: Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    samples = [Fraction(k, 16) for k in range(17)]
    if span is None:
        assert not any(r.contains(at(t)) for t in samples)
        return
    t0, t1 = span
    assert 0 <= t0 <= t1 <= 1
    assert r.contains(at(t0)) and r.contains(at(t1)) and r.contains(at((t0 + t1) / 2))
    for t in samples:
        if r.contains(at(t)):
            assert t0 <= t <= t1 or a == b
