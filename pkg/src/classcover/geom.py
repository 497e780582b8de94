"""Exact rational geometry: points, closed rectangles and their predicates.

Everything is computed with :class:`fractions.Fraction`; there is no
floating point anywhere in the predicates.  Rectangles are closed and may be
degenerate (a segment or a single point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


def Q(value) -> Fraction:
    """Coerce to Fraction; accepts ints, Fractions and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or a 'p/q' string")
    return Fraction(value)


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Q(self.x))
        object.__setattr__(self, "y", Q(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def swapped(self) -> "Point":
        return Point(self.y, self.x)

    def __str__(self) -> str:
        return f"({fmt(self.x)}, {fmt(self.y)})"


def dot(a: Point, b: Point) -> Fraction:
    return a.x * b.x + a.y * b.y


def cross(a: Point, b: Point) -> Fraction:
    return a.x * b.y - a.y * b.x


@dataclass(frozen=True)
class Rect:
    x_lo: Fraction
    y_lo: Fraction
    x_hi: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x_lo", "y_lo", "x_hi", "y_hi"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError(f"inverted rectangle {self}")

    def contains(self, p: Point) -> bool:
        return self.x_lo <= p.x <= self.x_hi and self.y_lo <= p.y <= self.y_hi

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x_lo <= other.x_lo
            and other.x_hi <= self.x_hi
            and self.y_lo <= other.y_lo
            and other.y_hi <= self.y_hi
        )

    def swapped(self) -> "Rect":
        return Rect(self.y_lo, self.x_lo, self.y_hi, self.x_hi)


@dataclass(frozen=True)
class OrientedRect:
    """Rectangle {center + s·d + t·d⊥ : |s| ≤ u, |t| ≤ v} with d⊥ = (-dy, dx).

    Half-extents are measured in multiples of the (unnormalised) direction
    vector, which keeps every coefficient rational.  For a unit direction
    they are ordinary half-lengths.
    """

    center: Point
    dx: Fraction
    dy: Fraction
    u: Fraction
    v: Fraction

    def __post_init__(self):
        for name in ("dx", "dy", "u", "v"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.dx == 0 and self.dy == 0:
            raise ValueError("direction must be nonzero")
        if self.u < 0 or self.v < 0:
            raise ValueError("negative half-extent")

    @property
    def direction(self) -> Point:
        return Point(self.dx, self.dy)

    def contains(self, p: Point) -> bool:
        d = self.direction
        w = p - self.center
        scale = dot(d, d)
        return abs(dot(w, d)) <= self.u * scale and abs(cross(d, w)) <= self.v * scale

    def corners(self) -> list[Point]:
        d = self.direction
        perp = Point(-d.y, d.x)
        out = []
        for s, t in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
            out.append(
                Point(
                    self.center.x + s * self.u * d.x + t * self.v * perp.x,
                    self.center.y + s * self.u * d.y + t * self.v * perp.y,
                )
            )
        return out

    @classmethod
    def from_rect(cls, r: Rect) -> "OrientedRect":
        center = Point((r.x_lo + r.x_hi) / 2, (r.y_lo + r.y_hi) / 2)
        return cls(center, 1, 0, (r.x_hi - r.x_lo) / 2, (r.y_hi - r.y_lo) / 2)


AnyRect = Union[Rect, OrientedRect]


def contains_axis(r: Rect, p: Point) -> bool:
    return r.contains(p)


def contains_oriented(r: OrientedRect, p: Point) -> bool:
    return r.contains(p)


def contains(r: AnyRect, p: Point) -> bool:
    return r.contains(p)


def point_on_segment(q: Point, a: Point, b: Point) -> bool:
    """Closed-segment membership; a == b degenerates to point equality."""
    if a == b:
        return q == a
    ab = b - a
    aq = q - a
    if cross(ab, aq) != 0:
        return False
    return 0 <= dot(aq, ab) <= dot(ab, ab)


def point_in_open_segment(q: Point, a: Point, b: Point) -> bool:
    return q != a and q != b and point_on_segment(q, a, b)


def bbox(points: Iterable[Point]) -> Rect:
    pts = list(points)
    if not pts:
        raise ValueError("bbox of an empty point set")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return Rect(min(xs), min(ys), max(xs), max(ys))


def segment_rect_interval(a: Point, b: Point, r: Rect):
    """Parameter interval [t0, t1] ⊆ [0, 1] of a + t(b - a) inside ``r``,
    or None when the segment misses the rectangle."""
    lo, hi = Fraction(0), Fraction(1)
    for p0, d, rlo, rhi in ((a.x, b.x - a.x, r.x_lo, r.x_hi), (a.y, b.y - a.y, r.y_lo, r.y_hi)):
        if d == 0:
            if not rlo <= p0 <= rhi:
                return None
            continue
        t0, t1 = (rlo - p0) / d, (rhi - p0) / d
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
        if lo > hi:
            return None
    return lo, hi
