"""Static SVG pictures of instances: blue circles, red stars, cover boxes."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional
from xml.sax.saxutils import escape

from .geom import Point, Rect
from .instance import Cover, Instance, role_str

BLUE = "#1f5fbf"
RED = "#c8102e"
BOX = "#2e8b57"


def _num(v) -> str:
    # 3 decimals is plenty at screen scale and keeps output byte-stable
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _star(cx: float, cy: float, r: float) -> str:
    # five-pointed, inner radius 0.45 r, first tip straight up
    pts = []
    for k in range(10):
        rad = r if k % 2 == 0 else 0.45 * r
        ang = math.pi / 2 + k * math.pi / 5
        pts.append(f"{_num(cx + rad * math.cos(ang))},{_num(cy - rad * math.sin(ang))}")
    return " ".join(pts)


def render_svg(inst: Instance, cover: Optional[Cover] = None, size: int = 800, margin: int = 20,
               radius: float = 4.0) -> str:
    """SVG document for ``inst``; ``size`` is the longer side of the viewport
    in pixels.  Hovering a point shows its gadget role."""
    pts = list(inst.blue) + list(inst.red)
    corners: list[Point] = []
    for r in cover or ():
        corners += [Point(*c) for c in _corners(r)]
    every = pts + corners
    if every:
        xs = [p.x for p in every]
        ys = [p.y for p in every]
        x0, y0 = min(xs), min(ys)
        span = max(max(xs) - x0, max(ys) - y0) or Fraction(1)
    else:
        x0 = y0 = Fraction(0)
        span = Fraction(1)
    scale = Fraction(size - 2 * margin) / span
    width = size if not every else int((max(p.x for p in every) - x0) * scale) + 2 * margin
    height = size if not every else int((max(p.y for p in every) - y0) * scale) + 2 * margin

    def sx(x) -> float:
        return float((x - x0) * scale) + margin

    def sy(y) -> float:
        # SVG y grows downward
        return height - (float((y - y0) * scale) + margin)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if cover:
        out.append('<g class="cover" fill="none" stroke="%s" stroke-width="1.5">' % BOX)
        for i, r in enumerate(cover):
            poly = " ".join(f"{_num(sx(x))},{_num(sy(y))}" for x, y in _corners(r))
            out.append(f'<polygon points="{poly}"><title>rect {i}</title></polygon>')
        out.append("</g>")
    out.append(f'<g class="red" fill="{RED}">')
    for p, role in zip(inst.red, inst.red_roles):
        out.append(f'<polygon points="{_star(sx(p.x), sy(p.y), radius * 1.3)}">'
                   f"<title>{escape(role_str(role))} {p}</title></polygon>")
    out.append("</g>")
    out.append(f'<g class="blue" fill="{BLUE}">')
    for p, role in zip(inst.blue, inst.blue_roles):
        out.append(f'<circle cx="{_num(sx(p.x))}" cy="{_num(sy(p.y))}" r="{_num(radius)}">'
                   f"<title>{escape(role_str(role))} {p}</title></circle>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _corners(r) -> list[tuple[Fraction, Fraction]]:
    if isinstance(r, Rect):
        return [(r.x_lo, r.y_lo), (r.x_hi, r.y_lo), (r.x_hi, r.y_hi), (r.x_lo, r.y_hi)]
    return [(c.x, c.y) for c in r.corners()]
