"""Bicolored point-set instances, covers, and their text file formats.

Instance file::

    classcover 1
    b <x> <y> <role-tag>
    r <x> <y> <role-tag>

Coordinates are integers or ``p/q`` rationals.  Role tags are colon
separated, e.g. ``var:2:ul`` or ``clause:3:C1``.  Formula, layout and anchor
data live in a JSON sidecar next to the instance file.

Cover file: one rectangle per line, ``axis <xlo> <ylo> <xhi> <yhi>`` or
``orient <cx> <cy> <dx> <dy> <u> <v>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

from .formula import Formula
from .geom import AnyRect, OrientedRect, Point, Q, Rect, fmt

HEADER = "classcover 1"

Role = tuple


def role_str(role: Role) -> str:
    return ":".join(str(part) for part in role)


def role_parse(text: str) -> Role:
    parts = []
    for tok in text.split(":"):
        parts.append(int(tok) if tok.lstrip("-").isdigit() else tok)
    return tuple(parts)


@dataclass(frozen=True)
class Layout:
    """Integer gadget constants.  Scales must keep
    cap < helping < corridor < side < pitch and cap < guard < side/2."""

    pitch: int = 128
    side: int = 16
    cap: int = 2
    corridor: int = 4
    helping: int = 3
    guard: int = 4

    def __post_init__(self):
        if not (0 < self.cap < self.helping < self.corridor < self.side < self.pitch):
            raise ValueError(f"layout scales out of order: {self}")
        if not self.cap < self.guard < self.side // 2:
            raise ValueError(f"guard offset must lie in (cap, side/2): {self}")
        if self.side % 2:
            raise ValueError("square side must be even (midline points are integral)")
        if self.pitch <= 2 * (self.side + self.corridor):
            raise ValueError("pitch too small to separate gadget neighbourhoods")


@dataclass(frozen=True)
class LineRef:
    var: int
    which: str  # left | right | lower | upper
    coordinate: int

    @property
    def vertical(self) -> bool:
        return self.which in ("left", "right")


@dataclass
class Instance:
    blue: list[Point] = field(default_factory=list)
    red: list[Point] = field(default_factory=list)
    blue_roles: list[Role] = field(default_factory=list)
    red_roles: list[Role] = field(default_factory=list)
    formula: Optional[Formula] = None
    layout: Optional[Layout] = None
    anchors: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.blue_roles:
            self.blue_roles = [("blue",)] * len(self.blue)
        if not self.red_roles:
            self.red_roles = [("red",)] * len(self.red)
        if len(self.blue_roles) != len(self.blue) or len(self.red_roles) != len(self.red):
            raise ValueError("role list length mismatch")

    @property
    def n(self) -> int:
        return self.formula.num_vars if self.formula else 0

    @property
    def m(self) -> int:
        return sum(1 for c in self.formula.clauses if len(c) == 3) if self.formula else 0

    def add_blue(self, p: Point, role: Role) -> int:
        self.blue.append(p)
        self.blue_roles.append(role)
        return len(self.blue) - 1

    def add_red(self, p: Point, role: Role) -> int:
        self.red.append(p)
        self.red_roles.append(role)
        return len(self.red) - 1

    def blues_with(self, *prefix) -> list[int]:
        k = len(prefix)
        return [i for i, r in enumerate(self.blue_roles) if r[:k] == prefix]

    def reds_with(self, *prefix) -> list[int]:
        k = len(prefix)
        return [i for i, r in enumerate(self.red_roles) if r[:k] == prefix]

    def line(self, var: int, which: str) -> LineRef:
        ax, ay = self.anchors[var]
        side = self.layout.side
        coord = {"left": ax, "right": ax + side, "lower": ay, "upper": ay + side}[which]
        return LineRef(var, which, coord)

    def without_red(self, index: int) -> "Instance":
        return replace(
            self,
            red=self.red[:index] + self.red[index + 1 :],
            red_roles=self.red_roles[:index] + self.red_roles[index + 1 :],
        )

    def copy(self) -> "Instance":
        return replace(
            self,
            blue=list(self.blue),
            red=list(self.red),
            blue_roles=list(self.blue_roles),
            red_roles=list(self.red_roles),
            anchors=dict(self.anchors),
        )

    def check_disjoint(self) -> None:
        clash = set(self.blue) & set(self.red)
        if clash:
            raise ValueError(f"points are both blue and red: {sorted(clash)[:3]}")


@dataclass
class Cover:
    rects: list[AnyRect] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)


# ---------------------------------------------------------------------------
# text formats


def write_instance(inst: Instance) -> str:
    lines = [HEADER]
    for p, role in zip(inst.blue, inst.blue_roles):
        lines.append(f"b {fmt(p.x)} {fmt(p.y)} {role_str(role)}")
    for p, role in zip(inst.red, inst.red_roles):
        lines.append(f"r {fmt(p.x)} {fmt(p.y)} {role_str(role)}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str, sidecar: Optional[str] = None) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ValueError(f"missing {HEADER!r} header")
    inst = Instance()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] not in ("b", "r") or len(parts) not in (3, 4):
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
        p = Point(Q(parts[1]), Q(parts[2]))
        role = role_parse(parts[3]) if len(parts) == 4 else (("blue",) if parts[0] == "b" else ("red",))
        (inst.add_blue if parts[0] == "b" else inst.add_red)(p, role)
    if sidecar:
        apply_sidecar(inst, sidecar)
    return inst


def write_sidecar(inst: Instance) -> str:
    data: dict = {"n": inst.n, "m": inst.m}
    if inst.formula is not None:
        data["formula"] = {"num_vars": inst.formula.num_vars, "clauses": inst.formula.to_ints()}
    if inst.layout is not None:
        data["layout"] = inst.layout.__dict__
    data["anchors"] = {str(v): list(a) for v, a in sorted(inst.anchors.items())}
    if inst.layout is not None and inst.anchors:
        data["lines"] = {
            str(v): {w: inst.line(v, w).coordinate for w in ("left", "right", "lower", "upper")}
            for v in sorted(inst.anchors)
        }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def apply_sidecar(inst: Instance, text: str) -> None:
    data = json.loads(text)
    if "formula" in data:
        fd = data["formula"]
        inst.formula = Formula.from_ints(fd["num_vars"], fd["clauses"])
    if "layout" in data:
        inst.layout = Layout(**data["layout"])
    inst.anchors = {int(v): tuple(a) for v, a in data.get("anchors", {}).items()}


def write_cover(cover: Cover) -> str:
    lines = []
    for r in cover:
        if isinstance(r, Rect):
            lines.append("axis " + " ".join(fmt(v) for v in (r.x_lo, r.y_lo, r.x_hi, r.y_hi)))
        else:
            vals = (r.center.x, r.center.y, r.dx, r.dy, r.u, r.v)
            lines.append("orient " + " ".join(fmt(v) for v in vals))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_cover(text: str) -> Cover:
    rects: list[AnyRect] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        vals = [Q(v) for v in parts[1:]]
        if parts[0] == "axis" and len(vals) == 4:
            rects.append(Rect(*vals))
        elif parts[0] == "orient" and len(vals) == 6:
            rects.append(OrientedRect(Point(vals[0], vals[1]), *vals[2:]))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    return Cover(rects)
