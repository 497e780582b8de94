"""Compile NAS-CNF formulas into red/blue point sets and back.

Variable gadget for variable v with anchor (X, Y) and square side s::

    blue corners (X, Y) (X+s, Y) (X, Y+s) (X+s, Y+s)
    center red   (X+s/2, Y+s/2)
    cap reds     cap outside each of the four lines, on the gadget midline
    guard reds   at the four outer diagonal corners, offset by guard

Covering the four blues with two rectangles is only possible with the two
vertical strips (v true) or the two horizontal strips (v false).

Clause gadgets sit where one variable's vertical line crosses another's
horizontal line.  Anchors use independent x and y orders so that the lone
variable of every size-3 clause is outermost on the relevant axis; without
that the helping point could not reach both clause points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .formula import Assignment, Clause, Formula, validate_nas
from .geom import Point, Rect, bbox, point_on_segment, segment_rect_interval
from .instance import Cover, Instance, Layout
from .solver import enumerate_candidates, is_valid_cover, pair_cocover_axis

STRIP_HALF_WIDTH = Fraction(1, 2)


class ReductionError(ValueError):
    pass


class AugmentError(ValueError):
    def __init__(self, pair):
        super().__init__(f"cannot place a blocker between blue points {pair}")
        self.pair = pair


# ---------------------------------------------------------------------------
# anchor orders


def _size3_kind(c: Clause):
    """('A', j, k, l) for one positive literal x_j, ('B', j, k, l) for one
    negative literal ¬x_j; k, l in clause order."""
    pos = [lit.var for lit in c if not lit.negated]
    neg = [lit.var for lit in c if lit.negated]
    if len(pos) == 1:
        return ("A", pos[0], neg[0], neg[1])
    if len(neg) == 1:
        return ("B", neg[0], pos[0], pos[1])
    raise ReductionError(f"size-3 clause {c} is not mixed")


def _extreme_order(n: int, triples: list[tuple[int, int, int]]) -> list[int]:
    """Order of variables 1..n (list of variables, first = lowest) in which
    every head j of (j, k, l) is below or above both k and l.

    Heads are distinct and every variable is a tail at most once, so the
    head->tail graph has in-degree <= 1.  Heads on a cycle are flipped to
    'above' one at a time until the graph is acyclic.
    """
    ident = list(range(1, n + 1))
    if all(_is_extreme(ident, t) for t in triples):
        return ident
    edges = {v: set() for v in ident}
    for j, k, l in triples:
        edges[j] |= {k, l}
    while True:
        cycle = _find_cycle(edges)
        if cycle is None:
            break
        head = min(v for v in cycle if any(t[0] == v for t in triples))
        tails = edges[head]
        edges[head] = set()
        for t in tails:
            edges[t].add(head)
    indeg = {v: 0 for v in ident}
    for v in ident:
        for w in edges[v]:
            indeg[w] += 1
    ready = sorted(v for v in ident if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(edges[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                ready.sort()
    if len(order) != n or not all(_is_extreme(order, t) for t in triples):
        raise ReductionError("no anchor order keeps every lone literal outermost")
    return order


def _is_extreme(order: list[int], triple) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    j, k, l = (pos[v] for v in triple)
    return j < min(k, l) or j > max(k, l)


def _find_cycle(edges: dict[int, set[int]]) -> Optional[list[int]]:
    color: dict[int, int] = {}
    stack: list[int] = []

    def visit(v):
        color[v] = 1
        stack.append(v)
        for w in sorted(edges[v]):
            if color.get(w) == 1:
                return stack[stack.index(w):]
            if w not in color:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in sorted(edges):
        if v not in color:
            found = visit(v)
            if found:
                return list(found)
    return None


def compute_anchors(f: Formula, layout: Layout) -> dict[int, tuple[int, int]]:
    a_heads, b_heads = [], []
    for c in f.clauses:
        if len(c) == 3:
            kind, j, k, l = _size3_kind(c)
            (a_heads if kind == "A" else b_heads).append((j, k, l))
    # type A gadgets hang on j's vertical lines and k, l's horizontal lines,
    # so j must be outermost in y; type B is the mirror image
    yorder = _extreme_order(f.num_vars, a_heads)
    xorder = _extreme_order(f.num_vars, b_heads)
    xrank = {v: i for i, v in enumerate(xorder)}
    yrank = {v: i for i, v in enumerate(yorder)}
    return {v: (layout.pitch * xrank[v], layout.pitch * yrank[v]) for v in range(1, f.num_vars + 1)}


# ---------------------------------------------------------------------------
# construction


def _variable_gadget(inst: Instance, v: int) -> None:
    L = inst.layout
    X, Y = inst.anchors[v]
    s, h, c, g = L.side, L.side // 2, L.cap, L.guard
    for name, dx, dy in (("ll", 0, 0), ("lr", s, 0), ("ul", 0, s), ("ur", s, s)):
        inst.add_blue(Point(X + dx, Y + dy), ("var", v, name))
    inst.add_red(Point(X + h, Y + h), ("center", v))
    # outward side only: inside the square the center red already bounds strips
    inst.add_red(Point(X - c, Y + h), ("cap", v, "left"))
    inst.add_red(Point(X + s + c, Y + h), ("cap", v, "right"))
    inst.add_red(Point(X + h, Y - c), ("cap", v, "lower"))
    inst.add_red(Point(X + h, Y + s + c), ("cap", v, "upper"))
    for name, px, py in (("sw", X - g, Y - g), ("se", X + s + g, Y - g),
                         ("nw", X - g, Y + s + g), ("ne", X + s + g, Y + s + g)):
        inst.add_red(Point(px, py), ("guard", v, name))


def _corridor(inst: Instance, ci: int, which: str, p: Point) -> None:
    k = inst.layout.corridor
    for name, sx, sy in (("sw", -1, -1), ("se", 1, -1), ("nw", -1, 1), ("ne", 1, 1)):
        inst.add_red(Point(p.x + sx * k, p.y + sy * k), ("corridor", ci, which, name))


def _size3_gadget(inst: Instance, ci: int, c: Clause) -> None:
    L = inst.layout
    kind, j, k, l = _size3_kind(c)
    s, hp, cor = L.side, L.helping, L.corridor
    if kind == "A":
        col = {v: inst.anchors[v][0] for v in inst.anchors}
        row = {v: inst.anchors[v][1] for v in inst.anchors}
        emit = lambda x, y: Point(x, y)
    else:
        # mirror image in the diagonal: columns come from y anchors
        col = {v: inst.anchors[v][1] for v in inst.anchors}
        row = {v: inst.anchors[v][0] for v in inst.anchors}
        emit = lambda x, y: Point(y, x)
    c1 = (col[j], row[k] + s)
    c2 = (col[j] + s, row[l] + s)
    corner = (col[j] + s, row[k] + s)
    # H sits on the far side of the k row from C2, right of j's column
    sy = -1 if c2[1] > corner[1] else 1
    hx, hy = corner[0] + hp, corner[1] + sy * hp
    inst.add_blue(emit(*c1), ("clause", ci, "C1"))
    inst.add_blue(emit(*c2), ("clause", ci, "C2"))
    inst.add_blue(emit(hx, hy), ("helping", "blue", ci))
    _corridor(inst, ci, "C1", emit(*c1))
    _corridor(inst, ci, "C2", emit(*c2))
    inst.add_red(emit(hx + 1, hy), ("helping", "red", ci, "side"))
    inst.add_red(emit(hx, hy + sy), ("helping", "red", ci, "back"))
    inst.add_red(emit(c1[0] - cor, hy), ("helping", "red", ci, "pastC1"))
    inst.add_red(emit(hx, c2[1] - sy * cor), ("helping", "red", ci, "pastC2"))


def build_bcc(f: Formula, layout: Optional[Layout] = None) -> Instance:
    """Axis-aligned class cover instance whose optimum is 2n+m iff f is
    satisfiable (n variables, m clauses of size 3)."""
    layout = layout or Layout()
    report = validate_nas(f)
    if not report.is_nas:
        v = report.violations[0]
        raise ReductionError(f"not NAS-CNF: clause {v.clause} violates condition {v.condition} ({v.explanation})")
    for i, c in enumerate(f.clauses):
        if len(set(c.variables)) != len(c):
            raise ReductionError(f"clause {i} {c} repeats a variable; normalize first")
    inst = Instance(formula=f, layout=layout, anchors=compute_anchors(f, layout))
    for v in range(1, f.num_vars + 1):
        _variable_gadget(inst, v)
    h = layout.side // 2
    for ci, c in enumerate(f.clauses):
        if len(c) == 1:
            lit = c.literals[0]
            X, Y = inst.anchors[lit.var]
            p = Point(X + h, Y) if lit.negated else Point(X, Y + h)
            inst.add_blue(p, ("equiv", "blue", ci))
        elif len(c) == 2:
            pos = next(lit.var for lit in c if not lit.negated)
            neg = next(lit.var for lit in c if lit.negated)
            p = Point(inst.anchors[pos][0], inst.anchors[neg][1])
            inst.add_blue(p, ("clause", ci, "P"))
            _corridor(inst, ci, "P", p)
        else:
            _size3_gadget(inst, ci, c)
    inst.check_disjoint()
    return inst


# ---------------------------------------------------------------------------
# covers and assignments


def _var_points(inst: Instance, v: int) -> dict[str, Point]:
    return {inst.blue_roles[i][2]: inst.blue[i] for i in inst.blues_with("var", v)}


def strip(inst: Instance, v: int, which: str) -> Rect:
    """Thin rectangle along one line of variable v, long enough for every
    clause or equivalence point lying on that line."""
    line = inst.line(v, which)
    pts = [p for i, p in enumerate(inst.blue) if inst.blue_roles[i][0] in ("var", "equiv", "clause")]
    if line.vertical:
        on = [p.y for p in pts if p.x == line.coordinate]
        lo, hi = min(on), max(on)
        w = STRIP_HALF_WIDTH
        return Rect(line.coordinate - w, lo, line.coordinate + w, hi)
    on = [p.x for p in pts if p.y == line.coordinate]
    w = STRIP_HALF_WIDTH
    return Rect(min(on), line.coordinate - w, max(on), line.coordinate + w)


def assign_to_cover(inst: Instance, a: Assignment) -> Cover:
    """2n strips chosen by the assignment plus one helping rectangle per
    size-3 clause (2n + m rectangles)."""
    if len(a) < inst.n:
        raise ValueError("assignment does not cover every variable")
    rects = []
    for v in range(1, inst.n + 1):
        lines = ("left", "right") if a[v] else ("lower", "upper")
        rects += [strip(inst, v, w) for w in lines]
    for hi in inst.blues_with("helping", "blue"):
        ci = inst.blue_roles[hi][2]
        H = inst.blue[hi]
        rect = bbox([H])
        for which in ("C1", "C2"):
            (pi,) = inst.blues_with("clause", ci, which)
            p = inst.blue[pi]
            if any(r.contains(p) for r in rects):
                continue
            candidate = bbox([H, p])
            if not any(candidate.contains(r) for r in inst.red):
                rect = candidate
                break
        rects.append(rect)
    return Cover(rects)


def cover_to_assign(inst: Instance, cover: Cover) -> Assignment:
    """x_v is true iff one rectangle holds both left or both right variable
    points of v ("vertical wins"); every other configuration maps to false."""
    if not is_valid_cover(inst, cover):
        raise ValueError("cover is not valid for this instance")
    values = []
    for v in range(1, inst.n + 1):
        pts = _var_points(inst, v)
        vertical = any(
            (r.contains(pts["ll"]) and r.contains(pts["ul"])) or (r.contains(pts["lr"]) and r.contains(pts["ur"]))
            for r in cover
        )
        values.append(vertical)
    return Assignment(tuple(values))


# ---------------------------------------------------------------------------
# arbitrary orientation


def _first_gap(intervals: list[tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """Midpoint of the first stretch of (0, 1) outside every closed interval."""
    reach = Fraction(0)
    for lo, hi in sorted(intervals):
        if lo > reach:
            return (reach + lo) / 2
        reach = max(reach, hi)
        if reach >= 1:
            return None
    return (reach + 1) / 2 if reach < 1 else None


def augment_abcc(inst: Instance) -> Instance:
    """Add red blockers so that rotated rectangles cover nothing new.

    Every blue pair that no axis-aligned blue rectangle can hold together
    gets a red point on the open segment between them.  Blockers avoid the
    bounding box of every maximal axis-aligned blue rectangle, so all
    axis-aligned covers of the input stay valid.
    """
    out = inst.copy()
    cands = enumerate_candidates(inst)
    boxes = cands.rects
    nb = len(inst.blue)
    for p in range(nb):
        for q in range(p + 1, nb):
            if pair_cocover_axis(inst, p, q):
                continue
            a, b = inst.blue[p], inst.blue[q]
            if any(point_on_segment(r, a, b) for r in out.red):
                continue
            spans = []
            for box in boxes:
                span = segment_rect_interval(a, b, box)
                if span is not None:
                    spans.append(span)
            for i, other in enumerate(inst.blue):
                if i not in (p, q):
                    span = segment_rect_interval(a, b, bbox([other]))
                    if span is not None:
                        spans.append(span)
            t = _first_gap(spans)
            if t is None:
                raise AugmentError((p, q))
            out.add_red(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)), ("blocker", p, q))
    out.check_disjoint()
    return out
