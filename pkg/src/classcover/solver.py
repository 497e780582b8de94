"""Exact and greedy minimum class cover for axis-aligned and oriented boxes.

Any blue rectangle can be shrunk to the bounding box of the blues it
covers, so covers are built from maximal red-free blue sets found by the
slab sweep in :mod:`classcover.kernels`.  The exact solver is a
branch-and-bound set cover over those sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .geom import OrientedRect, Point, Rect, bbox, contains, point_on_segment
from .instance import Cover, Instance

DEFAULT_BLUE_CAP = 128
DEFAULT_COUNT_CAP = 24
DEFAULT_ORIENTED_CAP = 32


class SolverCapExceeded(ValueError):
    pass


@dataclass
class CandidateSet:
    rects: list[Rect]
    coverage: list[int]  # bitmask of blue indices per candidate

    def __len__(self) -> int:
        return len(self.rects)

    def members(self, k: int) -> list[int]:
        return _bits(self.coverage[k])


@dataclass
class SolveStats:
    optimum: int
    nodes: int = 0
    optimal_count: Optional[int] = None
    direction_count: Optional[int] = None


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _integerize(values: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values]


def candidate_masks(blue: Sequence[Point], red: Sequence[Point]) -> list[int]:
    """Maximal red-free blue sets (bitmasks), deterministic order."""
    if not blue:
        return []
    xs = _integerize([p.x for p in blue] + [p.x for p in red])
    ys = _integerize([p.y for p in blue] + [p.y for p in red])
    nb = len(blue)
    runs = kernels.slab_runs(xs[:nb], ys[:nb], xs[nb:], ys[nb:])
    return kernels.maximal_masks(runs)


def enumerate_candidates(inst: Instance) -> CandidateSet:
    masks = candidate_masks(inst.blue, inst.red)
    rects = [bbox(inst.blue[i] for i in _bits(m)) for m in masks]
    return CandidateSet(rects, masks)


def is_valid_cover(inst: Instance, cover: Cover) -> bool:
    for r in cover:
        if any(contains(r, p) for p in inst.red):
            return False
    return all(any(contains(r, p) for r in cover) for p in inst.blue)


def pair_cocover_axis(inst: Instance, p: int, q: int) -> bool:
    box = bbox([inst.blue[p], inst.blue[q]])
    return not any(box.contains(r) for r in inst.red)


def pair_cocover_any(inst: Instance, p: int, q: int) -> bool:
    a, b = inst.blue[p], inst.blue[q]
    return not any(point_on_segment(r, a, b) for r in inst.red)


# ---------------------------------------------------------------------------
# set cover


def greedy_indices(nb: int, masks: Sequence[int]) -> list[int]:
    full = (1 << nb) - 1
    uncovered = full
    chosen = []
    while uncovered:
        best, gain = -1, 0
        for k, m in enumerate(masks):
            g = _popcount(m & uncovered)
            if g > gain:
                best, gain = k, g
        if best < 0:
            raise ValueError("blue point covered by no candidate")
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


class _BnB:
    def __init__(self, nb: int, masks: Sequence[int], node_limit: Optional[int] = None):
        self.nb = nb
        self.masks = list(masks)
        self.by_blue: list[list[int]] = [[] for _ in range(nb)]
        for k, m in enumerate(self.masks):
            for i in _bits(m):
                self.by_blue[i].append(k)
        if any(not lst for lst in self.by_blue):
            raise ValueError("blue point covered by no candidate")
        # blues sharing some candidate with i
        self.cocover = [0] * nb
        for i in range(nb):
            acc = 0
            for k in self.by_blue[i]:
                acc |= self.masks[k]
            self.cocover[i] = acc
        self.order = sorted(range(nb), key=lambda i: (len(self.by_blue[i]), i))
        self.nodes = 0
        self.node_limit = node_limit

    def lower_bound(self, uncovered: int) -> int:
        """Size of a greedy set of uncovered blues no two of which share a
        candidate; each needs its own rectangle."""
        blocked = 0
        count = 0
        for i in self.order:
            if uncovered >> i & 1 and not blocked >> i & 1:
                count += 1
                blocked |= self.cocover[i]
        return count

    def solve(self) -> list[int]:
        self.best = greedy_indices(self.nb, self.masks)
        full = (1 << self.nb) - 1
        self._dfs(full, [])
        return self.best

    def _dfs(self, uncovered: int, chosen: list[int]) -> None:
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise SolverCapExceeded(f"node limit {self.node_limit} reached")
        if not uncovered:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        if len(chosen) + self.lower_bound(uncovered) >= len(self.best):
            return
        pivot = min(
            (i for i in range(self.nb) if uncovered >> i & 1),
            key=lambda i: (len(self.by_blue[i]), i),
        )
        options = []
        for k in self.by_blue[pivot]:
            options.append((self.masks[k] & uncovered, k))
        # an option whose new coverage is inside another's can be skipped
        options.sort(key=lambda t: (-_popcount(t[0]), t[1]))
        kept = []
        for gain, k in options:
            if any(gain & g == gain for g, _ in kept):
                continue
            kept.append((gain, k))
        for gain, k in kept:
            chosen.append(k)
            self._dfs(uncovered & ~gain, chosen)
            chosen.pop()


def exact_set_cover(nb: int, masks: Sequence[int], node_limit=None) -> tuple[list[int], int]:
    if nb == 0:
        return [], 0
    bnb = _BnB(nb, masks, node_limit)
    best = bnb.solve()
    return sorted(best), bnb.nodes


def exact_cover(inst: Instance, cap: int = DEFAULT_BLUE_CAP, node_limit=None) -> tuple[Cover, SolveStats]:
    if len(inst.blue) > cap:
        raise SolverCapExceeded(f"{len(inst.blue)} blue points exceeds cap {cap}")
    cands = enumerate_candidates(inst)
    chosen, nodes = exact_set_cover(len(inst.blue), cands.coverage, node_limit)
    cover = Cover([cands.rects[k] for k in chosen])
    return cover, SolveStats(len(chosen), nodes)


def greedy_cover(inst: Instance) -> Cover:
    cands = enumerate_candidates(inst)
    if not inst.blue:
        return Cover([])
    return Cover([cands.rects[k] for k in greedy_indices(len(inst.blue), cands.coverage)])


def exhaustive_optimum(nb: int, masks: Sequence[int]) -> int:
    """Smallest k such that some k masks cover everything; plain subset
    enumeration, used as an oracle on tiny instances."""
    from itertools import combinations

    full = (1 << nb) - 1
    if nb == 0:
        return 0
    for k in range(1, len(masks) + 1):
        for combo in combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    raise ValueError("masks do not cover all blues")


# ---------------------------------------------------------------------------
# counting optimal covers


def closed_sets(inst: Instance) -> list[int]:
    """Every blue set realisable as B ∩ r for a red-free rectangle r."""
    blue, red = inst.blue, inst.red
    xs = sorted({p.x for p in blue})
    levels_y = sorted({p.y for p in blue} | {p.y for p in red})
    found = set()
    for a, xlo in enumerate(xs):
        for xhi in xs[a:]:
            levels = []
            for y in levels_y:
                mask = 0
                has_red = any(r.y == y and xlo <= r.x <= xhi for r in red)
                for i, p in enumerate(blue):
                    if p.y == y and xlo <= p.x <= xhi:
                        mask |= 1 << i
                levels.append((mask, has_red))
            for s in range(len(levels)):
                acc = 0
                for mask, has_red in levels[s:]:
                    if has_red:
                        break
                    acc |= mask
                    if acc:
                        found.add(acc)
    return sorted(found)


def count_optimal_covers(inst: Instance, cap: int = DEFAULT_COUNT_CAP) -> tuple[int, int]:
    """(optimum, number of distinct minimum covers).

    Covers are identified by their family of covered blue sets.
    """
    nb = len(inst.blue)
    if nb > cap:
        raise SolverCapExceeded(f"{nb} blue points exceeds counting cap {cap}")
    if nb == 0:
        return 0, 1
    _, stats = exact_cover(inst)
    opt = stats.optimum
    sets = closed_sets(inst)
    by_blue: list[list[int]] = [[] for _ in range(nb)]
    for s in sets:
        for i in _bits(s):
            by_blue[i].append(s)
    found: set[frozenset] = set()

    def dfs(uncovered: int, chosen: list[int]):
        if not uncovered:
            if len(chosen) == opt:
                found.add(frozenset(chosen))
            return
        if len(chosen) >= opt:
            return
        pivot = (uncovered & -uncovered).bit_length() - 1
        for s in by_blue[pivot]:
            if s in chosen:
                continue
            chosen.append(s)
            dfs(uncovered & ~s, chosen)
            chosen.pop()

    dfs((1 << nb) - 1, [])
    return opt, len(found)


# ---------------------------------------------------------------------------
# oriented rectangles


def _primitive(dx: Fraction, dy: Fraction) -> tuple[int, int]:
    ix, iy = _integerize([Fraction(dx), Fraction(dy)])
    g = math.gcd(ix, iy)
    ix, iy = ix // g, iy // g
    # canonical representative of the four 90° rotations
    for _ in range(4):
        if ix > 0 and iy >= 0:
            return ix, iy
        ix, iy = -iy, ix
    raise ValueError("zero direction")


def default_directions(inst: Instance) -> list[tuple[int, int]]:
    dirs = {(1, 0)}
    pts = inst.blue
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[j] - pts[i]
            if d.x or d.y:
                dirs.add(_primitive(d.x, d.y))
    return sorted(dirs)


def _frame(p: Point, d: tuple[int, int]) -> Point:
    dx, dy = d
    return Point(dx * p.x + dy * p.y, -dy * p.x + dx * p.y)


def _oriented_from_frame(lo_u, hi_u, lo_v, hi_v, d: tuple[int, int]) -> OrientedRect:
    dx, dy = d
    norm2 = dx * dx + dy * dy
    uc, vc = (lo_u + hi_u) / 2, (lo_v + hi_v) / 2
    center = Point((uc * dx - vc * dy) / norm2, (uc * dy + vc * dx) / norm2)
    return OrientedRect(center, dx, dy, (hi_u - lo_u) / (2 * norm2), (hi_v - lo_v) / (2 * norm2))


def min_cover_oriented(
    inst: Instance,
    directions: Optional[Sequence[tuple[int, int]]] = None,
    cap: int = DEFAULT_ORIENTED_CAP,
) -> tuple[Cover, SolveStats]:
    """Minimum cover by rectangles of any orientation drawn from
    ``directions`` (default: every blue-pair difference direction).

    A blue set fits in a red-free rectangle at some angle iff its minimum
    bounding rectangle at that angle is red-free, and minimum bounding
    rectangles are flush with a hull edge of the set, so pair directions
    suffice up to degenerate collinear cases.
    """
    if len(inst.blue) > cap:
        raise SolverCapExceeded(f"{len(inst.blue)} blue points exceeds oriented cap {cap}")
    if not inst.blue:
        return Cover([]), SolveStats(0, 0, direction_count=0)
    dirs = list(directions) if directions is not None else default_directions(inst)
    pool: dict[int, tuple[int, int]] = {}
    for d in dirs:
        d = _primitive(Fraction(d[0]), Fraction(d[1]))
        blue = [_frame(p, d) for p in inst.blue]
        red = [_frame(p, d) for p in inst.red]
        for mask in candidate_masks(blue, red):
            pool.setdefault(mask, d)
    masks = kernels.maximal_masks(list(pool))
    chosen, nodes = exact_set_cover(len(inst.blue), masks)
    rects = []
    for k in chosen:
        d = pool[masks[k]]
        framed = [_frame(inst.blue[i], d) for i in _bits(masks[k])]
        box = bbox(framed)
        rects.append(_oriented_from_frame(box.x_lo, box.x_hi, box.y_lo, box.y_hi, d))
    return Cover(rects), SolveStats(len(chosen), nodes, direction_count=len(dirs))
