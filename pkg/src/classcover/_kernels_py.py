"""Pure-Python kernels; reference implementation and import fallback.

Coordinates are integers (callers scale rationals to a common denominator).
Blue sets are Python int bitmasks over blue indices.
"""


def slab_runs(bx, by, rx, ry):
    """Blue sets of the maximal red-free runs inside every vertical slab.

    For each pair of blue x-coordinates xlo <= xhi, the points whose x lies
    in [xlo, xhi] are swept bottom to top.  A y-level holding a red closes
    the current run (blues on that level cannot be covered with this slab).
    Every red-free bounding box of a blue subset lies inside one run.
    """
    xs = sorted(set(bx))
    events = sorted(
        [(y, 0, x, i) for i, (x, y) in enumerate(zip(bx, by))]
        + [(y, 1, x, -1) for x, y in zip(rx, ry)]
    )
    found = set()
    for a, xlo in enumerate(xs):
        for xhi in xs[a:]:
            run = 0
            k = 0
            n = len(events)
            while k < n:
                y = events[k][0]
                level = 0
                red = False
                while k < n and events[k][0] == y:
                    _, is_red, x, i = events[k]
                    if xlo <= x <= xhi:
                        if is_red:
                            red = True
                        else:
                            level |= 1 << i
                    k += 1
                if red:
                    if run:
                        found.add(run)
                    run = 0
                else:
                    run |= level
            if run:
                found.add(run)
    return list(found)


def maximal_masks(masks):
    """Drop masks that are subsets of another; deterministic order
    (larger sets first, then by lowest member indices)."""
    uniq = sorted(set(masks), key=lambda m: (-bin(m).count("1"), _members(m)))
    kept = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _members(m):
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out
