"""Compiled vs pure-Python candidate kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times slab_runs + maximal_masks on random point sets and on reduction
instances, checks both backends agree, prints a table.
"""

import argparse
import random
import sys
import timeit

from classcover import _kernels_py
from classcover.formula import Formula
from classcover.reduction import build_bcc
from classcover.verify import nas_corpus

try:
    from classcover import _kernels
except ImportError:
    sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation` first")


def random_case(rng, nb, nr, grid):
    cells = rng.sample([(x, y) for x in range(grid) for y in range(grid)], nb + nr)
    xs, ys = zip(*cells)
    return list(xs[:nb]), list(ys[:nb]), list(xs[nb:]), list(ys[nb:])


def instance_case(inst):
    return ([int(p.x) for p in inst.blue], [int(p.y) for p in inst.blue],
            [int(p.x) for p in inst.red], [int(p.y) for p in inst.red])


def run(mod, case):
    return mod.maximal_masks(mod.slab_runs(*case))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    cases = [(f"random {nb}b/{nr}r", random_case(rng, nb, nr, 64)) for nb, nr in
             [(20, 20), (40, 40), (80, 60), (128, 100)]]
    big = max(nas_corpus(40, seed=9, max_vars=6, max_clauses=10), key=lambda f: len(build_bcc(f).blue))
    for label, f in [("vars-only v=4", Formula(4)), ("corpus max", big)]:
        inst = build_bcc(f)
        cases.append((f"{label} ({len(inst.blue)}b/{len(inst.red)}r)", instance_case(inst)))

    print(f"{'case':34s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, case in cases:
        assert run(_kernels, case) == run(_kernels_py, case), label
        py = min(timeit.repeat(lambda: run(_kernels_py, case), number=1, repeat=args.repeat)) * 1e3
        cy = min(timeit.repeat(lambda: run(_kernels, case), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:34s} {py:10.2f} {cy:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
