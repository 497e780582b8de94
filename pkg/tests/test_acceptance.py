"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import math
import random
import sys
import time
from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from classcover.formula import brute_force_sat, parse_dimacs, validate_nas, write_dimacs  # noqa: E402
from classcover.instance import parse_instance, write_instance, write_sidecar  # noqa: E402
from classcover.reduction import augment_abcc, build_bcc  # noqa: E402
from classcover.solver import (  # noqa: E402
    candidate_masks,
    count_optimal_covers,
    exact_cover,
    exhaustive_optimum,
    greedy_cover,
)
from classcover.transform import sat_to_nas  # noqa: E402
from classcover.verify import (  # noqa: E402
    check_abcc,
    check_equisat,
    check_gadgets,
    check_lemma1,
    exhaustive_3cnf,
    find_fault,
    nas_corpus,
    random_3cnf,
)
from classcover.formula import Formula  # noqa: E402
from classcover.geom import Point  # noqa: E402
from classcover.instance import Instance  # noqa: E402
from tests import oracles  # noqa: E402

# pinned knobs
SEED_RANDOM_3CNF = 1
RANDOM_3CNF_COUNT = 200
RANDOM_3CNF_VARS = 8
RANDOM_3CNF_CLAUSES = 8
EQUISAT_ORACLE_CAP = 64
NAS_SEED = 2024
NAS_COUNT = 120
NAS_VARS = 4
NAS_CLAUSES = 5
ORIENTED_BLUE_LIMIT = 20
TINY_SEED = 6
TINY_COUNT = 500
TINY_MAX_BLUE = 10
TINY_MAX_RED = 10
TINY_GRID = 8

_lines: list[str] = []


def _emit(capsys, number: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    _lines.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


@lru_cache(maxsize=None)
def theorem1_corpus():
    rng = random.Random(SEED_RANDOM_3CNF)
    randoms = [random_3cnf(rng, RANDOM_3CNF_VARS, RANDOM_3CNF_CLAUSES) for _ in range(RANDOM_3CNF_COUNT)]
    return tuple(exhaustive_3cnf(4, 4)) + tuple(randoms)


@lru_cache(maxsize=None)
def nas_formulas():
    return tuple(nas_corpus(NAS_COUNT, seed=NAS_SEED, max_vars=NAS_VARS, max_clauses=NAS_CLAUSES))


@lru_cache(maxsize=None)
def bcc_instances():
    return tuple(build_bcc(f) for f in nas_formulas())


# ---------------------------------------------------------------------------


def criterion_1(capsys=None):
    t = time.time()
    bad = []
    corpus = theorem1_corpus()
    for f in corpus:
        g, _ = sat_to_nas(f)
        if not validate_nas(g).is_nas or not check_equisat(f, g, cap=EQUISAT_ORACLE_CAP).passed:
            bad.append(f.to_ints())
    elapsed = time.time() - t
    ok = not bad and elapsed < 120
    _emit(capsys, 1, ok, f"sat_to_nas NAS + equisat on {len(corpus)} formulas "
          f"({len(corpus) - RANDOM_3CNF_COUNT} exhaustive orbits + {RANDOM_3CNF_COUNT} random); "
          f"failures={len(bad)} {elapsed:.1f}s" + (f" first={bad[0]}" if bad else ""))
    return ok


def criterion_2(capsys=None):
    t = time.time()
    corpus = nas_formulas()
    sat = sum(brute_force_sat(f) is not None for f in corpus)
    bad = [f.to_ints() for f in corpus if not check_lemma1(f).passed]
    elapsed = time.time() - t
    ok = not bad and len(corpus) >= 100 and 0 < sat < len(corpus) and elapsed < 600
    _emit(capsys, 2, ok, f"optimum == 2n+m iff SAT on {len(corpus)} NAS formulas "
          f"({sat} SAT, {len(corpus) - sat} UNSAT); failures={len(bad)} {elapsed:.1f}s")
    return ok


def criterion_3(capsys=None):
    got = {v: count_optimal_covers(build_bcc(Formula(v))) for v in (1, 2, 3, 4)}
    ok = all(got[v] == (2 * v, 2**v) for v in got)
    detail = ", ".join(f"v={v}: opt={o} covers={c}" for v, (o, c) in got.items())
    _emit(capsys, 3, ok, detail)
    return ok


def criterion_4(capsys=None):
    failing = [f.to_ints() for f, inst in zip(nas_formulas(), bcc_instances()) if not check_gadgets(inst).passed]
    corpus = nas_formulas()
    faults = {
        "center": find_fault(corpus, ("center",)),
        "cap": find_fault(corpus, ("cap",)),
        "corridor": find_fault(corpus, ("corridor",)),
        "helping": find_fault(corpus, ("helping", "red")),
    }
    parts = []
    for name, hit in faults.items():
        if hit is None:
            parts.append(f"{name}: no single deletion breaks a predicate")
        else:
            parts.append(f"{name}: {hit.check.name.split()[0]} ({':'.join(map(str, hit.role))})")
    ok = not failing and all(faults.values())
    _emit(capsys, 4, ok, f"R1-R5 on {len(corpus)} instances, failures={len(failing)}; " + "; ".join(parts))
    return ok


def criterion_5(capsys=None):
    t = time.time()
    bad = []
    max_ratio = 0.0
    oriented_runs = 0
    for f, bcc in zip(nas_formulas(), bcc_instances()):
        abcc = augment_abcc(bcc)
        report = check_abcc(bcc, abcc, oriented_cap=ORIENTED_BLUE_LIMIT)
        oriented_runs += len(bcc.blue) <= ORIENTED_BLUE_LIMIT
        nb = len(bcc.blue)
        if nb > 1:
            max_ratio = max(max_ratio, (len(abcc.red) - len(bcc.red)) / comb(nb, 2))
        if not report.passed:
            bad.append((f.to_ints(), [c.name for c in report.failures()]))
    ok = not bad
    _emit(capsys, 5, ok, f"ABCC checks on {len(nas_formulas())} instances "
          f"(oriented solver on {oriented_runs}); failures={len(bad)} "
          f"max blockers/C(|B|,2)={max_ratio:.2f} {time.time() - t:.1f}s"
          + (f" first={bad[0]}" if bad else ""))
    return ok


def _tiny(rng):
    cells = [(x, y) for x in range(TINY_GRID + 1) for y in range(TINY_GRID + 1)]
    nb = rng.randint(1, TINY_MAX_BLUE)
    nr = rng.randint(0, TINY_MAX_RED)
    pick = rng.sample(cells, nb + nr)
    return Instance([Point(*p) for p in pick[:nb]], [Point(*p) for p in pick[nb:]])


def criterion_6(capsys=None):
    t = time.time()
    rng = random.Random(TINY_SEED)
    mismatch = greedy_bad = 0
    worst = 1.0
    for _ in range(TINY_COUNT):
        inst = _tiny(rng)
        _, stats = exact_cover(inst)
        nb = len(inst.blue)
        exhaustive = exhaustive_optimum(nb, candidate_masks(inst.blue, inst.red))
        partition = oracles.min_partition(inst.blue, inst.red)
        mismatch += not (stats.optimum == exhaustive == partition)
        g = len(greedy_cover(inst))
        worst = max(worst, g / stats.optimum)
        greedy_bad += not (stats.optimum <= g <= (math.log(nb) + 1) * stats.optimum)
    ok = mismatch == 0 and greedy_bad == 0
    _emit(capsys, 6, ok, f"{TINY_COUNT} tiny instances: B&B vs exhaustive mismatches={mismatch}, "
          f"greedy bound violations={greedy_bad}, worst greedy/exact={worst:.2f} {time.time() - t:.1f}s")
    return ok


def criterion_7(capsys=None):
    formulas = list(theorem1_corpus()) + list(nas_formulas())
    formulas += [sat_to_nas(f)[0] for f in theorem1_corpus()[-RANDOM_3CNF_COUNT:]]
    dimacs_bad = sum(parse_dimacs(write_dimacs(f)) != f for f in formulas)
    inst_bad = 0
    instances = list(bcc_instances()) + [augment_abcc(i) for i in bcc_instances()[:30]]
    for inst in instances:
        back = parse_instance(write_instance(inst), write_sidecar(inst))
        same = (back.blue == inst.blue and back.red == inst.red and back.blue_roles == inst.blue_roles
                and back.red_roles == inst.red_roles and back.formula == inst.formula
                and back.layout == inst.layout and back.anchors == inst.anchors)
        inst_bad += not same
    ok = dimacs_bad == 0 and inst_bad == 0
    _emit(capsys, 7, ok, f"DIMACS round trips {len(formulas)} (bad={dimacs_bad}), "
          f"instance round trips {len(instances)} (bad={inst_bad})")
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.slow
@pytest.mark.parametrize("number", range(1, 8))
def test_acceptance(number, capsys):
    assert CRITERIA[number - 1](capsys)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
