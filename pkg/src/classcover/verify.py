"""Machine checks for the reduction pipeline.

Each ``check_*`` returns a :class:`Report`; failed checks carry a witness
(formula, assignment, cover, rectangle or point pair) that
:func:`replay_witness` can re-validate on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Any, Optional

from .formula import (
    DEFAULT_ORACLE_CAP,
    Clause,
    Formula,
    Literal,
    brute_force_sat,
    evaluate,
    normalize,
    validate_nas,
)
from .geom import Rect, bbox
from .instance import Instance
from .reduction import assign_to_cover, augment_abcc, build_bcc, cover_to_assign
from .solver import (
    enumerate_candidates,
    exact_cover,
    is_valid_cover,
    min_cover_oriented,
    pair_cocover_any,
    pair_cocover_axis,
)

ORIENTED_CHECK_CAP = 20


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    note: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None, note: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness, note))
        return passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f"  [{c.note}]" if c.note else "")
                 for c in self.checks]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# formulas


def check_equisat(f: Formula, g: Formula, cap: int = DEFAULT_ORACLE_CAP) -> Report:
    report = Report()
    a, b = brute_force_sat(f, cap), brute_force_sat(g, cap)
    report.add(
        "equisatisfiable",
        (a is None) == (b is None),
        witness={"formula": f if a is None else g, "model": a or b},
        note=f"{'SAT' if a else 'UNSAT'}/{'SAT' if b else 'UNSAT'}",
    )
    return report


# ---------------------------------------------------------------------------
# gadget predicates


@dataclass(frozen=True)
class RectWitness:
    """A red-free rectangle holding the listed blue points."""

    rect: Rect
    blues: tuple[int, ...]


@dataclass(frozen=True)
class BlockedWitness:
    """Blue points whose bounding box contains a red point."""

    blues: tuple[int, ...]


def replay_witness(inst: Instance, witness) -> bool:
    """True when the witness still demonstrates its violation on ``inst``."""
    if isinstance(witness, RectWitness):
        return not any(witness.rect.contains(r) for r in inst.red) and all(
            witness.rect.contains(inst.blue[i]) for i in witness.blues
        )
    if isinstance(witness, BlockedWitness):
        box = bbox(inst.blue[i] for i in witness.blues)
        return any(box.contains(r) for r in inst.red)
    if isinstance(witness, tuple) and len(witness) == 2:
        p, q = witness
        return pair_cocover_any(inst, p, q) != pair_cocover_axis(inst, p, q)
    raise TypeError(f"cannot replay {witness!r}")


def _var_index(inst: Instance) -> dict[int, dict[str, int]]:
    out: dict[int, dict[str, int]] = {}
    for i, role in enumerate(inst.blue_roles):
        if role[0] == "var":
            out.setdefault(role[1], {})[role[2]] = i
    return out


LINE_CORNERS = {"left": ("ll", "ul"), "right": ("lr", "ur"), "lower": ("ll", "lr"), "upper": ("ul", "ur")}


def check_gadgets(inst: Instance) -> Report:
    if inst.formula is None or inst.layout is None:
        raise ValueError("instance lacks reduction annotations")
    report = Report()
    cands = enumerate_candidates(inst)
    vars_ = _var_index(inst)
    if set(vars_) != set(range(1, inst.n + 1)) or any(len(c) != 4 for c in vars_.values()):
        raise ValueError("instance lacks variable-point annotations")
    var_of = {i: v for v, corners in vars_.items() for i in corners.values()}
    f = inst.formula

    def members(k):
        return cands.members(k)

    # R1
    bad = None
    for k in range(len(cands)):
        held = [i for i in members(k) if i in var_of]
        owners = {var_of[i] for i in held}
        if len(owners) > 1 or any(sum(var_of[i] == v for i in held) >= 3 for v in owners):
            bad = RectWitness(cands.rects[k], tuple(held))
            break
    report.add("R1 variable isolation", bad is None, bad)

    # R2
    bad = None
    for v in range(1, inst.n + 1):
        for which, corners in LINE_CORNERS.items():
            line = inst.line(v, which)
            pts = [vars_[v][c] for c in corners]
            for i, role in enumerate(inst.blue_roles):
                if role[0] in ("equiv", "clause"):
                    coord = inst.blue[i].x if line.vertical else inst.blue[i].y
                    if coord == line.coordinate:
                        pts.append(i)
            box = bbox(inst.blue[i] for i in pts)
            if any(box.contains(r) for r in inst.red):
                bad = BlockedWitness(tuple(pts))
                break
        if bad:
            break
    report.add("R2 strip feasibility", bad is None, bad)

    def forcing(point: int, required: list[tuple[int, int]]):
        for k in range(len(cands)):
            held = set(members(k))
            if point in held and held & set(var_of):
                if not any(a in held and b in held for a, b in required):
                    return RectWitness(cands.rects[k], tuple(sorted(held)))
        return None

    # R3
    bad = None
    for i in inst.blues_with("equiv", "blue"):
        lit = f.clauses[inst.blue_roles[i][2]].literals[0]
        corners = LINE_CORNERS["lower" if lit.negated else "left"]
        bad = forcing(i, [tuple(vars_[lit.var][c] for c in corners)])
        if bad:
            break
    report.add("R3 equivalence forcing", bad is None, bad)

    # R4
    bad = None
    for i, role in enumerate(inst.blue_roles):
        if role[0] == "clause" and role[2] == "P":
            c = f.clauses[role[1]]
            pos = next(lit.var for lit in c if not lit.negated)
            neg = next(lit.var for lit in c if lit.negated)
            req = [tuple(vars_[pos][x] for x in LINE_CORNERS["left"]),
                   tuple(vars_[neg][x] for x in LINE_CORNERS["lower"])]
            bad = forcing(i, req)
            if bad:
                break
    report.add("R4 clause corridors", bad is None, bad)

    # R5
    bad = None
    helping = inst.blues_with("helping", "blue")
    hset = set(helping)
    for hi in helping:
        ci = inst.blue_roles[hi][2]
        (c1,) = inst.blues_with("clause", ci, "C1")
        (c2,) = inst.blues_with("clause", ci, "C2")
        for k in range(len(cands)):
            held = set(members(k))
            if hi not in held:
                continue
            if held & set(var_of) or len(held & hset) > 1 or {c1, c2} <= held:
                bad = RectWitness(cands.rects[k], tuple(sorted(held)))
                break
        if bad:
            break
        for c in (c1, c2):
            if not pair_cocover_axis(inst, hi, c):
                bad = BlockedWitness((hi, c))
                break
        if bad:
            break
    report.add("R5 helping mechanics", bad is None, bad)
    return report


@dataclass(frozen=True)
class FaultHit:
    formula: Formula
    red_index: int
    role: tuple
    check: Check


def inject_fault(inst: Instance, red_index: int) -> Report:
    """Gadget predicates on ``inst`` with one red point deleted."""
    return check_gadgets(inst.without_red(red_index))


def find_fault(formulas, match, limit_per_formula: Optional[int] = None) -> Optional[FaultHit]:
    """First single-red deletion among reds whose role matches ``match`` (a
    role prefix tuple or a predicate) that breaks a named predicate.  The
    witness must hold on the damaged instance and fail on the intact one,
    so it pins the breakage on that red."""
    if isinstance(match, tuple):
        prefix = match
        match = lambda role: role[: len(prefix)] == prefix  # noqa: E731
    for f in formulas:
        inst = build_bcc(f)
        reds = [i for i, role in enumerate(inst.red_roles) if match(role)]
        for i in reds[:limit_per_formula]:
            damaged = inst.without_red(i)
            for c in check_gadgets(damaged).failures():
                if replay_witness(damaged, c.witness) and not replay_witness(inst, c.witness):
                    return FaultHit(f, i, inst.red_roles[i], c)
    return None


# ---------------------------------------------------------------------------
# Lemma 1


def check_lemma1(f: Formula, oracle_cap: int = DEFAULT_ORACLE_CAP, solver_cap: int = 128) -> Report:
    report = Report()
    inst = build_bcc(f)
    target = 2 * inst.n + inst.m
    cover, stats = exact_cover(inst, cap=solver_cap)
    opt = stats.optimum
    model = brute_force_sat(f, oracle_cap)
    report.add("optimum >= 2n+m", opt >= target, {"formula": f, "cover": cover}, f"opt={opt} 2n+m={target}")
    if model is not None:
        report.add("SAT => optimum == 2n+m", opt == target, {"formula": f, "model": model, "cover": cover})
        built = assign_to_cover(inst, model)
        report.add(
            "SAT => assignment cover valid with 2n+m boxes",
            is_valid_cover(inst, built) and len(built) == target,
            {"formula": f, "model": model, "cover": built},
        )
    else:
        report.add("UNSAT => optimum > 2n+m", opt > target, {"formula": f, "cover": cover})
    if opt == target:
        a = cover_to_assign(inst, cover)
        report.add("optimum == 2n+m => decoded assignment satisfies", evaluate(f, a),
                   {"formula": f, "cover": cover, "model": a})
    return report


# ---------------------------------------------------------------------------
# ABCC


def check_abcc(bcc: Instance, abcc: Instance, oriented_cap: int = ORIENTED_CHECK_CAP) -> Report:
    report = Report()
    report.add("blue sets identical", bcc.blue == abcc.blue)
    nb = len(bcc.blue)
    bad = None
    for p in range(nb):
        for q in range(p + 1, nb):
            if pair_cocover_any(abcc, p, q) != pair_cocover_axis(bcc, p, q):
                bad = (p, q)
                break
        if bad:
            break
    report.add("pairwise any-orientation == axis co-coverability", bad is None, bad)
    _, before = exact_cover(bcc)
    _, after = exact_cover(abcc)
    report.add("axis optimum unchanged", before.optimum == after.optimum,
               note=f"{before.optimum} -> {after.optimum}")
    if nb <= oriented_cap:
        _, ostats = min_cover_oriented(abcc)
        report.add("oriented optimum == axis optimum", ostats.optimum == before.optimum,
                   note=f"oriented={ostats.optimum} directions={ostats.direction_count}")
    else:
        report.add("oriented optimum == axis optimum", True, note=f"skipped: {nb} blues > {oriented_cap}")
    added = len(abcc.red) - len(bcc.red)
    report.add("blockers <= C(|B|,2)", added <= comb(nb, 2), note=f"added={added} bound={comb(nb, 2)}")
    return report


# ---------------------------------------------------------------------------
# corpora


def random_nas_formula(rng: random.Random, max_vars: int = 4, max_clauses: int = 5) -> Formula:
    """Random NAS-CNF formula; clause sizes 1..3, mixed polarity, no literal
    in two size-3 clauses."""
    n = rng.randint(1, max_vars)
    target = rng.randint(1, max_clauses)
    clauses: list[Clause] = []
    used3: set[Literal] = set()
    for _ in range(target * 4):
        if len(clauses) >= target:
            break
        size = rng.choice([1, 1, 2, 2, 3, 3]) if n >= 3 else rng.choice([1, 2] if n >= 2 else [1])
        vs = rng.sample(range(1, n + 1), size)
        if size == 1:
            lits = [Literal(vs[0], rng.random() < 0.5)]
        else:
            signs = [rng.random() < 0.5 for _ in vs]
            if len(set(signs)) == 1:
                signs[rng.randrange(size)] ^= True
            lits = [Literal(v, s) for v, s in zip(vs, signs)]
        if size == 3 and any(lit in used3 for lit in lits):
            continue
        clause = Clause(tuple(lits))
        if any(set(clause.literals) == set(c.literals) for c in clauses):
            continue
        if size == 3:
            used3.update(lits)
        clauses.append(clause)
    f = Formula(n, tuple(clauses))
    assert validate_nas(f).is_nas
    return f


def nas_corpus(count: int, seed: int = 0, max_vars: int = 4, max_clauses: int = 5) -> list[Formula]:
    """Seeded corpus with satisfiable and unsatisfiable formulas alternating
    as far as the generator allows."""
    rng = random.Random(seed)
    out: list[Formula] = []
    want_sat = True
    tries = 0
    while len(out) < count:
        f = random_nas_formula(rng, max_vars, max_clauses)
        tries += 1
        sat = brute_force_sat(f) is not None
        if sat == want_sat or tries > 50:
            out.append(f)
            want_sat = not want_sat
            tries = 0
    return out


def random_3cnf(rng: random.Random, max_vars: int = 8, max_clauses: int = 8) -> Formula:
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        size = rng.randint(1, min(3, n))
        vs = rng.sample(range(1, n + 1), size)
        clauses.append(Clause(tuple(Literal(v, rng.random() < 0.5) for v in vs)))
    return Formula(n, tuple(clauses))


def _all_clauses(n: int) -> list[tuple[int, ...]]:
    from itertools import combinations, product

    out = []
    for size in (1, 2, 3):
        for vs in combinations(range(1, n + 1), size):
            for signs in product((1, -1), repeat=size):
                out.append(tuple(v * s for v, s in zip(vs, signs)))
    return out


def exhaustive_3cnf(max_vars: int = 4, max_clauses: int = 4) -> list[Formula]:
    """Every set of at most ``max_clauses`` distinct clauses over
    ``max_vars`` variables, one representative per orbit of variable
    permutations and polarity flips."""
    from itertools import combinations, permutations, product

    import numpy as np

    n = max_vars
    clauses = _all_clauses(n)
    index = {frozenset(c): i for i, c in enumerate(clauses)}
    groups = []
    for perm in permutations(range(1, n + 1)):
        for flips in product((1, -1), repeat=n):
            table = []
            for c in clauses:
                mapped = frozenset(perm[abs(l) - 1] * flips[abs(l) - 1] * (1 if l > 0 else -1) for l in c)
                table.append(index[mapped])
            groups.append(np.array(table, dtype=np.int64))
    base = len(clauses) + 1
    reps = []
    reps.append(Formula(n, ()))
    for k in range(1, max_clauses + 1):
        combos = np.array(list(combinations(range(len(clauses)), k)), dtype=np.int64)
        best = None
        for table in groups:
            mapped = np.sort(table[combos], axis=1)
            code = np.zeros(len(combos), dtype=np.int64)
            for col in range(k):
                code = code * base + mapped[:, col] + 1
            best = code if best is None else np.minimum(best, code)
        own = np.zeros(len(combos), dtype=np.int64)
        for col in range(k):
            own = own * base + combos[:, col] + 1
        for row in combos[best == own]:
            reps.append(Formula.from_ints(n, [clauses[i] for i in row]))
    return reps
