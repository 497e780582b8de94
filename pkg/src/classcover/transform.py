"""3-CNF to NAS-CNF transformation with variable provenance."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .formula import Clause, Formula, Literal, normalize


@dataclass(frozen=True)
class Origin:
    """Where an output variable came from.

    kind is one of ``original``, ``fresh`` (the w of a uniform clause),
    ``T``, ``F`` or ``copy``.  ``ref`` is the original variable for
    ``original``, the input clause index for ``fresh`` and the copied
    variable for ``copy``.
    """

    kind: str
    ref: Optional[int] = None

    def label(self, var: int) -> str:
        if self.kind == "original":
            return f"x{self.ref}"
        if self.kind == "fresh":
            return f"w{self.ref + 1}"
        if self.kind in ("T", "F"):
            return self.kind
        return f"x{var}~copy_of_{self.ref}"


@dataclass
class VarMap:
    origin: dict[int, Origin] = field(default_factory=dict)

    def originals(self) -> dict[int, int]:
        """Output variable -> original variable, for original variables."""
        return {v: o.ref for v, o in self.origin.items() if o.kind == "original"}

    def copies(self) -> dict[int, int]:
        return {v: o.ref for v, o in self.origin.items() if o.kind == "copy"}

    def project(self, values, num_original: int) -> list[bool]:
        out = [False] * num_original
        for v, orig in self.originals().items():
            out[orig - 1] = values[v - 1]
        return out

    def to_json(self) -> str:
        payload = {str(v): {"kind": o.kind, "ref": o.ref} for v, o in sorted(self.origin.items())}
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "VarMap":
        data = json.loads(text)
        return cls({int(v): Origin(d["kind"], d["ref"]) for v, d in data.items()})


class _Allocator:
    def __init__(self, start: int):
        self.last = start

    def __call__(self) -> int:
        self.last += 1
        return self.last


def _uniform(c: Clause) -> bool:
    return len(c) > 1 and not c.is_mixed


def eliminate_uniform_size3(c: Clause, fresh: int, t_var: int, f_var: int) -> list[Clause]:
    """Split a uniform 3-clause around the fresh variable ``fresh``.

    (x ∨ y ∨ z)    -> (x ∨ y ∨ ¬w) (w ∨ z ∨ ¬T) (¬w ∨ ¬z ∨ F)
    (¬x ∨ ¬y ∨ ¬z) -> (¬x ∨ ¬y ∨ w) (w ∨ z ∨ ¬T) (¬w ∨ ¬z ∨ F)

    The units (T) and (¬F) are the caller's job, once per formula.
    """
    if len(c) != 3 or not _uniform(c):
        raise ValueError(f"{c} is not a uniform size-3 clause")
    x, y, z = c.literals
    w = Literal(fresh)
    zv = Literal(z.var)
    positive = not x.negated
    head = Clause((x, y, -w if positive else w))
    return [
        head,
        Clause((w, zv, Literal(t_var, True))),
        Clause((-w, -zv, Literal(f_var))),
    ]


def pad_short_uniform(c: Clause, t_var: int, f_var: int) -> list[Clause]:
    """(x ∨ y) -> (x ∨ y ∨ ¬T); (¬x ∨ ¬y) -> (¬x ∨ ¬y ∨ F); mixed clauses pass."""
    if len(c) != 2:
        raise ValueError(f"{c} is not a size-2 clause")
    if c.is_mixed:
        return [c]
    if c.literals[0].negated:
        return [Clause(c.literals + (Literal(f_var),))]
    return [Clause(c.literals + (Literal(t_var, True),))]


def split_size3_occurrences(f: Formula, varmap: Optional[VarMap] = None) -> tuple[Formula, VarMap]:
    """Rename repeated size-3 occurrences of a literal to fresh copies.

    The first size-3 occurrence keeps the variable; every later one gets a
    new copy c tied to it by (x ∨ ¬c) ∧ (¬x ∨ c).  Literals are counted
    separately per polarity.
    """
    if varmap is None:
        varmap = VarMap({v: Origin("original", v) for v in range(1, f.num_vars + 1)})
    else:
        varmap = VarMap(dict(varmap.origin))
    alloc = _Allocator(f.num_vars)
    seen: set[Literal] = set()
    clauses = []
    links = []
    for c in f.clauses:
        if len(c) != 3:
            clauses.append(c)
            continue
        lits = []
        for lit in c:
            if lit in seen:
                copy = alloc()
                varmap.origin[copy] = Origin("copy", lit.var)
                links.append(Clause((Literal(lit.var), Literal(copy, True))))
                links.append(Clause((Literal(lit.var, True), Literal(copy))))
                lits.append(Literal(copy, lit.negated))
            else:
                seen.add(lit)
                lits.append(lit)
        clauses.append(Clause(tuple(lits)))
    return Formula(alloc.last, tuple(clauses + links)), varmap


def sat_to_nas(f: Formula) -> tuple[Formula, VarMap]:
    """Transform a CNF formula with clauses of size <= 3 into an
    equisatisfiable NAS-CNF formula.

    Variables 1..n keep their meaning; fresh w variables follow, then T and
    F when needed, then copies.
    """
    for i, c in enumerate(f.clauses):
        if len(c) > 3:
            raise ValueError(f"clause {i} has {len(c)} literals; only 3-CNF is supported")
    f = normalize(f)
    varmap = VarMap({v: Origin("original", v) for v in range(1, f.num_vars + 1)})
    alloc = _Allocator(f.num_vars)
    needs_globals = any(_uniform(c) for c in f.clauses)
    t_var = f_var = 0
    if needs_globals:
        t_var, f_var = alloc(), alloc()
        varmap.origin[t_var] = Origin("T")
        varmap.origin[f_var] = Origin("F")
    out: list[Clause] = []
    for i, c in enumerate(f.clauses):
        if len(c) == 3 and _uniform(c):
            w = alloc()
            varmap.origin[w] = Origin("fresh", i)
            out += eliminate_uniform_size3(c, w, t_var, f_var)
        elif len(c) == 2:
            out += pad_short_uniform(c, t_var, f_var)
        else:
            out.append(c)
    if needs_globals:
        out += [Clause((Literal(t_var),)), Clause((Literal(f_var, True),))]
    staged = Formula(alloc.last, tuple(out))
    result, varmap = split_size3_occurrences(staged, varmap)
    names = {v: o.label(v) for v, o in varmap.origin.items()}
    return Formula(result.num_vars, result.clauses, names), varmap
