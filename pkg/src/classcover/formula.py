"""CNF formulas: data model, DIMACS I/O, exhaustive SAT oracle, NAS-CNF checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

DEFAULT_ORACLE_CAP = 24


class DimacsError(ValueError):
    """Malformed DIMACS input; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def __int__(self) -> int:
        return -self.var if self.negated else self.var

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value < 0)

    def satisfied_by(self, values: Sequence[bool]) -> bool:
        return values[self.var - 1] != self.negated

    def __str__(self) -> str:
        return f"{'¬' if self.negated else ''}x{self.var}"


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise ValueError("empty clause")

    @classmethod
    def of(cls, *ints: int) -> "Clause":
        return cls(tuple(Literal.from_int(i) for i in ints))

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def ints(self) -> list[int]:
        return [int(lit) for lit in self.literals]

    @property
    def variables(self) -> list[int]:
        return [lit.var for lit in self.literals]

    @property
    def is_mixed(self) -> bool:
        signs = {lit.negated for lit in self.literals}
        return len(signs) == 2

    @property
    def is_tautology(self) -> bool:
        lits = set(self.literals)
        return any(-lit in lits for lit in lits)

    def satisfied_by(self, values: Sequence[bool]) -> bool:
        return any(lit.satisfied_by(values) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " ∨ ".join(str(lit) for lit in self.literals) + ")"


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[Clause, ...] = ()
    var_names: Optional[dict] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        for i, clause in enumerate(self.clauses):
            for lit in clause:
                if lit.var > self.num_vars:
                    raise ValueError(
                        f"clause {i} uses x{lit.var} but formula has {self.num_vars} variables"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]], var_names=None) -> "Formula":
        return cls(num_vars, tuple(Clause.of(*c) for c in clauses), var_names)

    def to_ints(self) -> list[list[int]]:
        return [c.ints() for c in self.clauses]

    def name(self, var: int) -> str:
        if self.var_names and var in self.var_names:
            return self.var_names[var]
        return f"x{var}"

    def __str__(self) -> str:
        if not self.clauses:
            return "⊤"
        return " ∧ ".join(str(c) for c in self.clauses)


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, var: int) -> bool:
        """Value of variable ``var`` (1-based)."""
        return self.values[var - 1]

    @classmethod
    def from_ints(cls, num_vars: int, true_vars: Iterable[int]) -> "Assignment":
        true_vars = set(true_vars)
        return cls(tuple(v in true_vars for v in range(1, num_vars + 1)))


@dataclass(frozen=True)
class NasViolation:
    clause: int
    condition: int
    explanation: str


@dataclass(frozen=True)
class NasReport:
    violations: tuple[NasViolation, ...] = ()

    @property
    def is_nas(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# DIMACS


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text.

    Clauses may span lines; each must be terminated by ``0``.  Empty clauses
    are rejected rather than dropped.
    """
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []
    current_start = 0
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, f"malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(lineno, "negative counts in header")
            continue
        if num_vars is None:
            raise DimacsError(lineno, "clause before header")
        for tok in line.split():
            try:
                value = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if value == 0:
                if not current:
                    raise DimacsError(lineno, "empty clause")
                clauses.append(Clause.of(*current))
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsError(lineno, f"literal {value} exceeds declared {num_vars} variables")
            if not current:
                current_start = lineno
            current.append(value)
    if num_vars is None:
        raise DimacsError(max(lineno, 1), "missing header")
    if current:
        raise DimacsError(current_start, "clause missing terminating 0")
    if len(clauses) != num_clauses:
        raise DimacsError(lineno, f"header declares {num_clauses} clauses, found {len(clauses)}")
    return Formula(num_vars, tuple(clauses))


def write_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, c.ints())) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Semantics


def evaluate(f: Formula, a: Assignment) -> bool:
    if len(a) != f.num_vars:
        raise ValueError(f"assignment has {len(a)} values, formula has {f.num_vars} variables")
    return all(c.satisfied_by(a.values) for c in f.clauses)


def brute_force_sat(f: Formula, cap: int = DEFAULT_ORACLE_CAP) -> Optional[Assignment]:
    """Lexicographically first satisfying assignment (False < True, x1 most
    significant), or None.

    The search walks assignments in that order and abandons a prefix as soon
    as some clause over fully assigned variables is falsified, which does not
    change the result.
    """
    if f.num_vars > cap:
        raise OracleCapExceeded(f"{f.num_vars} variables exceeds oracle cap {cap}")
    n = f.num_vars
    # clauses indexed by their largest variable: checkable once it is set
    by_last: list[list[tuple[tuple[int, bool], ...]]] = [[] for _ in range(n + 1)]
    for c in f.clauses:
        lits = tuple((lit.var - 1, lit.negated) for lit in c)
        by_last[max(lit.var for lit in c)].append(lits)
    values = [False] * n

    def ok(var: int) -> bool:
        for lits in by_last[var]:
            if not any(values[v] != neg for v, neg in lits):
                return False
        return True

    # iterative DFS; stack holds the next value to try at each depth
    depth = 0
    next_try = [0] * (n + 1)
    while True:
        if depth == n:
            return Assignment(tuple(values))
        choice = next_try[depth]
        if choice > 1:
            next_try[depth] = 0
            depth -= 1
            if depth < 0:
                return None
            next_try[depth] += 1
            continue
        values[depth] = bool(choice)
        if ok(depth + 1):
            depth += 1
            next_try[depth] = 0
        else:
            next_try[depth] += 1


def all_assignments(num_vars: int):
    """Every assignment over ``num_vars`` variables in lexicographic order."""
    for bits in range(1 << num_vars):
        yield Assignment(tuple(bool(bits >> (num_vars - 1 - i) & 1) for i in range(num_vars)))


# ---------------------------------------------------------------------------
# NAS-CNF


def validate_nas(f: Formula) -> NasReport:
    """Check the NAS-CNF conditions.

    Condition 1 (CNF form) holds by construction of :class:`Formula`, so it
    is never reported.  Condition 4 counts literals, not variables: x and ¬x
    may each sit in their own size-3 clause.
    """
    violations = []
    first_size3: dict[Literal, int] = {}
    for i, c in enumerate(f.clauses):
        if len(c) > 3:
            violations.append(NasViolation(i, 2, f"clause has {len(c)} literals"))
        if len(c) > 1 and not c.is_mixed:
            kind = "negated" if not c.literals[0].negated else "non-negated"
            violations.append(NasViolation(i, 3, f"no literal in {kind} form"))
        if len(c) == 3:
            for lit in dict.fromkeys(c.literals):
                if lit in first_size3:
                    violations.append(
                        NasViolation(i, 4, f"literal {lit} already in size-3 clause {first_size3[lit]}")
                    )
                else:
                    first_size3[lit] = i
    return NasReport(tuple(violations))


def normalize(f: Formula) -> Formula:
    """Drop duplicate literals, tautologies and repeated clauses."""
    seen = set()
    out = []
    for c in f.clauses:
        lits = tuple(dict.fromkeys(c.literals))
        clause = Clause(lits)
        if clause.is_tautology:
            continue
        key = frozenset(lits)
        if key in seen:
            continue
        seen.add(key)
        out.append(clause)
    return Formula(f.num_vars, tuple(out), f.var_names)
