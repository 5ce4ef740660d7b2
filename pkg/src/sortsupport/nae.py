"""Not-All-Equal 3SAT formulas: DIMACS input, occurrence balancing, brute-force oracle."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

Clause = Tuple[int, int, int]
Assignment = Tuple[bool, ...]
"""Truth values of x_1..x_p; ``a[j - 1]`` is the value of x_j."""

MAX_ORACLE_VARS = 24


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of three-literal clauses over x_1..x_p.

    A literal is ``+j`` for x_j and ``-j`` for its negation. ``unit_clauses``
    lists the indices of clauses that came from single-literal input; they are
    stored as ``(l, l, l)``, which no assignment can make not-all-equal.
    """

    num_vars: int
    clauses: Tuple[Clause, ...]
    unit_clauses: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} does not have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def k(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> list[tuple[int, int]]:
        """``(positive, negative)`` occurrence counts for x_1..x_p."""
        counts = [[0, 0] for _ in range(self.num_vars)]
        for clause in self.clauses:
            for lit in clause:
                counts[abs(lit) - 1][0 if lit > 0 else 1] += 1
        return [(pos, neg) for pos, neg in counts]

    def is_balanced(self) -> bool:
        return all(pos == neg for pos, neg in self.occurrences())


def parse_dimacs(text: str) -> CnfFormula:
    """Read a DIMACS CNF document.

    Two-literal clauses get their last literal duplicated, which keeps the
    not-all-equal meaning. Single-literal clauses are tripled and flagged.
    """
    header: Optional[tuple[int, int]] = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError:
            raise DimacsError(f"line {lineno}: non-integer token in {line!r}") from None
    if header is None:
        raise DimacsError("missing 'p cnf <vars> <clauses>' header")
    num_vars, _declared = header

    raw_clauses: list[list[int]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            raw_clauses.append(current)
            current = []
            continue
        if abs(tok) > num_vars:
            raise DimacsError(f"literal {tok} out of range 1..{num_vars}")
        current.append(tok)
    if current:
        raw_clauses.append(current)

    clauses: list[Clause] = []
    units: list[int] = []
    for lits in raw_clauses:
        if len(lits) > 3:
            raise DimacsError(f"clause {lits} has more than 3 literals")
        if not lits:
            raise DimacsError("empty clause")
        if len(lits) == 1:
            units.append(len(clauses))
            lits = lits * 3
        elif len(lits) == 2:
            lits = lits + [lits[-1]]
        clauses.append((lits[0], lits[1], lits[2]))
    return CnfFormula(num_vars, tuple(clauses), tuple(units))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.k}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses)
    return "\n".join(lines) + "\n"


def balance_occurrences(f: CnfFormula) -> CnfFormula:
    """Pad with ``(x v x v -x)`` / ``(x v -x v -x)`` until each x_j is balanced.

    Padding clauses hold one literal of each sign, so every assignment leaves
    them not-all-equal. Clauses are appended in variable order.
    """
    extra: list[Clause] = []
    for j, (pos, neg) in enumerate(f.occurrences(), 1):
        if pos > neg:
            extra.extend([(j, -j, -j)] * (pos - neg))
        elif neg > pos:
            extra.extend([(j, j, -j)] * (neg - pos))
    if not extra:
        return f
    return CnfFormula(f.num_vars, f.clauses + tuple(extra), f.unit_clauses)


def literal_value(lit: int, a: Sequence[bool]) -> bool:
    value = a[abs(lit) - 1]
    return value if lit > 0 else not value


def nae_check(f: CnfFormula, a: Sequence[bool]) -> bool:
    """Every clause has at least one true and at least one false literal."""
    if len(a) != f.num_vars:
        raise ValueError(f"assignment has {len(a)} values, formula has {f.num_vars} variables")
    for clause in f.clauses:
        values = {literal_value(lit, a) for lit in clause}
        if len(values) != 2:
            return False
    return True


def nae_brute_force(f: CnfFormula) -> Optional[Assignment]:
    """First not-all-equal assignment in lexicographic order (False < True), or None."""
    if f.num_vars > MAX_ORACLE_VARS:
        raise ValueError(f"brute force is limited to {MAX_ORACLE_VARS} variables")
    for a in itertools.product((False, True), repeat=f.num_vars):
        if nae_check(f, a):
            return a
    return None


def random_formula(num_vars: int, num_clauses: int, rng: random.Random) -> CnfFormula:
    """Random 3-literal clauses in which every one of the variables occurs."""
    if num_vars < 1 or num_clauses < 1 or 3 * num_clauses < num_vars:
        raise ValueError("cannot cover every variable with that many clauses")
    while True:
        clauses = tuple(
            tuple(rng.choice((1, -1)) * rng.randint(1, num_vars) for _ in range(3))
            for _ in range(num_clauses)
        )
        if {abs(lit) for clause in clauses for lit in clause} == set(range(1, num_vars + 1)):
            return CnfFormula(num_vars, clauses)  # type: ignore[arg-type]


def enumerate_formulas(max_vars: int, max_clauses: int):
    """Every formula with p <= max_vars and k <= max_clauses, up to symmetry.

    Literal order inside a clause, clause order and variable renaming are
    factored out; every variable 1..p must occur. Yields canonical forms in a
    fixed order.
    """
    for p in range(1, max_vars + 1):
        lits = sorted(s * j for j in range(1, p + 1) for s in (1, -1))
        all_clauses = list(itertools.combinations_with_replacement(lits, 3))
        perms = list(itertools.permutations(range(1, p + 1)))
        seen: set = set()
        for k in range(1, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(all_clauses, k):
                if {abs(lit) for clause in combo for lit in clause} != set(range(1, p + 1)):
                    continue
                canon = min(
                    tuple(sorted(
                        tuple(sorted(perm[abs(lit) - 1] * (1 if lit > 0 else -1) for lit in clause))
                        for clause in combo
                    ))
                    for perm in perms
                )
                if canon in seen:
                    continue
                seen.add(canon)
                yield CnfFormula(p, canon)
