"""3SAT to minimum generating set of a commutative magma, with SAT and MGS oracles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedInput, NotApplicable, TooLarge
from .tables import CayleyTable

__all__ = [
    "CnfFormula",
    "ReductionOutput",
    "parse_dimacs",
    "serialize_dimacs",
    "read_dimacs",
    "reduce_3sat",
    "brute_sat",
    "random_cnf",
    "element_layout",
]


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of at most three literals; literal v > 0 is variable v, -v its negation."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for c in self.clauses:
            if not c:
                raise MalformedInput("empty clause")
            if len(c) > 3:
                raise MalformedInput(f"clause {c} has more than three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise MalformedInput(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        return all(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    n = m = None
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedInput("header must be 'p cnf <vars> <clauses>'", line=lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedInput("non-integer header", line=lineno) from None
            continue
        if n is None:
            raise MalformedInput("clause before header", line=lineno)
        for tok in s.split():
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedInput(f"bad literal {tok!r}", line=lineno) from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if n is None:
        raise MalformedInput("missing 'p cnf' header")
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != m:
        raise MalformedInput(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def serialize_dimacs(f: CnfFormula) -> str:
    out = [f"p cnf {f.num_vars} {f.num_clauses}\n"]
    out += [" ".join(map(str, c)) + " 0\n" for c in f.clauses]
    return "".join(out)


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text())


@dataclass(frozen=True)
class ReductionOutput:
    magma: CayleyTable
    threshold: int
    element_names: tuple[str, ...]

    def names_text(self) -> str:
        return "".join(f"{i} {name}\n" for i, name in enumerate(self.element_names))


def element_layout(n: int, m: int, unital: bool = False) -> dict[str, int]:
    """Index of every named element: X1..Xn, ~X1..~Xn, C1..Cm, S{j},{k} (j <= k,
    row-major), then the trash element 0 and, if unital, the identity e."""
    names = [f"X{i}" for i in range(1, n + 1)]
    names += [f"~X{i}" for i in range(1, n + 1)]
    names += [f"C{j}" for j in range(1, m + 1)]
    names += [f"S{j},{k}" for j in range(1, m + 1) for k in range(j, m + 1)]
    names.append("0")
    if unital:
        names.append("e")
    return {name: i for i, name in enumerate(names)}


def reduce_3sat(f: CnfFormula, unital: bool = False) -> ReductionOutput:
    """Commutative magma with a generating set of size n+m (n+m+1 if unital) iff f is satisfiable.

    Products: C_j * lit = S_{j,j} for each literal of clause j, S * X_i = ~X_i and
    S * ~X_i = X_i with S = S_{1,m}, S_{j,k} * S_{k+1,l} = S_{j,l}; everything
    else is 0.  The unital variant adjoins an identity.
    """
    n, m = f.num_vars, f.num_clauses
    if m == 0:
        raise NotApplicable("the reduction needs at least one clause")
    idx = element_layout(n, m, unital)
    size = len(idx)
    zero = idx["0"]
    grid = [[zero] * size for _ in range(size)]

    def put(a: int, b: int, c: int) -> None:
        grid[a][b] = grid[b][a] = c

    def lit_index(lit: int) -> int:
        return idx[f"X{lit}"] if lit > 0 else idx[f"~X{-lit}"]

    for j, clause in enumerate(f.clauses, start=1):
        for lit in clause:
            put(idx[f"C{j}"], lit_index(lit), idx[f"S{j},{j}"])
    s = idx[f"S1,{m}"]
    for i in range(1, n + 1):
        put(s, idx[f"X{i}"], idx[f"~X{i}"])
        put(s, idx[f"~X{i}"], idx[f"X{i}"])
    for j in range(1, m + 1):
        for k in range(j, m):
            for l in range(k + 1, m + 1):
                put(idx[f"S{j},{k}"], idx[f"S{k + 1},{l}"], idx[f"S{j},{l}"])
    if unital:
        e = idx["e"]
        for a in range(size):
            put(e, a, a)
    names = tuple(sorted(idx, key=idx.__getitem__))
    table = CayleyTable.from_rows(grid, name=f"sat{n}x{m}{'u' if unital else ''}")
    return ReductionOutput(table, n + m + (1 if unital else 0), names)


def brute_sat(f: CnfFormula, cap: int = 24) -> tuple[bool, ...] | None:
    """First satisfying assignment in binary counting order (variable 1 most significant)."""
    if f.num_vars > cap:
        raise TooLarge(f"brute_sat capped at {cap} variables")
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(bits):
            return bits
    return None


def random_cnf(num_vars: int, num_clauses: int, seed: int, max_width: int = 3) -> CnfFormula:
    """Seeded random formula; clause widths are drawn from 1..max_width so that
    short clauses make a fair share of instances unsatisfiable."""
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        width = rng.randint(1, max_width)
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, num_vars) for _ in range(width)))
    return CnfFormula(num_vars, tuple(clauses))
