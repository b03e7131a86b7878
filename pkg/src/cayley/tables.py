"""Finite algebras given by their multiplication tables.

Elements are the integers ``0 .. n-1``; the product ``a*b`` lives at
``entries[a*n + b]``.  Tables are immutable once built and carry their
classification (magma ... abelian group), computed eagerly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import MalformedInput, NotAGroup, NotAQuasigroup, NotNormal, NotSubgroup

__all__ = [
    "AlgebraClass",
    "ElementSet",
    "CayleyTable",
    "classify",
    "parse_table",
    "serialize_table",
    "read_table",
    "write_table",
    "quotient_group",
    "restrict",
    "relabel",
]


class AlgebraClass(enum.Enum):
    MAGMA = "Magma"
    COMMUTATIVE_MAGMA = "CommutativeMagma"
    SEMIGROUP = "Semigroup"
    QUASIGROUP = "Quasigroup"
    LOOP = "Loop"
    GROUP = "Group"
    ABELIAN_GROUP = "AbelianGroup"

    def __str__(self) -> str:
        return self.value

    @property
    def is_semigroup(self) -> bool:
        return self in (AlgebraClass.SEMIGROUP, AlgebraClass.GROUP, AlgebraClass.ABELIAN_GROUP)

    @property
    def is_quasigroup(self) -> bool:
        return self in (
            AlgebraClass.QUASIGROUP,
            AlgebraClass.LOOP,
            AlgebraClass.GROUP,
            AlgebraClass.ABELIAN_GROUP,
        )

    @property
    def is_group(self) -> bool:
        return self in (AlgebraClass.GROUP, AlgebraClass.ABELIAN_GROUP)

    def __le__(self, other: "AlgebraClass") -> bool:
        return other in _ABOVE[self]

    def __lt__(self, other: "AlgebraClass") -> bool:
        return self != other and self <= other


_A = AlgebraClass
# reflexive-transitive closure of the class hierarchy (a partial order)
_ABOVE = {
    _A.MAGMA: set(_A),
    _A.COMMUTATIVE_MAGMA: {_A.COMMUTATIVE_MAGMA, _A.ABELIAN_GROUP},
    _A.SEMIGROUP: {_A.SEMIGROUP, _A.GROUP, _A.ABELIAN_GROUP},
    _A.QUASIGROUP: {_A.QUASIGROUP, _A.LOOP, _A.GROUP, _A.ABELIAN_GROUP},
    _A.LOOP: {_A.LOOP, _A.GROUP, _A.ABELIAN_GROUP},
    _A.GROUP: {_A.GROUP, _A.ABELIAN_GROUP},
    _A.ABELIAN_GROUP: {_A.ABELIAN_GROUP},
}


@dataclass(frozen=True)
class ElementSet:
    """Immutable set of element indices of an order-``n`` algebra, stored as a bitmask."""

    n: int
    bits: int = 0

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "ElementSet":
        bits = 0
        for x in elements:
            if not 0 <= x < n:
                raise ValueError(f"element {x} out of range for order {n}")
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.n and bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.bits & ~other.bits)

    def __le__(self, other: "ElementSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def sorted(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"


def _classify(entries: Sequence[int], n: int) -> AlgebraClass:
    t = np.asarray(entries, dtype=np.int64).reshape(n, n)
    commutative = bool(np.array_equal(t, t.T))
    rng = np.arange(n)
    latin = bool(np.all(np.sort(t, axis=1) == rng) and np.all(np.sort(t, axis=0) == rng[:, None]))
    associative = True
    # (ab)c == a(bc), checked in slabs of rows to bound memory
    step = max(1, (1 << 22) // (n * n))
    for start in range(0, n, step):
        rows = t[start : start + step]
        if not np.array_equal(t[rows], rows[:, t]):
            associative = False
            break
    if latin:
        identity = _find_identity(entries, n)
        if associative:
            return AlgebraClass.ABELIAN_GROUP if commutative else AlgebraClass.GROUP
        return AlgebraClass.LOOP if identity is not None else AlgebraClass.QUASIGROUP
    if associative:
        return AlgebraClass.SEMIGROUP
    if commutative:
        return AlgebraClass.COMMUTATIVE_MAGMA
    return AlgebraClass.MAGMA


def _find_identity(entries: Sequence[int], n: int) -> int | None:
    for e in range(n):
        if all(entries[e * n + x] == x and entries[x * n + e] == x for x in range(n)):
            return e
    return None


def classify(rows: Sequence[Sequence[int]] | Sequence[int], n: int | None = None) -> AlgebraClass:
    """Return the most specific algebra class whose axioms the table satisfies.

    Accepts either a list of rows or a flat length-``n*n`` sequence.
    """
    if n is None:
        if rows and isinstance(rows[0], Sequence):
            n = len(rows)
            rows = [x for row in rows for x in row]  # type: ignore[union-attr]
        else:
            n = math.isqrt(len(rows))
    return _classify(list(rows), n)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CayleyTable:
    """An order-``n`` algebra given by its flat multiplication table."""

    n: int
    entries: tuple[int, ...]
    kind: AlgebraClass = field(default=None, compare=False)  # type: ignore[assignment]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("order must be positive")
        entries = tuple(int(x) for x in self.entries)
        if len(entries) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} entries, got {len(entries)}")
        for x in entries:
            if not 0 <= x < self.n:
                raise ValueError(f"entry {x} out of range for order {self.n}")
        object.__setattr__(self, "entries", entries)
        if self.kind is None:
            object.__setattr__(self, "kind", _classify(entries, self.n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], name: str | None = None) -> "CayleyTable":
        n = len(rows)
        return cls(n, tuple(x for row in rows for x in row), name=name)

    @classmethod
    def from_function(cls, n: int, op, name: str | None = None) -> "CayleyTable":
        return cls(n, tuple(op(a, b) for a in range(n) for b in range(n)), name=name)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<CayleyTable{label} n={self.n} kind={self.kind}>"

    def mul(self, a: int, b: int) -> int:
        return self.entries[a * self.n + b]

    def row(self, a: int) -> tuple[int, ...]:
        return self.entries[a * self.n : (a + 1) * self.n]

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(a) for a in range(self.n)]

    def elements(self) -> range:
        return range(self.n)

    def full_set(self) -> ElementSet:
        return ElementSet.full(self.n)

    def subset(self, elements: Iterable[int]) -> ElementSet:
        return ElementSet.of(self.n, elements)

    @cached_property
    def identity(self) -> int | None:
        return _find_identity(self.entries, self.n)

    @cached_property
    def ldiv_entries(self) -> tuple[int, ...]:
        """``a\\b`` at ``[a*n + b]``: the unique x with a*x = b."""
        if not self.kind.is_quasigroup:
            raise NotAQuasigroup("left division needs a quasigroup")
        n, t = self.n, self.entries
        out = [0] * (n * n)
        for a in range(n):
            base = a * n
            for x in range(n):
                out[base + t[base + x]] = x
        return tuple(out)

    @cached_property
    def rdiv_entries(self) -> tuple[int, ...]:
        """``b/a`` at ``[b*n + a]``: the unique y with y*a = b."""
        if not self.kind.is_quasigroup:
            raise NotAQuasigroup("right division needs a quasigroup")
        n, t = self.n, self.entries
        out = [0] * (n * n)
        for y in range(n):
            for a in range(n):
                out[t[y * n + a] * n + a] = y
        return tuple(out)

    def ldiv(self, a: int, b: int) -> int:
        return self.ldiv_entries[a * self.n + b]

    def rdiv(self, b: int, a: int) -> int:
        return self.rdiv_entries[b * self.n + a]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        if not self.kind.is_group:
            raise NotAGroup(f"{self!r} is not a group")
        e = self.identity
        return tuple(self.ldiv(a, e) for a in range(self.n))

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def is_commutative(self) -> bool:
        n, t = self.n, self.entries
        return all(t[a * n + b] == t[b * n + a] for a in range(n) for b in range(a + 1, n))


def require_group(t: CayleyTable) -> None:
    if not t.kind.is_group:
        raise NotAGroup(f"{t!r} is not a group")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        col = 0
        toks = []
        for part in body.split():
            col = body.index(part, col)
            toks.append((part, col + 1))
            col += len(part)
        if toks:
            yield lineno, toks


def parse_table(text: bytes | str, name: str | None = None) -> CayleyTable:
    """Parse the ``.cay`` text format: order on the first line, then ``n`` rows."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"not UTF-8: {exc}") from exc
    lines = list(_tokens(text))
    if not lines:
        raise MalformedInput("empty input")
    lineno, toks = lines[0]
    if len(toks) != 1:
        raise MalformedInput("first line must hold only the order n", lineno, toks[0][1])
    try:
        n = int(toks[0][0])
    except ValueError:
        raise MalformedInput(f"order is not an integer: {toks[0][0]!r}", lineno, toks[0][1]) from None
    if n < 1:
        raise MalformedInput("order must be positive", lineno, toks[0][1])
    rows = lines[1:]
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else (rows[-1][0] if rows else lineno)
        raise MalformedInput(f"expected {n} rows, found {len(rows)}", where)
    entries = []
    for lineno, toks in rows:
        if len(toks) != n:
            raise MalformedInput(f"expected {n} entries, found {len(toks)}", lineno)
        for tok, col in toks:
            try:
                v = int(tok)
            except ValueError:
                raise MalformedInput(f"not an integer: {tok!r}", lineno, col) from None
            if not 0 <= v < n:
                raise MalformedInput(f"index {v} out of range [0, {n})", lineno, col)
            entries.append(v)
    return CayleyTable(n, tuple(entries), name=name)


def serialize_table(t: CayleyTable) -> bytes:
    out = [str(t.n)]
    out.extend(" ".join(map(str, t.row(a))) for a in range(t.n))
    return ("\n".join(out) + "\n").encode("utf-8")


def read_table(path) -> CayleyTable:
    with open(path, "rb") as fh:
        return parse_table(fh.read(), name=str(path))


def write_table(t: CayleyTable, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_table(t))


def _check_subgroup(g: CayleyTable, sub: ElementSet) -> list[int]:
    elems = list(sub)
    if g.identity not in sub:
        raise NotSubgroup("subset does not contain the identity")
    n, t = g.n, g.entries
    for a in elems:
        for b in elems:
            if t[a * n + b] not in sub:
                raise NotSubgroup(f"{a}*{b} leaves the subset")
    return elems


def quotient_group(g: CayleyTable, n_sub: ElementSet) -> tuple[CayleyTable, list[int]]:
    """Quotient ``g / n_sub`` with cosets numbered by their minimal representative.

    Returns the quotient table and ``coset_map`` sending each element of ``g``
    to the index of its coset.
    """
    require_group(g)
    elems = _check_subgroup(g, n_sub)
    n, t, inv = g.n, g.entries, g.inverses
    for x in range(n):
        for a in elems:
            if t[t[x * n + a] * n + inv[x]] not in n_sub:
                raise NotNormal(f"conjugating {a} by {x} leaves the subgroup")
    coset_map = [-1] * n
    reps = []
    for x in range(n):
        if coset_map[x] == -1:
            idx = len(reps)
            reps.append(x)
            for a in elems:
                coset_map[t[x * n + a]] = idx
    m = len(reps)
    entries = tuple(coset_map[t[r * n + s]] for r in reps for s in reps)
    name = f"{g.name}/N" if g.name else None
    return CayleyTable(m, entries, name=name), coset_map


def restrict(t: CayleyTable, subset: ElementSet, name: str | None = None) -> tuple[CayleyTable, list[int]]:
    """Sub-algebra on a product-closed subset, relabelled by ascending index.

    Returns the table and the list mapping new labels back to old elements.
    """
    elems = list(subset)
    pos = {x: i for i, x in enumerate(elems)}
    n = t.n
    try:
        entries = tuple(pos[t.entries[a * n + b]] for a in elems for b in elems)
    except KeyError:
        raise NotSubgroup("subset is not closed under the product") from None
    return CayleyTable(len(elems), entries, name=name), elems


def relabel(t: CayleyTable, perm: Sequence[int], name: str | None = None) -> CayleyTable:
    """Isomorphic copy under the relabelling ``x -> perm[x]``."""
    n = t.n
    out = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            out[perm[a] * n + perm[b]] = perm[t.entries[a * n + b]]
    return CayleyTable(n, tuple(out), kind=t.kind, name=name)
