"""Generators for standard families of tables (the test and benchmark corpus)."""

from __future__ import annotations

import itertools
import random
import re

from .errors import MalformedInput, UnsupportedSize
from .tables import CayleyTable, relabel

__all__ = [
    "cyclic",
    "elementary_abelian",
    "abelian",
    "dihedral",
    "dicyclic",
    "quaternion",
    "symmetric",
    "alternating",
    "direct_product",
    "steiner_quasigroup",
    "random_latin",
    "permuted",
    "generate_family",
]


def cyclic(n: int) -> CayleyTable:
    if n < 1:
        raise UnsupportedSize("cyclic group order must be positive")
    return CayleyTable.from_function(n, lambda a, b: (a + b) % n, name=f"Z{n}")


def elementary_abelian(p: int, k: int) -> CayleyTable:
    if p < 2 or k < 0:
        raise UnsupportedSize("need a prime p and k >= 0")
    t = cyclic(1)
    for _ in range(k):
        t = direct_product(t, cyclic(p)) if t.n > 1 else cyclic(p)
    return CayleyTable(t.n, t.entries, name=f"Z{p}^{k}")


def abelian(*orders: int) -> CayleyTable:
    """Direct product of cyclic groups of the given orders."""
    t = cyclic(orders[0])
    for m in orders[1:]:
        t = direct_product(t, cyclic(m))
    return CayleyTable(t.n, t.entries, name="x".join(f"Z{m}" for m in orders))


def dihedral(n: int) -> CayleyTable:
    """Symmetries of the n-gon, order 2n. Element ``i + n*j`` is ``r^i s^j``."""
    if n < 1:
        raise UnsupportedSize("dihedral needs n >= 1")

    def op(a: int, b: int) -> int:
        i1, j1 = a % n, a // n
        i2, j2 = b % n, b // n
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        return i + n * ((j1 + j2) % 2)

    return CayleyTable.from_function(2 * n, op, name=f"D{n}")


def dicyclic(n: int) -> CayleyTable:
    """Dicyclic group of order 4n; ``dicyclic(2)`` is the quaternion group."""
    if n < 1:
        raise UnsupportedSize("dicyclic needs n >= 1")
    m = 2 * n

    def op(a: int, b: int) -> int:
        i1, j1 = a % m, a // m
        i2, j2 = b % m, b // m
        if j1 == 0:
            return (i1 + i2) % m + m * j2
        if j2 == 0:
            return (i1 - i2) % m + m
        return (i1 - i2 + n) % m

    return CayleyTable.from_function(2 * m, op, name=f"Dic{n}")


def quaternion() -> CayleyTable:
    t = dicyclic(2)
    return CayleyTable(t.n, t.entries, name="Q8")


def _permutation_table(perms: list[tuple[int, ...]], name: str) -> CayleyTable:
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    return CayleyTable.from_function(
        len(perms), lambda a, b: index[tuple(perms[a][x] for x in perms[b])], name=name
    )


def symmetric(n: int) -> CayleyTable:
    """Symmetric group on n points, permutations in lexicographic order (identity first)."""
    if not 1 <= n <= 5:
        raise UnsupportedSize("symmetric(n) supports 1 <= n <= 5")
    return _permutation_table(list(itertools.permutations(range(n))), f"S{n}")


def _parity(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def alternating(n: int) -> CayleyTable:
    if not 1 <= n <= 5:
        raise UnsupportedSize("alternating(n) supports 1 <= n <= 5")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _permutation_table(perms, f"A{n}")


def direct_product(a: CayleyTable, b: CayleyTable) -> CayleyTable:
    """Componentwise product; element ``i*|b| + j`` is the pair (i, j)."""
    m = b.n

    def op(x: int, y: int) -> int:
        return a.mul(x // m, y // m) * m + b.mul(x % m, y % m)

    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return CayleyTable.from_function(a.n * m, op, name=name)


def steiner_quasigroup(sts) -> CayleyTable:
    from .latin import sts_to_quasigroup

    return sts_to_quasigroup(sts)


def random_latin(n: int, seed: int) -> CayleyTable:
    """Seeded random Latin square built row by row with cell-level backtracking."""
    if not 1 <= n <= 9:
        raise UnsupportedSize("random_latin supports 1 <= n <= 9")
    rng = random.Random(seed)
    grid = [[-1] * n for _ in range(n)]
    col_used = [set() for _ in range(n)]
    orders = [[rng.sample(range(n), n) for _ in range(n)] for _ in range(n)]

    def fill(cell: int, row_used: set[int]) -> bool:
        if cell == n * n:
            return True
        r, c = divmod(cell, n)
        if c == 0:
            row_used = set()
        for v in orders[r][c]:
            if v in row_used or v in col_used[c]:
                continue
            grid[r][c] = v
            row_used.add(v)
            col_used[c].add(v)
            if fill(cell + 1, row_used):
                return True
            row_used.discard(v)
            col_used[c].discard(v)
        grid[r][c] = -1
        return False

    fill(0, set())
    return CayleyTable.from_rows(grid, name=f"latin{n}s{seed}")


def permuted(t: CayleyTable, seed: int) -> CayleyTable:
    """Isomorphic copy under a seeded random relabelling."""
    perm = list(range(t.n))
    random.Random(seed).shuffle(perm)
    name = f"{t.name}~{seed}" if t.name else None
    return relabel(t, perm, name=name)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_./~][A-Za-z0-9_.\-/~]*)|(.))")


def _lex(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        num, ident, punct = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        elif punct is not None and not punct.isspace():
            out.append(("p", punct))
    return out


def generate_family(descriptor: str) -> CayleyTable:
    """Build a table from a descriptor such as ``direct_product(cyclic(2), dihedral(3))``.

    Supported: cyclic(n), elementary_abelian(p,k), dihedral(n), dicyclic(n),
    quaternion(), symmetric(n), alternating(n), direct_product(a,b),
    steiner_quasigroup(fano|ag23|trivial3|<path.sts>), random_latin(n,seed),
    permuted(t,seed).
    """
    toks = _lex(descriptor)
    pos = 0

    def expect(kind, value=None):
        nonlocal pos
        if pos >= len(toks) or toks[pos][0] != kind or (value is not None and toks[pos][1] != value):
            got = toks[pos][1] if pos < len(toks) else "end of input"
            raise MalformedInput(f"bad family descriptor {descriptor!r}: unexpected {got!r}")
        pos += 1
        return toks[pos - 1][1]

    def peek():
        return toks[pos] if pos < len(toks) else None

    def arg():
        if pos < len(toks) and toks[pos][0] == "int":
            return expect("int")
        return term()

    def term():
        nonlocal pos
        name = expect("id")
        args = []
        if peek() == ("p", "("):
            expect("p", "(")
            if peek() != ("p", ")"):
                args.append(arg())
                while peek() == ("p", ","):
                    expect("p", ",")
                    args.append(arg())
            expect("p", ")")
        return _build(name, args)

    result = term()
    if pos != len(toks):
        raise MalformedInput(f"trailing input in family descriptor {descriptor!r}")
    if not isinstance(result, CayleyTable):
        raise MalformedInput(f"descriptor {descriptor!r} does not name a table")
    return result


def _build(name: str, args: list):
    from . import latin

    simple = {
        "cyclic": cyclic,
        "elementary_abelian": elementary_abelian,
        "dihedral": dihedral,
        "dicyclic": dicyclic,
        "quaternion": quaternion,
        "symmetric": symmetric,
        "alternating": alternating,
        "direct_product": direct_product,
        "random_latin": random_latin,
        "permuted": permuted,
        "steiner_quasigroup": steiner_quasigroup,
    }
    designs = {"fano": latin.fano, "ag23": latin.affine_sts9, "trivial3": latin.trivial_sts3}
    if name in designs:
        return designs[name]()
    if name not in simple:
        # bare word: a path to an .sts file
        return name
    if name == "steiner_quasigroup" and args and isinstance(args[0], str):
        return steiner_quasigroup(latin.read_sts(args[0]))
    try:
        return simple[name](*args)
    except TypeError as exc:
        raise MalformedInput(f"bad arguments for {name}: {exc}") from None
