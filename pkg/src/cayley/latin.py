"""Latin squares as triple systems: parastrophes, isotopy, main classes, Steiner triple
systems and Latin square graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidDesign, LengthMismatch, MalformedInput, NotAQuasigroup
from .tables import CayleyTable

__all__ = [
    "Sts",
    "TripleSystem",
    "IsotopyWitness",
    "PARASTROPHES",
    "fano",
    "affine_sts9",
    "trivial_sts3",
    "parse_sts",
    "serialize_sts",
    "read_sts",
    "write_sts",
    "sts_to_quasigroup",
    "sts_from_quasigroup",
    "triple_system",
    "from_triples",
    "parastrophe",
    "isotopy",
    "verify_isotopy",
    "main_class_iso",
    "latin_square_graph",
    "graph_edges",
    "serialize_graph",
    "srg_parameters",
]


# ---------------------------------------------------------------- Steiner triple systems


@dataclass(frozen=True)
class Sts:
    v: int
    blocks: frozenset[frozenset[int]]

    def __post_init__(self):
        covered: dict[frozenset[int], int] = {}
        for b in self.blocks:
            if len(b) != 3 or not all(0 <= p < self.v for p in b):
                raise InvalidDesign(f"bad block {sorted(b)}")
            for pair in itertools.combinations(sorted(b), 2):
                covered[frozenset(pair)] = covered.get(frozenset(pair), 0) + 1
        for pair in itertools.combinations(range(self.v), 2):
            c = covered.get(frozenset(pair), 0)
            if c != 1:
                raise InvalidDesign(f"pair {pair} covered {c} times")

    @classmethod
    def of(cls, v: int, blocks) -> "Sts":
        return cls(v, frozenset(frozenset(b) for b in blocks))

    def sorted_blocks(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(b)) for b in self.blocks)


def fano() -> Sts:
    """The projective plane of order 2 on points 0..6."""
    return Sts.of(7, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)])


def affine_sts9() -> Sts:
    """Lines of AG(2,3); point (x, y) has index 3x + y."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    blocks = set()
    for p, q in itertools.combinations(pts, 2):
        r = ((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3)
        blocks.add(frozenset(3 * a + b for a, b in (p, q, r)))
    return Sts(9, frozenset(blocks))


def trivial_sts3() -> Sts:
    return Sts.of(3, [(0, 1, 2)])


def parse_sts(text: str) -> Sts:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise MalformedInput("sts header must be 'v b'", line=1)
    try:
        v, b = int(lines[0][0]), int(lines[0][1])
        blocks = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedInput(f"non-integer token: {exc}") from None
    if len(blocks) != b:
        raise MalformedInput(f"header says {b} blocks, found {len(blocks)}")
    return Sts.of(v, blocks)


def serialize_sts(s: Sts) -> str:
    blocks = s.sorted_blocks()
    return f"{s.v} {len(blocks)}\n" + "".join(" ".join(map(str, b)) + "\n" for b in blocks)


def read_sts(path: str | Path) -> Sts:
    return parse_sts(Path(path).read_text())


def write_sts(s: Sts, path: str | Path) -> None:
    Path(path).write_text(serialize_sts(s))


def sts_to_quasigroup(s: Sts) -> CayleyTable:
    """Steiner quasigroup: a*a = a and a*b = the third point of the block through a, b."""
    third = {}
    for b in s.blocks:
        x, y, z = sorted(b)
        third[(x, y)] = third[(y, x)] = z
        third[(x, z)] = third[(z, x)] = y
        third[(y, z)] = third[(z, y)] = x
    return CayleyTable.from_function(s.v, lambda a, b: a if a == b else third[(a, b)], name=f"STS{s.v}")


def sts_from_quasigroup(t: CayleyTable) -> Sts:
    """Inverse of :func:`sts_to_quasigroup`; rejects tables that are not Steiner quasigroups."""
    n = t.n
    blocks = set()
    for a in range(n):
        if t.mul(a, a) != a:
            raise InvalidDesign(f"{a}*{a} != {a}")
        for b in range(a + 1, n):
            c = t.mul(a, b)
            if c in (a, b) or t.mul(b, a) != c or t.mul(a, c) != b or t.mul(b, c) != a:
                raise InvalidDesign(f"products of {a}, {b} do not form a block")
            blocks.add(frozenset((a, b, c)))
    return Sts(n, frozenset(blocks))


# ---------------------------------------------------------------- triple systems and parastrophes


@dataclass(frozen=True)
class TripleSystem:
    n: int
    triples: frozenset[tuple[int, int, int]]


def triple_system(t: CayleyTable) -> TripleSystem:
    n = t.n
    return TripleSystem(n, frozenset((a, b, t.entries[a * n + b]) for a in range(n) for b in range(n)))


def from_triples(ts: TripleSystem, name: str | None = None) -> CayleyTable:
    """Rebuild a table from a triple system in which every (first, second) pair occurs once."""
    n = ts.n
    grid = [-1] * (n * n)
    for a, b, c in ts.triples:
        if grid[a * n + b] != -1:
            raise NotAQuasigroup(f"cell ({a}, {b}) occurs twice")
        grid[a * n + b] = c
    if -1 in grid:
        raise NotAQuasigroup("triple system does not fill the square")
    return CayleyTable(n, tuple(grid), name=name)


# new_triple[i] = old_triple[pi[i]]
PARASTROPHES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 2),  # id
    (1, 0, 2),  # (12)
    (2, 1, 0),  # (13)
    (0, 2, 1),  # (23)
    (1, 2, 0),  # (123)
    (2, 0, 1),  # (132)
)
PARASTROPHE_NAMES = ("id", "(12)", "(13)", "(23)", "(123)", "(132)")


def _require_latin(t: CayleyTable) -> None:
    if not t.kind.is_quasigroup:
        raise NotAQuasigroup(f"{t.kind.value} is not a Latin square")


def parastrophe(t: CayleyTable, pi) -> CayleyTable:
    """Permute the coordinates of every triple (a, b, ab).

    ``pi`` is a coordinate map (new coordinate i takes old coordinate pi[i]) or
    one of the names in ``PARASTROPHE_NAMES``.
    """
    _require_latin(t)
    if isinstance(pi, str):
        pi = PARASTROPHES[PARASTROPHE_NAMES.index(pi)]
    if sorted(pi) != [0, 1, 2]:
        raise ValueError(f"not a permutation of three coordinates: {pi}")
    if tuple(pi) == (0, 1, 2):
        return t
    ts = triple_system(t)
    return from_triples(TripleSystem(t.n, frozenset(tuple(tr[i] for i in pi) for tr in ts.triples)))


def inverse_parastrophe(pi) -> tuple[int, int, int]:
    inv = [0, 0, 0]
    for i, p in enumerate(pi):
        inv[p] = i
    return tuple(inv)  # type: ignore[return-value]


# ---------------------------------------------------------------- isotopy


@dataclass(frozen=True)
class IsotopyWitness:
    """Row, column and symbol maps: whenever ab = c in the first square,
    alpha[a] * beta[b] = gamma[c] in the second."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def inverse(self) -> "IsotopyWitness":
        def inv(p):
            out = [0] * len(p)
            for i, x in enumerate(p):
                out[x] = i
            return tuple(out)

        return IsotopyWitness(inv(self.alpha), inv(self.beta), inv(self.gamma))


def verify_isotopy(l1: CayleyTable, l2: CayleyTable, w: IsotopyWitness) -> bool:
    n = l1.n
    if l2.n != n:
        raise LengthMismatch("squares of different order")
    for p in (w.alpha, w.beta, w.gamma):
        if sorted(p) != list(range(n)):
            return False
    e1, e2 = l1.entries, l2.entries
    return all(e2[w.alpha[a] * n + w.beta[b]] == w.gamma[e1[a * n + b]] for a in range(n) for b in range(n))


def _branch_order(l1: CayleyTable) -> list[tuple[int, int]]:
    # rows and columns named by a cube generating sequence first, the rest after
    from .iso import cube_gen_sequence

    seq = list(dict.fromkeys(cube_gen_sequence(l1).elems))
    order: list[tuple[int, int]] = []
    for x in seq + [x for x in range(l1.n) if x not in seq]:
        order.append((0, x))
        order.append((1, x))
    return order


def isotopy(l1: CayleyTable, l2: CayleyTable) -> IsotopyWitness | None:
    """Search for an isotopism l1 -> l2.

    Rows and columns are assigned images by backtracking; every cell whose row
    and column are both mapped forces a symbol image, and any two known maps in
    a cell force the third.  Contradictions prune the branch.
    """
    _require_latin(l1)
    _require_latin(l2)
    n = l1.n
    if l2.n != n:
        return None
    e1, e2 = l1.entries, l2.entries
    ld2, rd2 = l2.ldiv_entries, l2.rdiv_entries
    # the column b with ab = c in l1 is the left quotient a\c
    ld1 = l1.ldiv_entries
    order = _branch_order(l1)

    maps = [[-1] * n, [-1] * n, [-1] * n]
    used = [[False] * n, [False] * n, [False] * n]

    def assign(kind: int, x: int, y: int, trail: list) -> bool:
        cur = maps[kind][x]
        if cur != -1:
            return cur == y
        if used[kind][y]:
            return False
        maps[kind][x] = y
        used[kind][y] = True
        trail.append((kind, x))
        return True

    def propagate(trail: list, start: int) -> bool:
        queue = trail[start:]
        qi = 0
        while qi < len(queue):
            kind, x = queue[qi]
            qi += 1
            for other in range(n):
                # the cells involving x in role `kind`
                if kind == 0:
                    a, b = x, other
                    c = e1[a * n + b]
                elif kind == 1:
                    a, b = other, x
                    c = e1[a * n + b]
                else:
                    a, c = other, x
                    b = ld1[a * n + c]
                fa, fb, fc = maps[0][a], maps[1][b], maps[2][c]
                mark = len(trail)
                if fa != -1 and fb != -1:
                    if not assign(2, c, e2[fa * n + fb], trail):
                        return False
                elif fa != -1 and fc != -1:
                    if not assign(1, b, ld2[fa * n + fc], trail):
                        return False
                elif fb != -1 and fc != -1:
                    if not assign(0, a, rd2[fc * n + fb], trail):
                        return False
                queue.extend(trail[mark:])
        return True

    def undo(trail: list, to: int) -> None:
        while len(trail) > to:
            kind, x = trail.pop()
            used[kind][maps[kind][x]] = False
            maps[kind][x] = -1

    trail: list = []

    def search(pos: int) -> bool:
        while pos < len(order) and maps[order[pos][0]][order[pos][1]] != -1:
            pos += 1
        if pos == len(order):
            return True
        kind, x = order[pos]
        for y in range(n):
            if used[kind][y]:
                continue
            mark = len(trail)
            if assign(kind, x, y, trail) and propagate(trail, mark) and search(pos + 1):
                return True
            undo(trail, mark)
        return False

    if not search(0):
        return None
    # symbols are forced once all rows and columns are mapped
    w = IsotopyWitness(tuple(maps[0]), tuple(maps[1]), tuple(maps[2]))
    assert verify_isotopy(l1, l2, w)
    return w


def main_class_iso(l1: CayleyTable, l2: CayleyTable) -> tuple[str, IsotopyWitness] | None:
    """First parastrophe (in the fixed order) of ``l1`` that is isotopic to ``l2``."""
    _require_latin(l1)
    _require_latin(l2)
    if l1.n != l2.n:
        return None
    for name, pi in zip(PARASTROPHE_NAMES, PARASTROPHES):
        w = isotopy(parastrophe(l1, pi), l2)
        if w is not None:
            return name, w
    return None


# ---------------------------------------------------------------- Latin square graphs


def latin_square_graph(t: CayleyTable) -> list[list[int]]:
    """Adjacency lists on the n^2 cells (vertex a*n + b is the triple (a, b, ab));
    two cells are adjacent when they share a row, a column or a symbol."""
    _require_latin(t)
    n = t.n
    e = t.entries
    adj = []
    for u in range(n * n):
        a, b = divmod(u, n)
        c = e[u]
        adj.append([v for v in range(n * n) if v != u and (v // n == a or v % n == b or e[v] == c)])
    return adj


def graph_edges(adj: list[list[int]]) -> list[tuple[int, int]]:
    return [(u, v) for u, nbrs in enumerate(adj) for v in nbrs if u < v]


def serialize_graph(adj: list[list[int]]) -> str:
    edges = graph_edges(adj)
    return f"{len(adj)} {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges)


def srg_parameters(adj: list[list[int]]) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) by exhaustive counting, or None if the graph is not strongly regular."""
    v = len(adj)
    sets = [set(a) for a in adj]
    degrees = {len(s) for s in sets}
    if len(degrees) != 1:
        return None
    k = degrees.pop()
    lam, mu = set(), set()
    for u in range(v):
        for w in range(u + 1, v):
            common = len(sets[u] & sets[w])
            (lam if w in sets[u] else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return v, k, lam.pop() if lam else 0, mu.pop() if mu else 0
