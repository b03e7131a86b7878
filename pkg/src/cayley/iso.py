"""Isomorphism testing: cube generating sequences and witnesses, generator-enumeration
search, fast paths for abelian and simple groups, the coprime split-extension check and a
brute-force oracle."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .arith import factorize, normal_closure, orders
from .errors import (
    ConstructionFailed,
    LengthMismatch,
    MalformedInput,
    NotAGroup,
    NotApplicable,
    NotAQuasigroup,
    NotSimple,
    TooLarge,
)
from .membership import _close, _uses_divisions
from .tables import AlgebraClass, CayleyTable, quotient_group, require_group

__all__ = [
    "CubeGenSequence",
    "IsoWitness",
    "cube_gen_sequence",
    "cube_expansion",
    "verify_iso_witness",
    "iso_witness",
    "serialize_witness",
    "parse_witness",
    "iso_search",
    "iso_abelian",
    "iso_simple",
    "iso_coprime_split",
    "brute_iso",
    "is_isomorphism",
    "signature",
]

RESTARTS = 32


# ---------------------------------------------------------------- cube generating sequences


@dataclass(frozen=True)
class CubeGenSequence:
    elems: tuple[int, ...]
    table: str | None = None

    @property
    def k(self) -> int:
        return len(self.elems) - 1


def sequence_length(n: int) -> int:
    """k + 1 with k = ceil(2 log2 n) + 1; a single element for n = 1."""
    if n == 1:
        return 1
    return (n * n - 1).bit_length() + 2


def cube_expansion(t: CayleyTable, elems) -> list[int]:
    """Value of ((g0 g1^e1) g2^e2)... for every exponent vector, indexed by the
    integer whose bit i-1 is e_i."""
    n, tab = t.n, t.entries
    vals = [elems[0]]
    for g in elems[1:]:
        vals = vals + [tab[v * n + g] for v in vals]
    return vals


def _greedy(t: CayleyTable, first: int, rng: random.Random | None) -> list[int] | None:
    n, tab = t.n, t.entries
    length = sequence_length(n)
    seq = [first]
    cube = {first}
    while len(cube) < n and len(seq) < length:
        best, best_size = -1, -1
        cands = list(range(n))
        if rng is not None:
            rng.shuffle(cands)
        for g in cands:
            size = len(cube | {tab[c * n + g] for c in cube})
            if size > best_size:
                best, best_size = g, size
        seq.append(best)
        cube |= {tab[c * n + best] for c in cube}
    if len(cube) < n:
        return None
    return seq + [first] * (length - len(seq))


def cube_gen_sequence(t: CayleyTable) -> CubeGenSequence:
    """Greedy cube generating sequence: start at element 0, then repeatedly append the
    element that enlarges the cube most (smallest index on ties); padded with the
    first element.  Falls back to seeded randomised restarts if the greedy stalls."""
    if not t.kind.is_quasigroup:
        raise NotAQuasigroup("cube generating sequences need a quasigroup")
    seq = _greedy(t, 0, None)
    attempt = 0
    while seq is None and attempt < RESTARTS:
        rng = random.Random(attempt)
        seq = _greedy(t, rng.randrange(t.n), rng)
        attempt += 1
    if seq is None:
        raise ConstructionFailed(f"no cube generating sequence after {RESTARTS} restarts")
    return CubeGenSequence(tuple(seq), t.name)


@dataclass(frozen=True)
class IsoWitness:
    """Two cube generating sequences; the candidate isomorphism sends the i-th
    term of the first to the i-th term of the second."""

    seq_g: CubeGenSequence
    seq_h: CubeGenSequence


def is_isomorphism(g: CayleyTable, h: CayleyTable, phi) -> bool:
    n = g.n
    if h.n != n or len(phi) != n or sorted(phi) != list(range(n)):
        return False
    ge, he = g.entries, h.entries
    return all(phi[ge[a * n + b]] == he[phi[a] * n + phi[b]] for a in range(n) for b in range(n))


def verify_iso_witness(g: CayleyTable, h: CayleyTable, w: IsoWitness) -> bool:
    """Accept iff matching cube words of the two sequences defines an isomorphism."""
    if len(w.seq_g.elems) != len(w.seq_h.elems):
        raise LengthMismatch("witness sequences differ in length")
    if g.n != h.n:
        return False
    n = g.n
    if any(not 0 <= x < n for x in w.seq_g.elems + w.seq_h.elems):
        return False
    phi: dict[int, int] = {}
    for a, b in zip(cube_expansion(g, w.seq_g.elems), cube_expansion(h, w.seq_h.elems)):
        if phi.setdefault(a, b) != b:
            return False
    if len(phi) != n:
        return False
    return is_isomorphism(g, h, [phi[x] for x in range(n)])


def iso_witness(g: CayleyTable, h: CayleyTable, phi) -> IsoWitness:
    """Certificate for a known isomorphism: a cube generating sequence of ``g`` and its image."""
    seq = cube_gen_sequence(g)
    return IsoWitness(seq, CubeGenSequence(tuple(phi[x] for x in seq.elems), h.name))


def serialize_witness(w: IsoWitness) -> str:
    return " ".join(map(str, w.seq_g.elems)) + "\n" + " ".join(map(str, w.seq_h.elems)) + "\n"


def parse_witness(text: str) -> IsoWitness:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise MalformedInput("a witness has exactly two lines")
    try:
        a, b = (tuple(int(x) for x in ln.split()) for ln in lines)
    except ValueError:
        raise MalformedInput("witness entries must be integers") from None
    return IsoWitness(CubeGenSequence(a), CubeGenSequence(b))


# ---------------------------------------------------------------- search


def signature(t: CayleyTable) -> list[tuple]:
    """Relabelling-invariant per-element data used to prune candidate images."""
    n, e = t.n, t.entries
    ords = orders(t).orders if t.kind.is_group else None
    out = []
    for x in range(n):
        row = e[x * n : (x + 1) * n]
        out.append(
            (
                e[x * n + x] == x,
                sum(1 for y in range(n) if row[y] == y),
                sum(1 for y in range(n) if e[y * n + x] == y),
                sum(1 for y in range(n) if row[y] == e[y * n + x]),
                len(set(row)),
                ords[x] if ords else 0,
            )
        )
    return out


def _generating_set(t: CayleyTable) -> list[int]:
    from .mingen import minimum_generating_set

    try:
        return minimum_generating_set(t).witness.sorted()
    except TooLarge:
        # greedy: add the smallest element not yet generated
        gens: list[int] = []
        div = _uses_divisions(t)
        inside: set[int] = set()
        for x in range(t.n):
            if x not in inside:
                gens.append(x)
                inside = set(_close(t, gens, div))
        return gens


def _isomorphisms(g: CayleyTable, h: CayleyTable) -> Iterator[tuple[int, ...]]:
    """Every isomorphism g -> h, found by assigning images to a generating set and
    propagating through products (and divisions for quasigroups)."""
    n = g.n
    if h.n != n or g.kind != h.kind:
        return
    sg, sh = signature(g), signature(h)
    if Counter(sg) != Counter(sh):
        return
    if n == 1:
        yield (0,)
        return
    div = _uses_divisions(g)
    ge, he = g.entries, h.entries
    if div:
        gl, gr, hl, hr = g.ldiv_entries, g.rdiv_entries, h.ldiv_entries, h.rdiv_entries
    gens = _generating_set(g)
    if g.kind.is_group:
        gens = [x for x in gens if x != g.identity] or [g.identity]
    phi = [-1] * n
    taken = [False] * n
    domain: list[int] = []

    def assign(x: int, y: int) -> bool:
        if phi[x] != -1:
            return phi[x] == y
        if taken[y] or sg[x] != sh[y]:
            return False
        phi[x] = y
        taken[y] = True
        domain.append(x)
        return True

    def propagate(start: int) -> bool:
        i = start
        while i < len(domain):
            x = domain[i]
            i += 1
            px = phi[x]
            for a in domain[:i]:
                pa = phi[a]
                xa, ax = x * n + a, a * n + x
                pxa, pax = px * n + pa, pa * n + px
                if not (assign(ge[xa], he[pxa]) and assign(ge[ax], he[pax])):
                    return False
                if div and not (
                    assign(gl[xa], hl[pxa])
                    and assign(gl[ax], hl[pax])
                    and assign(gr[xa], hr[pxa])
                    and assign(gr[ax], hr[pax])
                ):
                    return False
        return True

    def undo(mark: int) -> None:
        while len(domain) > mark:
            x = domain.pop()
            taken[phi[x]] = False
            phi[x] = -1

    def search(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(gens):
            if len(domain) == n and is_isomorphism(g, h, phi):
                yield tuple(phi)
            return
        x = gens[i]
        if phi[x] != -1:
            yield from search(i + 1)
            return
        for y in range(n):
            if taken[y] or sg[x] != sh[y]:
                continue
            mark = len(domain)
            if assign(x, y) and propagate(mark):
                yield from search(i + 1)
            undo(mark)

    yield from search(0)


def iso_search(g: CayleyTable, h: CayleyTable) -> tuple[int, ...] | None:
    """An isomorphism g -> h as an image tuple, or None."""
    return next(_isomorphisms(g, h), None)


def brute_iso(g: CayleyTable, h: CayleyTable, cap: int = 12) -> tuple[int, ...] | None:
    """Reference search: images assigned in index order, every fully assigned
    product checked as soon as possible."""
    n = g.n
    if h.n != n:
        return None
    if n > cap:
        raise TooLarge(f"brute_iso capped at n={cap}, got {n}")
    sg, sh = signature(g), signature(h)
    if Counter(sg) != Counter(sh):
        return None
    ge, he = g.entries, h.entries
    # pairs (a, b) whose product is decided once max(a, b, ab) is assigned
    checks: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            checks[max(a, b, ge[a * n + b])].append((a, b))
    phi = [-1] * n
    taken = [False] * n

    def rec(x: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if taken[y] or sg[x] != sh[y]:
                continue
            phi[x] = y
            if all(phi[ge[a * n + b]] == he[phi[a] * n + phi[b]] for a, b in checks[x]):
                taken[y] = True
                if rec(x + 1):
                    return True
                taken[y] = False
        phi[x] = -1
        return False

    return tuple(phi) if rec(0) else None


# ---------------------------------------------------------------- group fast paths


def iso_abelian(g: CayleyTable, h: CayleyTable) -> bool:
    """Abelian groups are isomorphic exactly when their element-order multisets agree."""
    if g.kind != AlgebraClass.ABELIAN_GROUP:
        raise NotAGroup("first argument must be an abelian group")
    if h.kind != AlgebraClass.ABELIAN_GROUP or h.n != g.n:
        return False
    return orders(g).multiset == orders(h).multiset


def is_simple(t: CayleyTable) -> bool:
    require_group(t)
    if t.n == 1:
        return False
    e = t.identity
    return all(normal_closure(t, x).is_full() for x in range(t.n) if x != e)


def iso_simple(g: CayleyTable, h: CayleyTable) -> bool:
    """For a simple group, the order and the set of element orders determine the
    isomorphism type (a classification-dependent theorem, relied on as stated)."""
    if not is_simple(g):
        raise NotSimple("first argument is not a simple group")
    require_group(h)
    return h.n == g.n and set(orders(g).spectrum) == set(orders(h).spectrum)


def default_threshold(n: int) -> int:
    return math.floor(math.log2(math.log2(n))) if n >= 4 else 0


@dataclass(frozen=True)
class _Split:
    gen: int  # generator of the normal cyclic Hall subgroup
    quotient: CayleyTable
    cmap: list[int]
    reps: dict[int, int]  # coset -> minimal representative


def _split(t: CayleyTable, pbar: int) -> _Split | None:
    spectrum = orders(t).orders
    e = t.identity
    cands = [x for x in range(t.n) if spectrum[x] == pbar]
    if not cands:
        return None
    b = cands[0]
    members = set(_close(t, [b], False))
    inv = t.inverses
    if any(t.mul(t.mul(x, b), inv[x]) not in members for x in range(t.n)):
        return None
    if math.gcd(len(members), t.n // len(members)) != 1:
        return None
    q, cmap = quotient_group(t, t.subset(members))
    reps: dict[int, int] = {}
    for x in range(t.n):
        reps.setdefault(cmap[x], x)
    assert e in members
    return _Split(b, q, cmap, reps)


def _action_exponent(t: CayleyTable, s: _Split, h: int, b: int, pbar: int) -> int:
    """r with rep(h) b rep(h)^-1 = b^r."""
    x = s.reps[h]
    conj = t.mul(t.mul(x, b), t.inverses[x])
    cur = b
    for r in range(1, pbar + 1):
        if cur == conj:
            return r
        cur = t.mul(cur, b)
    raise AssertionError("conjugate left the normal subgroup")


def iso_coprime_split(g1: CayleyTable, g2: CayleyTable, threshold: int | None = None) -> bool:
    """Isomorphism of groups G = H x| B with B cyclic of squarefree order coprime to |H|.

    B is generated by an element whose order is the product of the primes that
    divide n exactly once and exceed ``threshold``.  The groups are isomorphic
    iff the quotients are isomorphic by some alpha and, for a generator b2 of
    B2, beta(h b1 h^-1) = alpha(h) b2 alpha(h)^-1 holds on generators h of H1.
    """
    require_group(g1)
    require_group(g2)
    n = g1.n
    if g2.n != n:
        return False
    if threshold is None:
        threshold = default_threshold(n)
    pbar = 1
    for p, e in factorize(n):
        if e == 1 and p > threshold:
            pbar *= p
    if pbar == 1:
        raise NotApplicable(f"no prime of multiplicity one above {threshold} divides {n}")
    s1, s2 = _split(g1, pbar), _split(g2, pbar)
    if s1 is None and s2 is None:
        raise NotApplicable(f"neither group has a normal cyclic subgroup of order {pbar}")
    if s1 is None or s2 is None:
        # having such a subgroup is an isomorphism invariant
        return False
    h1, h2 = s1.quotient, s2.quotient
    hgens = _generating_set(h1)
    b1 = s1.gen
    r1 = [_action_exponent(g1, s1, h, b1, pbar) for h in hgens]
    b2_gens = []
    cur = s2.gen
    for k in range(1, pbar + 1):
        if math.gcd(k, pbar) == 1:
            b2_gens.append(cur)
        cur = g2.mul(cur, s2.gen)
    for alpha in _isomorphisms(h1, h2):
        for b2 in b2_gens:
            # beta(b1^r) = b2^r, so the condition is equality of action exponents
            if all(_action_exponent(g2, s2, alpha[h], b2, pbar) == r for h, r in zip(hgens, r1)):
                return True
    return False
