"""Shared test corpus and naive reference implementations (oracles).

The oracles here deliberately avoid the package's own algorithms: they loop
over the raw table entries only.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from cayley.families import (
    abelian,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    permuted,
    quaternion,
    random_latin,
    steiner_quasigroup,
    symmetric,
)
from cayley.latin import affine_sts9, fano, trivial_sts3

# acceptance criterion number -> one-line verdict, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


@lru_cache(maxsize=None)
def groups_upto_12():
    gs = [cyclic(n) for n in range(1, 13)]
    gs += [elementary_abelian(2, 2), elementary_abelian(2, 3), elementary_abelian(3, 2)]
    gs += [abelian(2, 4), abelian(2, 6)]
    gs += [dihedral(n) for n in range(2, 7)]
    gs += [quaternion(), alternating(4), dicyclic(3), symmetric(3)]
    gs += [direct_product(cyclic(2), dihedral(3)), direct_product(cyclic(2), cyclic(4))]
    return tuple(gs)


@lru_cache(maxsize=None)
def groups_upto_24():
    gs = list(groups_upto_12())
    gs += [cyclic(n) for n in range(13, 25)]
    gs += [elementary_abelian(2, 4), abelian(2, 8), abelian(4, 4), abelian(2, 2, 4), abelian(3, 6)]
    gs += [abelian(2, 10), abelian(2, 12), abelian(2, 2, 6)]
    gs += [dihedral(n) for n in range(7, 13)]
    gs += [symmetric(4), dicyclic(4), dicyclic(5), dicyclic(6)]
    gs += [
        direct_product(quaternion(), cyclic(2)),
        direct_product(quaternion(), cyclic(3)),
        direct_product(alternating(4), cyclic(2)),
        direct_product(symmetric(3), cyclic(3)),
        direct_product(symmetric(3), cyclic(4)),
        direct_product(dihedral(4), cyclic(2)),
        direct_product(dihedral(4), cyclic(3)),
        direct_product(symmetric(3), elementary_abelian(2, 2)),
    ]
    return tuple(gs)


@lru_cache(maxsize=None)
def random_quasigroups_upto_8(count: int = 50):
    """Seeded random Latin squares of order 3..8; every fifth is a relabelled
    copy of its predecessor so isomorphic pairs occur."""
    out = []
    for i in range(count):
        if i % 5 == 4:
            out.append(permuted(out[-1], seed=1000 + i))
        else:
            out.append(random_latin(3 + i % 6, seed=i))
    return tuple(out)


@lru_cache(maxsize=None)
def quasigroups_upto_8():
    qs = list(random_quasigroups_upto_8())
    qs += [steiner_quasigroup(fano()), steiner_quasigroup(trivial_sts3())]
    qs += [cyclic(5), symmetric(3), quaternion(), permuted(dihedral(4), 3)]
    return tuple(qs)


@lru_cache(maxsize=None)
def quasigroups_upto_16():
    qs = list(quasigroups_upto_8())
    qs += [steiner_quasigroup(affine_sts9()), random_latin(9, 1), random_latin(9, 2)]
    qs += [permuted(elementary_abelian(2, 4), 5), dihedral(8), cyclic(16), alternating(4)]
    return tuple(qs)


# ---------------------------------------------------------------- oracles


def naive_closure(t, seeds, divisions=False):
    n = t.n
    cur = set(seeds)
    while True:
        new = set(cur)
        for a in cur:
            for b in cur:
                new.add(t.entries[a * n + b])
                if divisions:
                    for x in range(n):
                        if t.entries[a * n + x] == b or t.entries[x * n + a] == b:
                            new.add(x)
        if new == cur:
            return frozenset(cur)
        cur = new


def naive_identity(t):
    n = t.n
    for e in range(n):
        if all(t.entries[e * n + x] == x and t.entries[x * n + e] == x for x in range(n)):
            return e
    return None


def naive_inverse(t, g):
    e = naive_identity(t)
    return next(x for x in range(t.n) if t.entries[g * t.n + x] == e)


def naive_normal_subgroups(t):
    """All normal subgroups, as joins of normal closures of single elements."""
    n = t.n
    e = naive_identity(t)

    def ncl(x):
        conj = {t.entries[t.entries[g * n + x] * n + naive_inverse(t, g)] for g in range(n)}
        return naive_closure(t, conj | {e})

    singles = {ncl(x) for x in range(n)}
    found = set(singles)
    frontier = set(singles)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in singles:
                j = naive_closure(t, a | b)
                if j not in found:
                    found.add(j)
                    nxt.add(j)
        frontier = nxt
    return found


def naive_min_generating_size(t):
    """Smallest d such that some d-subset generates (groups: empty set generates Z1)."""
    n = t.n
    if n == 1 and naive_identity(t) is not None:
        return 0
    divisions = t.kind.is_quasigroup and not t.kind.is_group
    for d in range(1, n + 1):
        for s in itertools.combinations(range(n), d):
            if len(naive_closure(t, s, divisions)) == n:
                return d
    raise AssertionError


def naive_is_nilpotent(t):
    """Lower central series reaches the trivial subgroup."""
    n = t.n
    e = naive_identity(t)
    inv = [naive_inverse(t, g) for g in range(n)]

    def comm(a, b):
        m = t.entries
        return m[m[m[a * n + b] * n + inv[a]] * n + inv[b]]

    cur = frozenset(range(n))
    while True:
        nxt = naive_closure(t, {comm(g, h) for g in range(n) for h in cur} | {e})
        if nxt == cur:
            return len(cur) == 1
        cur = nxt
