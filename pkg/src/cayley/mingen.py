"""Minimum generating sets: brute force, bounded enumeration, chief-series descent, nilpotent rank."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .arith import (
    commutator,
    frattini_rank_pgroup,
    normal_closure,
    orders,
    power,
    product_closure,
    sylow_decompose,
)
from .errors import ConstructionFailed, NotAQuasigroup, NotNilpotent, TooLarge
from .membership import _close, _uses_divisions, log2_ceil
from .tables import CayleyTable, ElementSet, quotient_group, require_group, restrict

__all__ = [
    "MgsResult",
    "ChiefSeries",
    "brute_mgs",
    "mgs_quasigroup",
    "quasigroup_has_generating_set",
    "chief_series",
    "mgs_group",
    "nilpotent_rank",
    "nilpotent_mgs",
    "minimum_generating_set",
    "generates",
]

BRUTE, ENUM, CHIEF, NILPOTENT = "BruteForce", "QuasigroupEnum", "ChiefDescent", "NilpotentRank"

DEFAULT_GROUP_CAP = 64
DEFAULT_MAGMA_CAP = 24


@dataclass(frozen=True)
class MgsResult:
    size: int
    witness: ElementSet
    method: str


def generates(t: CayleyTable, s) -> bool:
    seeds = list(s)
    if not seeds:
        return t.n == 1 and t.kind.is_group
    return len(_close(t, seeds, _uses_divisions(t))) == t.n


def brute_mgs(t: CayleyTable, cap: int | None = None) -> MgsResult:
    """First generating set in (size, lexicographic) order.

    Two sound prunings keep this usable for n in the dozens: elements outside
    the span of all others must appear in every generating set, and anything
    already generated by those forced elements never helps a minimum set.
    """
    if cap is None:
        cap = DEFAULT_GROUP_CAP if t.kind.is_group else DEFAULT_MAGMA_CAP
    n = t.n
    if n > cap:
        raise TooLarge(f"brute force capped at n={cap}, got {n}")
    if t.kind.is_group and n == 1:
        return MgsResult(0, ElementSet.of(n, ()), BRUTE)
    div = _uses_divisions(t)
    everything = list(range(n))
    forced = [g for g in everything if len(_close(t, everything[:g] + everything[g + 1 :], div)) < n]
    if forced and len(_close(t, forced, div)) == n:
        return MgsResult(len(forced), ElementSet.of(n, forced), BRUTE)
    spanned = set(_close(t, forced, div)) if forced else set()
    if t.kind.is_group:
        spanned.add(t.identity)
    candidates = [g for g in everything if g not in spanned]
    for extra in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, extra):
            chosen = forced + list(combo)
            if len(_close(t, chosen, div)) == n:
                return MgsResult(len(chosen), ElementSet.of(n, chosen), BRUTE)
    raise AssertionError("the full set always generates")


def _require_quasigroup(t: CayleyTable) -> None:
    if not t.kind.is_quasigroup:
        raise NotAQuasigroup(f"{t.kind.value} is not a quasigroup")


def quasigroup_has_generating_set(t: CayleyTable, bound: int) -> bool:
    """Is there a generating set of size at most ``bound``?  Only sizes up to ceil(log2 n) are tried."""
    _require_quasigroup(t)
    div = _uses_divisions(t)
    for size in range(1, min(bound, max(1, log2_ceil(t.n))) + 1):
        for combo in itertools.combinations(range(t.n), size):
            if len(_close(t, combo, div)) == t.n:
                return True
    return False


def mgs_quasigroup(t: CayleyTable) -> MgsResult:
    """Lexicographically first minimum generating set of a quasigroup.

    Some generating set of size ceil(log2 n) always exists, so the search is
    polynomial of degree log n.
    """
    _require_quasigroup(t)
    div = _uses_divisions(t)
    for size in range(1, max(1, log2_ceil(t.n)) + 1):
        for combo in itertools.combinations(range(t.n), size):
            if len(_close(t, combo, div)) == t.n:
                return MgsResult(size, ElementSet.of(t.n, combo), ENUM)
    raise ConstructionFailed("no generating set within ceil(log2 n)")


@dataclass(frozen=True)
class ChiefSeries:
    """``subgroups[0]`` is trivial, ``subgroups[-1]`` the whole group."""

    subgroups: tuple[ElementSet, ...]

    @property
    def factor_orders(self) -> tuple[int, ...]:
        s = self.subgroups
        return tuple(len(s[i + 1]) // len(s[i]) for i in range(len(s) - 1))

    def __len__(self) -> int:
        return len(self.subgroups) - 1


def _minimal_normals(t: CayleyTable) -> list[ElementSet]:
    e = t.identity
    closures = {normal_closure(t, x) for x in range(t.n) if x != e}
    minimal = [m for m in closures if not any(o < m for o in closures)]
    return sorted(minimal, key=lambda s: s.sorted())


def chief_series(t: CayleyTable) -> ChiefSeries:
    """Chief series built from the socle: minimal normal subgroups in lexicographic
    order are multiplied in while they add something, then the same is done in
    the quotient by the socle and pulled back.
    """
    require_group(t)
    e = t.identity
    trivial = ElementSet.of(t.n, (e,))
    if t.n == 1:
        return ChiefSeries((trivial,))
    series = [trivial]
    cur = trivial
    for m in _minimal_normals(t):
        if not m <= cur:
            cur = product_closure(t, list(cur) + list(m))
            series.append(cur)
    if not cur.is_full():
        q, cmap = quotient_group(t, cur)
        upper = chief_series(q)
        for sub in upper.subgroups[1:]:
            series.append(ElementSet.of(t.n, (g for g in range(t.n) if cmap[g] in sub)))
    return ChiefSeries(tuple(series))


def _is_abelian_factor(t: CayleyTable, upper: ElementSet, lower: ElementSet) -> bool:
    members = list(upper)
    return all(commutator(t, a, b) in lower for a in members for b in members)


def mgs_group(t: CayleyTable, series: ChiefSeries | None = None) -> MgsResult:
    """Minimum generating set by descending a chief series.

    At each level the current set generates G/N_i; it is lifted to G/N_{i-1}
    either by adjusting one element by a coset representative, appending a new
    element (abelian factor), or by trying all adjustments of a short prefix
    (non-abelian factor).
    """
    require_group(t)
    n = t.n
    if n == 1:
        return MgsResult(0, ElementSet.of(n, ()), CHIEF)
    cs = series or chief_series(t)
    subs = cs.subgroups
    k = len(subs) - 1
    e = t.identity
    tab = t.entries

    def lift_test(q: CayleyTable, cmap: list[int]):
        def ok(gens: list[int]) -> bool:
            return len(_close(q, [cmap[g] for g in gens], False)) == q.n

        return ok

    # generating set for the top (simple) factor G / N_{k-1}
    q, cmap = quotient_group(t, subs[k - 1])
    reps = _coset_reps(cmap, range(n))
    gens = None
    for size in (1, 2):
        for combo in itertools.combinations(range(q.n), size):
            if len(_close(q, combo, False)) == q.n:
                gens = [reps[c] for c in combo]
                break
        if gens:
            break
    if gens is None:
        raise ConstructionFailed("top chief factor is not 2-generated")

    orders = cs.factor_orders
    for i in range(k - 1, 0, -1):
        lower, upper = subs[i - 1], subs[i]
        q, cmap = quotient_group(t, lower)
        ok = lift_test(q, cmap)
        if ok(gens):
            continue
        nreps = sorted(_coset_reps(cmap, upper).values())
        if _is_abelian_factor(t, upper, lower):
            found = None
            for j in range(len(gens)):
                for r in nreps:
                    cand = gens[:j] + [tab[gens[j] * n + r]] + gens[j + 1 :]
                    if ok(cand):
                        found = cand
                        break
                if found:
                    break
            if found is None:
                found = gens + [min(x for x in upper if x not in lower)]
                assert ok(found)
            gens = found
        else:
            size = len(upper) // len(lower)
            eta = sum(1 for o in orders if o == size)
            width = max(len(gens), 2)
            prefix = min(width, math.ceil(8 / 5 + math.log(eta) / math.log(size)))
            padded = gens + [e] * (width - len(gens))
            found = None
            for mods in itertools.product(nreps, repeat=prefix):
                cand = [tab[padded[j] * n + mods[j]] for j in range(prefix)] + padded[prefix:]
                if ok(cand):
                    found = cand
                    break
            if found is None:
                raise ConstructionFailed(f"no lift through non-abelian factor at level {i}")
            gens = found
    gens = sorted({g for g in gens if g != e})
    return MgsResult(len(gens), ElementSet.of(n, gens), CHIEF)


def _coset_reps(cmap: list[int], members) -> dict[int, int]:
    reps: dict[int, int] = {}
    for g in members:
        reps.setdefault(cmap[g], g)
    return reps


def _p_part(t: CayleyTable, g: int, order: int, p: int) -> int:
    """The p-component of g: g**(m*u) where order = p^a * m and m*u = 1 mod p^a."""
    pa = 1
    while order % (pa * p) == 0:
        pa *= p
    m = order // pa
    if pa == 1:
        return t.identity
    return power(t, g, m * pow(m, -1, pa))


def nilpotent_rank(t: CayleyTable) -> int:
    """d(G) for a nilpotent group: the largest Frattini rank among its Sylow subgroups."""
    dec = sylow_decompose(t)
    best = 0
    for p, _ in dec.primes:
        sub, _ = restrict(t, dec.components[p])
        best = max(best, frattini_rank_pgroup(sub, p)[1])
    return best


def nilpotent_mgs(t: CayleyTable) -> MgsResult:
    """Rank plus witness.

    The j-th generator is the smallest element whose p-component extends the
    partial basis of P/Phi(P) for every prime p with rank at least j.  Powers of
    the generators recover those components, which generate each Sylow subgroup,
    so the result generates G.
    """
    dec = sylow_decompose(t)
    ords = orders(t).orders
    spans = {}
    ranks = {}
    for p, _ in dec.primes:
        sub, elems = restrict(t, dec.components[p])
        phi, d = frattini_rank_pgroup(sub, p)
        spans[p] = {elems[x] for x in phi}
        ranks[p] = d
    d = max(ranks.values(), default=0)
    gens = []
    for j in range(d):
        active = [p for p in ranks if ranks[p] > j]
        for g in range(t.n):
            parts = {p: _p_part(t, g, ords[g], p) for p in active}
            if all(parts[p] not in spans[p] for p in active):
                break
        else:
            raise AssertionError("basis extension must exist below the rank")
        gens.append(g)
        for p in active:
            spans[p] = set(product_closure(t, list(spans[p]) + [parts[p]]))
    return MgsResult(d, ElementSet.of(t.n, gens), NILPOTENT)


def minimum_generating_set(t: CayleyTable, method: str = "auto", cap: int | None = None) -> MgsResult:
    """Dispatch: nilpotent groups -> rank, other groups -> chief descent,
    quasigroups -> enumeration, everything else -> brute force."""
    if method == "auto":
        if t.kind.is_group:
            try:
                return nilpotent_mgs(t)
            except NotNilpotent:
                return mgs_group(t)
        if t.kind.is_quasigroup:
            return mgs_quasigroup(t)
        return brute_mgs(t, cap)
    if method == "brute":
        return brute_mgs(t, cap)
    if method == "enum":
        return mgs_quasigroup(t)
    if method == "chief":
        return mgs_group(t)
    if method == "nilpotent":
        return nilpotent_mgs(t)
    raise ValueError(f"unknown method {method!r}")
