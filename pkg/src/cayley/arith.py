"""Powers, element orders, factorisation and the p-group / nilpotency toolkit."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import NotASemigroup, NotNilpotent, NotPGroup, ZeroPowerInSemigroup
from .tables import CayleyTable, ElementSet, require_group

__all__ = [
    "OrderSpectrum",
    "SylowDecomposition",
    "power",
    "orders",
    "naive_orders",
    "factorize",
    "sylow_decompose",
    "is_nilpotent",
    "product_closure",
    "commutator",
    "derived_subgroup",
    "frattini_rank_pgroup",
    "normal_closure",
]


def power(t: CayleyTable, s: int, k: int) -> int:
    """``s**k`` by square-and-multiply; ``s**0`` is the identity when one exists."""
    if not t.kind.is_semigroup:
        raise NotASemigroup(f"{t!r} is not associative")
    if k < 0:
        raise ValueError("negative exponent")
    if k == 0:
        if t.identity is None:
            raise ZeroPowerInSemigroup("s**0 is undefined without an identity")
        return t.identity
    n, tab = t.n, t.entries
    result = None
    base = s
    while k:
        if k & 1:
            result = base if result is None else tab[result * n + base]
        k >>= 1
        if k:
            base = tab[base * n + base]
    return result  # type: ignore[return-value]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, ascending primes."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class OrderSpectrum:
    orders: tuple[int, ...]

    @property
    def spectrum(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.orders)))

    @property
    def multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orders).items()))


def orders(t: CayleyTable) -> OrderSpectrum:
    """Element orders, found by testing the divisors of |G| in ascending order."""
    require_group(t)
    e = t.identity
    divs = _divisors(t.n)
    return OrderSpectrum(tuple(next(d for d in divs if power(t, g, d) == e) for g in range(t.n)))


def naive_orders(t: CayleyTable) -> OrderSpectrum:
    """Element orders by repeated multiplication (reference implementation)."""
    require_group(t)
    e = t.identity
    out = []
    for g in range(t.n):
        k, x = 1, g
        while x != e:
            x = t.mul(x, g)
            k += 1
        out.append(k)
    return OrderSpectrum(tuple(out))


def product_closure(t: CayleyTable, seeds: Iterable[int]) -> ElementSet:
    """Smallest product-closed subset containing ``seeds`` (a subgroup, for finite groups)."""
    n, tab = t.n, t.entries
    inside = bytearray(n)
    members: list[int] = []
    for s in seeds:
        if not inside[s]:
            inside[s] = 1
            members.append(s)
    i = 0
    while i < len(members):
        a = members[i]
        i += 1
        for b in members[: i]:
            for c in (tab[a * n + b], tab[b * n + a]):
                if not inside[c]:
                    inside[c] = 1
                    members.append(c)
    if not members and t.identity is not None:
        members.append(t.identity)
    return ElementSet.of(n, members)


def commutator(t: CayleyTable, g: int, h: int) -> int:
    """``g h g^-1 h^-1``."""
    inv = t.inverses
    return t.mul(t.mul(t.mul(g, h), inv[g]), inv[h])


def derived_subgroup(t: CayleyTable) -> ElementSet:
    require_group(t)
    return product_closure(t, {commutator(t, g, h) for g in range(t.n) for h in range(t.n)})


def normal_closure(t: CayleyTable, x: int) -> ElementSet:
    """Smallest normal subgroup containing ``x``: closure of its conjugacy class."""
    require_group(t)
    inv = t.inverses
    return product_closure(t, {t.mul(t.mul(g, x), inv[g]) for g in range(t.n)})


@dataclass(frozen=True)
class SylowDecomposition:
    primes: tuple[tuple[int, int], ...]
    components: dict[int, ElementSet]


def _p_elements(t: CayleyTable, spectrum: OrderSpectrum, p: int) -> ElementSet:
    bound = 1
    while bound < t.n:
        bound *= p
    return ElementSet.of(t.n, (g for g, o in enumerate(spectrum.orders) if bound % o == 0))


def sylow_decompose(t: CayleyTable) -> SylowDecomposition:
    """Split a nilpotent group into its Sylow subgroups.

    The group is nilpotent exactly when every set of p-elements is closed under
    the product; otherwise ``NotNilpotent`` is raised.
    """
    require_group(t)
    ords = orders(t)
    primes = tuple(factorize(t.n))
    n, tab = t.n, t.entries
    comps = {}
    for p, _ in primes:
        xp = _p_elements(t, ords, p)
        members = list(xp)
        for a in members:
            for b in members:
                if tab[a * n + b] not in xp:
                    raise NotNilpotent(f"{p}-elements are not closed: {a}*{b}")
        comps[p] = xp
    return SylowDecomposition(primes, comps)


def is_nilpotent(t: CayleyTable) -> bool:
    try:
        sylow_decompose(t)
    except NotNilpotent:
        return False
    return True


def frattini_rank_pgroup(t: CayleyTable, p: int) -> tuple[ElementSet, int]:
    """Frattini subgroup ``G^p [G,G]`` of a p-group and the rank d(G) it determines."""
    require_group(t)
    m = t.n
    while m % p == 0:
        m //= p
    if m != 1:
        raise NotPGroup(f"order {t.n} is not a power of {p}")
    seeds = {power(t, g, p) for g in range(t.n)}
    seeds |= {commutator(t, g, h) for g in range(t.n) for h in range(t.n)}
    phi = product_closure(t, seeds)
    index, d = t.n // len(phi), 0
    while index > 1:
        index //= p
        d += 1
    return phi, d
