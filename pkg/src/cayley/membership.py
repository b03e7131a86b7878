"""Sub-algebra membership: closure, cube-like sequences and straight-line programs.

The deterministic entry points are :func:`closure` and :func:`slp_compile`.
A compiled :class:`Slp` (or a :class:`MembershipCertificate`) is the object a
nondeterministic membership test would guess; :func:`slp_eval` and
:func:`verify_membership_certificate` are the matching polylog-time checkers.

Mapping from the guessed bits to certificate fields:

* the sequence ``z_0 .. z_t``                  -> ``CubeSequence.elems``
* per ``z_i``: generator index or 4 exponent
  vectors over ``{0,1}^(i-1)`` plus an operation -> ``CubeSequence.steps[i]``
* the two exponent vectors placing ``g`` in L(t) -> ``MembershipCertificate.words``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import EmptyGeneratingSet, MalformedSlp, NotAQuasigroup, NotGenerating, NotMember
from .tables import AlgebraClass, CayleyTable, ElementSet

__all__ = [
    "closure",
    "Instr",
    "Slp",
    "Step",
    "CubeSequence",
    "MembershipCertificate",
    "cube_like_sequence",
    "cube_words",
    "slp_compile",
    "slp_eval",
    "slp_length_bound",
    "membership_certificate",
    "verify_cube_sequence",
    "verify_membership_certificate",
    "parse_slp",
    "serialize_slp",
]

MUL, LDIV, RDIV, GEN = "mul", "ldiv", "rdiv", "gen"


def _uses_divisions(t: CayleyTable) -> bool:
    # finite groups: product closure already gives the subgroup
    return t.kind in (AlgebraClass.QUASIGROUP, AlgebraClass.LOOP)


def _close(t: CayleyTable, seeds: Iterable[int], divisions: bool) -> list[int]:
    n, tab = t.n, t.entries
    if divisions:
        ld, rd = t.ldiv_entries, t.rdiv_entries
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
        an = a * n
        for b in members[:i]:
            bn = b * n
            if divisions:
                new = (tab[an + b], tab[bn + a], ld[an + b], ld[bn + a], rd[an + b], rd[bn + a])
            else:
                new = (tab[an + b], tab[bn + a])
            for c in new:
                if not inside[c]:
                    inside[c] = 1
                    members.append(c)
    return members


def closure(t: CayleyTable, x: ElementSet | Iterable[int], divisions: bool | None = None) -> ElementSet:
    """The sub-algebra generated by ``x``.

    Magmas and semigroups close under the product; quasigroups and loops also
    under both divisions.  Groups close under the product alone, which gives the
    same subgroup; pass ``divisions=True`` to force the quasigroup rule.
    """
    seeds = list(x)
    if not seeds:
        raise EmptyGeneratingSet("cannot close the empty set")
    if divisions is None:
        divisions = _uses_divisions(t)
    elif divisions and not t.kind.is_quasigroup:
        raise NotAQuasigroup("divisions need a quasigroup")
    return ElementSet.of(t.n, _close(t, seeds, divisions))


class Instr(NamedTuple):
    """One SLP line. For ``gen`` the element is ``j`` and ``k`` is unused."""

    op: str
    j: int
    k: int = -1

    def __str__(self) -> str:
        return f"gen {self.j}" if self.op == GEN else f"{self.op} {self.j} {self.k}"


@dataclass(frozen=True)
class Slp:
    instructions: tuple[Instr, ...]

    @property
    def length(self) -> int:
        return len(self.instructions)

    def __len__(self) -> int:
        return len(self.instructions)


def serialize_slp(p: Slp) -> str:
    return "".join(f"{ins}\n" for ins in p.instructions)


def parse_slp(text: str) -> Slp:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        op = parts[0]
        try:
            if op == GEN and len(parts) == 2:
                out.append(Instr(GEN, int(parts[1])))
            elif op in (MUL, LDIV, RDIV) and len(parts) == 3:
                out.append(Instr(op, int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise MalformedSlp(f"line {lineno}: cannot parse {line!r}") from None
    return Slp(tuple(out))


def slp_eval(t: CayleyTable, x: ElementSet | Iterable[int], p: Slp) -> int:
    """Run a straight-line program over generators ``x`` and return its last value."""
    allowed = set(x)
    values: list[int] = []
    for i, ins in enumerate(p.instructions):
        if ins.op == GEN:
            if ins.j not in allowed:
                raise MalformedSlp(f"instruction {i}: {ins.j} is not a generator")
            values.append(ins.j)
            continue
        if not (0 <= ins.j < i and 0 <= ins.k < i):
            raise MalformedSlp(f"instruction {i}: reference out of order")
        a, b = values[ins.j], values[ins.k]
        if ins.op == MUL:
            values.append(t.mul(a, b))
        elif ins.op in (LDIV, RDIV):
            if not t.kind.is_quasigroup:
                raise MalformedSlp(f"instruction {i}: division in a non-quasigroup")
            values.append(t.ldiv(a, b) if ins.op == LDIV else t.rdiv(a, b))
        else:
            raise MalformedSlp(f"instruction {i}: unknown op {ins.op!r}")
    if not values:
        raise MalformedSlp("empty program")
    return values[-1]


@dataclass(frozen=True)
class Step:
    """How ``z_i`` enters the sequence.

    ``source`` is ``gen`` for a generator, otherwise the operation combining
    ``a = w1\\w2`` and ``b = w3\\w4`` where the ``w`` are the cube words named by
    the four exponent vectors (each of length i-1).
    """

    element: int
    source: str
    exponents: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class CubeSequence:
    steps: tuple[Step, ...]

    @property
    def elems(self) -> tuple[int, ...]:
        return tuple(s.element for s in self.steps)

    @property
    def t(self) -> int:
        return len(self.steps) - 1


def _word(t: CayleyTable, elems: tuple[int, ...] | list[int], exps: tuple[int, ...]) -> int:
    n, tab = t.n, t.entries
    cur = elems[0]
    for z, e in zip(elems[1:], exps):
        if e:
            cur = tab[cur * n + z]
    return cur


def cube_words(t: CayleyTable, elems: tuple[int, ...] | list[int], i: int) -> dict[int, tuple[int, ...]]:
    """K(i) as a map element -> first exponent vector (binary counting order) producing it."""
    out: dict[int, tuple[int, ...]] = {}
    for mask in range(1 << i):
        exps = tuple((mask >> j) & 1 for j in range(i))
        out.setdefault(_word(t, elems, exps), exps)
    return out


def _quotients(t: CayleyTable, k: dict[int, tuple[int, ...]]) -> dict[int, tuple[tuple[int, ...], tuple[int, ...]]]:
    n, ld = t.n, t.ldiv_entries
    out: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    items = sorted(k.items(), key=lambda kv: kv[1][::-1])
    for g, eg in items:
        for h, eh in items:
            out.setdefault(ld[g * n + h], (eg, eh))
    return out


class _Reachability:
    """Greedy cube-like sequence inside the sub-quasigroup generated by ``x``."""

    def __init__(self, t: CayleyTable, x: Iterable[int]):
        if not t.kind.is_quasigroup:
            raise NotAQuasigroup("cube-like sequences need a quasigroup")
        self.t = t
        self.gens = sorted(set(x))
        if not self.gens:
            raise EmptyGeneratingSet("empty generating set")
        self.universe = set(_close(t, self.gens, True))
        z0 = self.gens[0]
        self.steps = [Step(z0, GEN)]
        self.cubes = [{z0: ()}]
        self.quots = [_quotients(t, self.cubes[0])]

    def done(self) -> bool:
        return len(self.quots[-1]) == len(self.universe)

    def extend(self) -> None:
        t, n = self.t, self.t.n
        tab, ld, rd = t.entries, t.ldiv_entries, t.rdiv_entries
        L = self.quots[-1]
        step = None
        for x in self.gens:
            if x not in L:
                step = Step(x, GEN)
                break
        if step is None:
            members = sorted(L)
            for g in members:
                for h in members:
                    for op, z in ((MUL, tab[g * n + h]), (RDIV, rd[g * n + h]), (LDIV, ld[g * n + h])):
                        if z not in L:
                            step = Step(z, op, (*L[g], *L[h]))
                            break
                    if step:
                        break
                if step:
                    break
        assert step is not None, "L(i) is closed but not the whole sub-quasigroup"
        z = step.element
        K = self.cubes[-1]
        grown: dict[int, tuple[int, ...]] = {k: e + (0,) for k, e in K.items()}
        for k, e in K.items():
            kz = tab[k * n + z]
            assert kz not in grown, "cube failed to double"
            grown[kz] = e + (1,)
        self.steps.append(step)
        self.cubes.append(grown)
        self.quots.append(_quotients(t, grown))

    def run(self, stop_at: int | None = None) -> None:
        while not self.done():
            if stop_at is not None and stop_at in self.quots[-1]:
                return
            self.extend()


def cube_like_sequence(t: CayleyTable, x: ElementSet | Iterable[int]) -> CubeSequence:
    """Cube-like generating sequence for a quasigroup generated by ``x``.

    Every step doubles the cube K(i), so the sequence stops after at most
    ceil(log2 n) extensions with L(t) = K(t)\\K(t) equal to the whole quasigroup.
    """
    r = _Reachability(t, x)
    if len(r.universe) != t.n:
        raise NotGenerating("the given set does not generate the quasigroup")
    r.run()
    return CubeSequence(tuple(r.steps))


def slp_length_bound(t: int) -> int:
    """Length bound for an SLP built from a cube-like sequence with t extensions."""
    return 1 + sum(4 * i + 3 for i in range(1, t + 1)) + 2 * t + 1


class _SlpBuilder:
    def __init__(self, t: CayleyTable):
        self.t = t
        self.ins: list[Instr] = []
        self.zpos: list[int] = []
        self.words: dict[tuple[int, ...], int] = {}

    def emit(self, op: str, j: int, k: int = -1) -> int:
        self.ins.append(Instr(op, j, k))
        return len(self.ins) - 1

    def word(self, exps: tuple[int, ...]) -> int:
        # cube words sharing a prefix share instructions
        cur = self.zpos[0]
        for i, (pos, e) in enumerate(zip(self.zpos[1:], exps)):
            if e:
                key = exps[: i + 1]
                if key not in self.words:
                    self.words[key] = self.emit(MUL, cur, pos)
                cur = self.words[key]
        return cur

    def add_step(self, step: Step) -> None:
        if step.source == GEN:
            self.zpos.append(self.emit(GEN, step.element))
            return
        w = [self.word(e) for e in step.exponents]
        a = self.emit(LDIV, w[0], w[1])
        b = self.emit(LDIV, w[2], w[3])
        self.zpos.append(self.emit(step.source, a, b))


def slp_compile(t: CayleyTable, x: ElementSet | Iterable[int], g: int) -> Slp:
    """Straight-line program over ``x`` computing ``g`` (last instruction).

    The sequence z_0, z_1, ... is grown only until ``g`` lies in L(s); then
    ``g = u\\v`` for two cube words u, v of K(s).
    """
    gens = sorted(set(x))
    if g in gens:
        return Slp((Instr(GEN, g),))
    r = _Reachability(t, gens)
    if g not in r.universe:
        raise NotMember(f"{g} is not in the sub-quasigroup generated by {gens}")
    r.run(stop_at=g)
    b = _SlpBuilder(t)
    for step in r.steps:
        b.add_step(step)
    f1, f2 = r.quots[-1][g]
    b.emit(LDIV, b.word(f1), b.word(f2))
    return Slp(tuple(b.ins))


@dataclass(frozen=True)
class MembershipCertificate:
    """Everything a nondeterministic membership test guesses: the sequence and g's two cube words."""

    sequence: CubeSequence
    words: tuple[tuple[int, ...], tuple[int, ...]]


def membership_certificate(t: CayleyTable, x: ElementSet | Iterable[int], g: int) -> MembershipCertificate:
    r = _Reachability(t, x)
    if g not in r.universe:
        raise NotMember(f"{g} is not generated")
    r.run(stop_at=g)
    return MembershipCertificate(CubeSequence(tuple(r.steps)), r.quots[-1][g])


def verify_cube_sequence(t: CayleyTable, x: ElementSet | Iterable[int], seq: CubeSequence) -> bool:
    """Check every step of a cube-like sequence against its recorded derivation."""
    gens = set(x)
    elems = seq.elems
    n, tab = t.n, t.entries
    if not elems or seq.steps[0].source != GEN or elems[0] not in gens:
        return False
    for i, step in enumerate(seq.steps[1:], start=1):
        if step.source == GEN:
            if step.element not in gens:
                return False
            continue
        if len(step.exponents) != 4 or any(len(e) != i - 1 for e in step.exponents):
            return False
        w = [_word(t, elems, e) for e in step.exponents]
        a, b = t.ldiv(w[0], w[1]), t.ldiv(w[2], w[3])
        value = {MUL: lambda: tab[a * n + b], LDIV: lambda: t.ldiv(a, b), RDIV: lambda: t.rdiv(a, b)}
        if step.source not in value or value[step.source]() != step.element:
            return False
    return True


def verify_membership_certificate(
    t: CayleyTable, x: ElementSet | Iterable[int], g: int, cert: MembershipCertificate
) -> bool:
    if not verify_cube_sequence(t, x, cert.sequence):
        return False
    f1, f2 = cert.words
    elems = cert.sequence.elems
    if len(f1) != len(elems) - 1 or len(f2) != len(elems) - 1:
        return False
    return t.ldiv(_word(t, elems, f1), _word(t, elems, f2)) == g


def log2_ceil(n: int) -> int:
    """Exact ceil(log2 n) for n >= 1."""
    return (n - 1).bit_length()
