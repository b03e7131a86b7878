import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley.errors import MalformedInput, NotNormal, NotSubgroup, UnsupportedSize
from cayley.families import (
    cyclic,
    dihedral,
    elementary_abelian,
    generate_family,
    permuted,
    random_latin,
    steiner_quasigroup,
    symmetric,
)
from cayley.latin import fano
from cayley.tables import (
    AlgebraClass,
    CayleyTable,
    ElementSet,
    classify,
    parse_table,
    quotient_group,
    read_table,
    relabel,
    restrict,
    serialize_table,
    write_table,
)

from _corpus import groups_upto_12, naive_identity, quasigroups_upto_8

LOOP5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1], [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]


def naive_class(t):
    """Classification straight from the axioms."""
    n, m = t.n, t.entries
    comm = all(m[a * n + b] == m[b * n + a] for a in range(n) for b in range(n))
    assoc = all(
        m[m[a * n + b] * n + c] == m[a * n + m[b * n + c]] for a in range(n) for b in range(n) for c in range(n)
    )
    latin = all(len({m[a * n + b] for b in range(n)}) == n for a in range(n)) and all(
        len({m[a * n + b] for a in range(n)}) == n for b in range(n)
    )
    ident = naive_identity(t) is not None
    if latin and assoc:
        return AlgebraClass.ABELIAN_GROUP if comm else AlgebraClass.GROUP
    if latin:
        return AlgebraClass.LOOP if ident else AlgebraClass.QUASIGROUP
    if assoc:
        return AlgebraClass.SEMIGROUP
    return AlgebraClass.COMMUTATIVE_MAGMA if comm else AlgebraClass.MAGMA


def test_parse_z3():
    t = parse_table(b"3\n0 1 2\n1 2 0\n2 0 1")
    assert t.n == 3 and t.kind == AlgebraClass.ABELIAN_GROUP


def test_parse_constant_semigroup():
    t = parse_table("2\n0 0\n0 0")
    assert t.kind == AlgebraClass.SEMIGROUP


def test_parse_out_of_range_reports_position():
    with pytest.raises(MalformedInput) as exc:
        parse_table("2\n0 1\n1 5")
    assert exc.value.line == 3 and exc.value.column is not None


@pytest.mark.parametrize(
    "text",
    ["", "x\n", "2\n0 1\n", "2\n0 1 1\n1 0\n", "2\n0 a\n1 0\n", "2\n0 1\n1 0\n0 0\n", "0\n"],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(MalformedInput):
        parse_table(text)


def test_parse_comments_and_blank_lines():
    t = parse_table("# Z2\n\n2  # order\n0 1\n1 0 # last row\n")
    assert t.kind == AlgebraClass.ABELIAN_GROUP


def test_serialize_canonical_round_trip():
    text = b"3\n0 1 2\n1 2 0\n2 0 1\n"
    assert serialize_table(parse_table(text)) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))))
def test_round_trip_arbitrary_magmas(data):
    n, entries = data
    t = CayleyTable(n, tuple(entries))
    again = parse_table(serialize_table(t))
    assert again == t
    assert serialize_table(again) == serialize_table(t)


def test_file_round_trip(tmp_path):
    t = dihedral(4)
    write_table(t, tmp_path / "d4.cay")
    assert read_table(tmp_path / "d4.cay") == t


def test_classify_examples():
    assert classify([[(a + b) % 4 for b in range(4)] for a in range(4)]) == AlgebraClass.ABELIAN_GROUP
    assert symmetric(3).kind == AlgebraClass.GROUP
    # the order-5 square has 0 as identity, so it is a loop; not associative
    k = classify(LOOP5)
    assert k.is_quasigroup and not k.is_group
    assert k == AlgebraClass.LOOP


def test_s3_has_non_commuting_pair():
    t = symmetric(3)
    assert any(t.mul(a, b) != t.mul(b, a) for a in range(6) for b in range(6))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))))
def test_classify_matches_axioms(data):
    n, entries = data
    t = CayleyTable(n, tuple(entries))
    assert t.kind == naive_class(t)


def test_classify_matches_axioms_on_corpus():
    for t in groups_upto_12() + quasigroups_upto_8():
        assert t.kind == naive_class(t), t.name


@pytest.mark.parametrize("seed", range(5))
def test_classification_relabel_invariant(seed):
    for t in (symmetric(3), random_latin(6, seed), CayleyTable.from_rows(LOOP5)):
        assert permuted(t, seed).kind == t.kind


def test_partial_order():
    A = AlgebraClass
    assert A.MAGMA < A.SEMIGROUP < A.GROUP
    assert A.MAGMA < A.QUASIGROUP < A.LOOP < A.GROUP < A.ABELIAN_GROUP
    assert not (A.SEMIGROUP <= A.QUASIGROUP) and not (A.QUASIGROUP <= A.SEMIGROUP)


def test_element_set_operations():
    a, b = ElementSet.of(6, [0, 2, 4]), ElementSet.of(6, [4, 5])
    assert list(a | b) == [0, 2, 4, 5]
    assert list(a & b) == [4]
    assert list(a - b) == [0, 2]
    assert 2 in a and 3 not in a and len(a) == 3
    assert ElementSet.of(6, [4]) < a and not a < a
    assert ElementSet.full(3).is_full()
    assert repr(a) == "{0, 2, 4}"


def test_quotient_s3_by_a3():
    g = symmetric(3)
    a3 = ElementSet.of(6, [x for x in range(6) if g.mul(g.mul(x, x), x) == 0])
    q, cmap = quotient_group(g, a3)
    assert q.n == 2 and q.kind == AlgebraClass.ABELIAN_GROUP
    assert cmap[0] == 0 and len(set(cmap)) == 2


def test_quotient_z6_by_order_two():
    q, cmap = quotient_group(cyclic(6), ElementSet.of(6, [0, 3]))
    assert q.n == 3 and q.kind == AlgebraClass.ABELIAN_GROUP
    assert cmap == [0, 1, 2, 0, 1, 2]


def test_quotient_rejects_non_normal_and_non_subgroups():
    g = symmetric(3)
    transposition = next(x for x in range(1, 6) if g.mul(x, x) == 0)
    with pytest.raises(NotNormal):
        quotient_group(g, ElementSet.of(6, [0, transposition]))
    with pytest.raises(NotSubgroup):
        quotient_group(cyclic(6), ElementSet.of(6, [0, 1]))


def test_quotient_is_surjective_homomorphism():
    for g in groups_upto_12():
        n = g.n
        e = naive_identity(g)
        # every subgroup generated by one element that happens to be normal
        for x in range(n):
            sub = {e}
            y = x
            while y not in sub:
                sub.add(y)
                y = g.mul(y, x)
            try:
                q, cmap = quotient_group(g, ElementSet.of(n, sub))
            except NotNormal:
                continue
            assert q.n * len(sub) == n
            assert sorted(set(cmap)) == list(range(q.n))
            assert all(cmap[g.mul(a, b)] == q.mul(cmap[a], cmap[b]) for a in range(n) for b in range(n))


def test_restrict_and_relabel():
    g = cyclic(6)
    sub, elems = restrict(g, ElementSet.of(6, [0, 2, 4]))
    assert elems == [0, 2, 4] and sub.kind == AlgebraClass.ABELIAN_GROUP
    with pytest.raises(NotSubgroup):
        restrict(g, ElementSet.of(6, [1]))
    perm = [2, 0, 1]
    r = relabel(cyclic(3), perm)
    assert all(r.mul(perm[a], perm[b]) == perm[(a + b) % 3] for a in range(3) for b in range(3))


def test_divisions():
    for t in quasigroups_upto_8():
        n = t.n
        for a, b in itertools.product(range(n), repeat=2):
            assert t.mul(a, t.ldiv(a, b)) == b
            assert t.mul(t.rdiv(b, a), a) == b


# ---------------------------------------------------------------- families


def test_family_examples():
    assert serialize_table(cyclic(1)) == b"1\n0\n"
    s = steiner_quasigroup(fano())
    assert s.n == 7 and s.kind == AlgebraClass.QUASIGROUP
    assert all(s.mul(x, x) == x for x in range(7)) and s.is_commutative()


def test_dihedral3_isomorphic_to_s3_by_permutation_search():
    d, s = dihedral(3), symmetric(3)
    assert any(
        all(p[d.mul(a, b)] == s.mul(p[a], p[b]) for a in range(6) for b in range(6))
        for p in itertools.permutations(range(6))
    )


@pytest.mark.parametrize("n", range(1, 10))
def test_random_latin_is_latin_and_deterministic(n):
    for seed in range(3):
        t = random_latin(n, seed)
        assert t.kind.is_quasigroup
        assert t == random_latin(n, seed)


def test_family_size_errors():
    with pytest.raises(UnsupportedSize):
        symmetric(6)
    with pytest.raises(UnsupportedSize):
        random_latin(10, 0)
    with pytest.raises(UnsupportedSize):
        cyclic(0)


def test_generate_family_descriptors(tmp_path):
    assert generate_family("cyclic(5)") == cyclic(5)
    assert generate_family("direct_product(cyclic(2), dihedral(3))").n == 12
    assert generate_family("elementary_abelian(2,3)") == elementary_abelian(2, 3)
    assert generate_family("permuted(symmetric(3), 4)") == permuted(symmetric(3), 4)
    assert generate_family("steiner_quasigroup(fano)") == steiner_quasigroup(fano())
    path = tmp_path / "f.sts"
    path.write_text("3 1\n0 1 2\n")
    assert generate_family(f"steiner_quasigroup({path})").n == 3
    for bad in ("cyclic(", "cyclic(3) x", "nothing", "cyclic(a)", "symmetric(1,2)"):
        with pytest.raises(MalformedInput):
            generate_family(bad)
