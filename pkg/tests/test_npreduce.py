import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley.errors import MalformedInput, NotApplicable, TooLarge
from cayley.mingen import brute_mgs, generates
from cayley.npreduce import (
    CnfFormula,
    brute_sat,
    element_layout,
    parse_dimacs,
    random_cnf,
    read_dimacs,
    reduce_3sat,
    serialize_dimacs,
)
from cayley.tables import AlgebraClass


def test_single_clause_example():
    out = reduce_3sat(CnfFormula(1, ((1, 1, 1),)))
    assert out.magma.n == 5 and out.threshold == 2
    assert out.element_names == ("X1", "~X1", "C1", "S1,1", "0")
    res = brute_mgs(out.magma)
    assert res.size == 2 and res.witness.sorted() == [0, 2]


def test_contradiction_example():
    out = reduce_3sat(CnfFormula(1, ((1,), (-1,))))
    assert out.magma.n == 8 and out.threshold == 3
    assert brute_mgs(out.magma).size == 4


def test_no_clauses_rejected():
    with pytest.raises(NotApplicable):
        reduce_3sat(CnfFormula(2, ()))


def test_layout():
    idx = element_layout(2, 2, unital=True)
    assert list(idx) == ["X1", "X2", "~X1", "~X2", "C1", "C2", "S1,1", "S1,2", "S2,2", "0", "e"]


def test_table_shape():
    for seed in range(20):
        f = random_cnf(3, 3, seed)
        out = reduce_3sat(f)
        t = out.magma
        assert t.is_commutative()
        assert t.kind in (AlgebraClass.COMMUTATIVE_MAGMA, AlgebraClass.SEMIGROUP)
        idx = element_layout(f.num_vars, f.num_clauses)
        zero = idx["0"]
        c1, x1 = idx["C1"], idx["X1"]
        assert t.mul(zero, c1) == zero and t.mul(c1, c1) == zero
        assert t.mul(x1, x1) == zero
        # clause and literal elements are never products
        products = set(t.entries)
        for j in range(1, f.num_clauses + 1):
            assert idx[f"C{j}"] not in products


def test_minimum_sets_contain_clauses_and_a_literal_per_variable():
    for seed in range(12):
        f = random_cnf(2, 2, seed)
        out = reduce_3sat(f)
        t = out.magma
        idx = element_layout(2, 2)
        best = brute_mgs(t).size
        for combo in itertools.combinations(range(t.n), best):
            if generates(t, combo):
                assert all(idx[f"C{j}"] in combo for j in (1, 2))
                for i in (1, 2):
                    assert idx[f"X{i}"] in combo or idx[f"~X{i}"] in combo


def test_unital_adds_one():
    for seed in range(15):
        f = random_cnf(2, 2, seed)
        plain = brute_mgs(reduce_3sat(f).magma).size
        unital = reduce_3sat(f, unital=True)
        assert unital.threshold == 2 + 2 + 1
        assert unital.magma.identity == element_layout(2, 2, True)["e"]
        assert brute_mgs(unital.magma).size == plain + 1


def test_sat_iff_threshold_small_cases():
    for seed in range(30):
        f = random_cnf(2, 3, seed)
        out = reduce_3sat(f)
        assert (brute_sat(f) is not None) == (brute_mgs(out.magma).size <= out.threshold)


def test_names_text():
    out = reduce_3sat(CnfFormula(1, ((1,),)))
    assert out.names_text().splitlines()[0] == "0 X1"


def test_dimacs_round_trip(tmp_path):
    f = CnfFormula(3, ((1, -2), (3,), (-1, 2, -3)))
    text = serialize_dimacs(f)
    assert text == "p cnf 3 3\n1 -2 0\n3 0\n-1 2 -3 0\n"
    assert parse_dimacs(text) == f
    (tmp_path / "f.cnf").write_text("c comment\n" + text)
    assert read_dimacs(tmp_path / "f.cnf") == f


@pytest.mark.parametrize(
    "text",
    ["1 0\n", "p cnf 2 1\n3 0\n", "p cnf 2 2\n1 0\n", "p dnf 1 1\n1 0\n", "p cnf 2 1\n1 2 -1 -2 0\n", "p cnf 1 1\nx 0\n"],
)
def test_dimacs_rejects(text):
    with pytest.raises(MalformedInput):
        parse_dimacs(text)


def test_brute_sat_examples():
    assert brute_sat(CnfFormula(1, ((1,), (-1,)))) is None
    assert brute_sat(CnfFormula(2, ((1, 2), (-1,)))) == (False, True)
    assert brute_sat(CnfFormula(0, ())) == ()
    with pytest.raises(TooLarge):
        brute_sat(CnfFormula(30, ()), cap=24)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6), st.integers(0, 10**6))
def test_brute_sat_agrees_with_exhaustive_check(n, m, seed):
    f = random_cnf(n, m, seed)
    found = brute_sat(f)
    any_sat = any(f.satisfied_by(bits) for bits in itertools.product((0, 1), repeat=n))
    assert (found is not None) == any_sat
    if found is not None:
        assert f.satisfied_by(found)


def test_random_cnf_deterministic():
    assert random_cnf(4, 4, 9) == random_cnf(4, 4, 9)
    assert all(1 <= len(c) <= 3 for c in random_cnf(4, 20, 1).clauses)
