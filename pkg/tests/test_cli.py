import json

import pytest

from cayley.cli import run
from cayley.families import cyclic, dihedral, elementary_abelian, random_latin, steiner_quasigroup, symmetric
from cayley.iso import parse_witness, verify_iso_witness
from cayley.latin import fano, parastrophe, verify_isotopy, IsotopyWitness, write_sts
from cayley.membership import parse_slp, slp_eval
from cayley.tables import read_table, write_table


@pytest.fixture
def tables(tmp_path):
    paths = {}
    for name, t in {
        "z6": cyclic(6),
        "z4": cyclic(4),
        "v4": elementary_abelian(2, 2),
        "s3": symmetric(3),
        "d3": dihedral(3),
        "fano": steiner_quasigroup(fano()),
        "q5": random_latin(5, 1),
        "q5t": parastrophe(random_latin(5, 1), "(13)"),
    }.items():
        p = tmp_path / f"{name}.cay"
        write_table(t, p)
        paths[name] = str(p)
    return paths


def call(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate(capsys, tables):
    assert call(capsys, "validate", tables["s3"]) == (0, "Group\n", "")
    code, out, _ = call(capsys, "--json", "validate", tables["fano"])
    assert code == 0 and json.loads(out) == {"class": "Quasigroup", "n": 7}


def test_mingen_example(capsys, tables):
    assert call(capsys, "mingen", "--method", "auto", tables["z6"]) == (0, "size 1\nwitness 1\n", "")
    for method in ("brute", "chief", "nilpotent"):
        code, out, _ = call(capsys, "mingen", "--method", method, tables["z6"])
        assert code == 0 and out.startswith("size 1\n")


def test_mingen_nilpotent_on_non_nilpotent_is_error(capsys, tables):
    code, out, err = call(capsys, "mingen", "--method", "nilpotent", tables["s3"])
    assert code == 2 and out == "" and err.startswith("cayley: error")


def test_iso_verdicts(capsys, tables):
    code, out, _ = call(capsys, "iso", tables["z4"], tables["v4"])
    assert code == 1 and out == "non-isomorphic\n"
    code, out, _ = call(capsys, "iso", tables["s3"], tables["d3"])
    assert code == 0 and out.startswith("isomorphic\nmap ")
    for method in ("brute", "split"):
        assert call(capsys, "iso", "--method", method, tables["s3"], tables["z6"])[0] == 1
    assert call(capsys, "iso", "--method", "abelian", tables["z4"], tables["v4"])[0] == 1


def test_iso_certificate_round_trips(capsys, tables):
    code, out, _ = call(capsys, "iso", "--emit-certificate", tables["s3"], tables["d3"])
    assert code == 0
    text = "\n".join(out.splitlines()[2:]) + "\n"
    w = parse_witness(text)
    assert verify_iso_witness(read_table(tables["s3"]), read_table(tables["d3"]), w)
    code, out, _ = call(capsys, "--json", "iso", "--emit-certificate", tables["s3"], tables["d3"])
    data = json.loads(out)
    assert data["isomorphic"] is True and len(data["map"]) == 6


def test_member_and_certificate(capsys, tables):
    code, out, _ = call(capsys, "member", tables["fano"], "--set", "1,2", "--elem", "6")
    assert code == 1 and out == "no\n"
    code, out, _ = call(capsys, "member", tables["fano"], "--set", "1,2,4", "--elem", "6", "--emit-certificate")
    assert code == 0 and out.startswith("yes\n")
    prog = parse_slp(out.split("\n", 1)[1])
    assert slp_eval(read_table(tables["fano"]), [1, 2, 4], prog) == 6


def test_isotopy_and_mainclass(capsys, tables):
    code, out, _ = call(capsys, "--json", "isotopy", tables["q5"], tables["q5"])
    data = json.loads(out)
    assert code == 0 and data["isotopic"]
    q = read_table(tables["q5"])
    assert verify_isotopy(q, q, IsotopyWitness(tuple(data["alpha"]), tuple(data["beta"]), tuple(data["gamma"])))
    assert call(capsys, "isotopy", tables["z4"], tables["v4"])[0] == 1
    code, out, _ = call(capsys, "--json", "mainclass", tables["q5"], tables["q5t"])
    data = json.loads(out)
    assert code == 0 and data["main_class_isomorphic"]
    w = IsotopyWitness(tuple(data["alpha"]), tuple(data["beta"]), tuple(data["gamma"]))
    assert verify_isotopy(parastrophe(q, data["parastrophe"]), read_table(tables["q5t"]), w)


def test_sts_both_directions(capsys, tmp_path, tables):
    write_sts(fano(), tmp_path / "f.sts")
    out_table = tmp_path / "f.cay"
    assert call(capsys, "sts", str(tmp_path / "f.sts"), "-o", str(out_table))[0] == 0
    assert read_table(out_table) == steiner_quasigroup(fano())
    code, out, _ = call(capsys, "sts", str(out_table))
    assert code == 0 and out.startswith("7 7\n")
    assert call(capsys, "sts", tables["z4"])[0] == 2


def test_lsgraph(capsys, tables):
    code, out, _ = call(capsys, "lsgraph", "--params", tables["q5"])
    assert code == 0 and out == "srg 25 12 5 6\n"
    code, out, _ = call(capsys, "lsgraph", tables["z4"])
    assert out.splitlines()[0] == "16 72"


def test_reduce_3sat(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 -2 0\n2 0\n")
    dest = tmp_path / "m.cay"
    code, out, _ = call(capsys, "reduce-3sat", "--unital", str(cnf), "-o", str(dest))
    assert code == 0 and "threshold 5" in out
    assert (tmp_path / "m.threshold").read_text() == "5\n"
    assert read_table(dest).n == 2 * 2 + 2 + 3 + 2
    assert (tmp_path / "m.names").read_text().splitlines()[-1].endswith(" e")
    assert call(capsys, "reduce-3sat", "--decide", str(cnf), "-o", str(dest))[0] == 0
    cnf.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, out, _ = call(capsys, "--json", "reduce-3sat", "--decide", str(cnf), "-o", str(dest))
    data = json.loads(out)
    assert code == 1 and data["mgs_size"] == 4 and data["threshold"] == 3


def test_gen_and_analyze(capsys, tmp_path):
    code, out, _ = call(capsys, "gen", "cyclic(3)")
    assert code == 0 and out == "3\n0 1 2\n1 2 0\n2 0 1\n"
    p = tmp_path / "s4.cay"
    assert call(capsys, "gen", "symmetric(4)", "-o", str(p))[0] == 0
    code, out, _ = call(capsys, "--json", "analyze", str(p))
    data = json.loads(out)
    assert data["nilpotent"] is False and data["chief_factors"] == [4, 3, 2]
    assert data["spectrum"] == [1, 2, 3, 4]


def test_bench_small(capsys):
    code, out, _ = call(capsys, "--json", "bench", "cyclic(4)", "symmetric(3)")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["mgs"] for r in rows] == [1, 2]


def test_errors_exit_two(capsys, tmp_path, tables):
    bad = tmp_path / "bad.cay"
    bad.write_text("2\n0 1\n1 7\n")
    code, out, err = call(capsys, "validate", str(bad))
    assert code == 2 and out == "" and "error" in err
    assert call(capsys, "validate", str(tmp_path / "missing.cay"))[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "member", tables["z6"], "--set", "x", "--elem", "1")[0] == 2


def test_determinism(capsys, tables):
    for argv in (
        ["--json", "mingen", tables["s3"]],
        ["--json", "iso", "--emit-certificate", tables["s3"], tables["d3"]],
        ["mainclass", tables["q5"], tables["q5t"]],
        ["analyze", tables["s3"]],
    ):
        first = call(capsys, *argv)
        assert call(capsys, *argv) == first
