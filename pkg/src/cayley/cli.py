"""Command-line front end.

Exit codes: 0 when a question is decided positively (or a command succeeds),
1 for a negative decision (non-member, non-isomorphic, above threshold), 2 for
errors.  ``--json`` switches every subcommand to a single JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import arith, iso, latin, membership, mingen, npreduce
from .errors import CayleyError, NotNilpotent
from .families import generate_family
from .tables import CayleyTable, read_table, serialize_table, write_table

OK, NO, ERROR = 0, 1, 2


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def flush(self) -> None:
        if self.as_json:
            sys.stdout.write(json.dumps(self.data, sort_keys=True) + "\n")
        else:
            sys.stdout.write("".join(line + "\n" for line in self.lines))


def _brute_cap(default: int | None = None) -> int | None:
    env = os.environ.get("CAYLEY_MAX_BRUTE")
    return int(env) if env else default


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _fmt(xs) -> str:
    return " ".join(map(str, xs))


# ---------------------------------------------------------------- subcommands


def cmd_validate(args, out: _Out) -> int:
    t = read_table(args.table)
    out.put("n", t.n)
    out.put("class", t.kind.value, t.kind.value)
    return OK


def cmd_analyze(args, out: _Out) -> int:
    t = read_table(args.table)
    out.put("n", t.n, f"order {t.n}")
    out.put("class", t.kind.value, f"class {t.kind.value}")
    out.put("commutative", t.is_commutative(), f"commutative {'yes' if t.is_commutative() else 'no'}")
    out.put("identity", t.identity, f"identity {'none' if t.identity is None else t.identity}")
    if not t.kind.is_group:
        return OK
    spectrum = arith.orders(t)
    out.put("spectrum", list(spectrum.spectrum), f"spectrum {_fmt(spectrum.spectrum)}")
    mult = spectrum.multiset
    out.put(
        "order_multiset",
        {str(k): v for k, v in mult.items()},
        "orders " + " ".join(f"{k}:{v}" for k, v in mult.items()),
    )
    try:
        dec = arith.sylow_decompose(t)
        out.put("nilpotent", True, "nilpotent yes")
        sylow = {str(p): len(dec.components[p]) for p, _ in dec.primes}
        out.put("sylow", sylow, "sylow " + " ".join(f"{p}:{s}" for p, s in sylow.items()))
    except NotNilpotent:
        out.put("nilpotent", False, "nilpotent no")
    cs = mingen.chief_series(t)
    out.put("chief_factors", list(cs.factor_orders), f"chief factors {_fmt(cs.factor_orders)}")
    return OK


def cmd_member(args, out: _Out) -> int:
    t = read_table(args.table)
    gens = _ints(args.set)
    closed = membership.closure(t, gens)
    inside = args.elem in closed
    out.put("member", inside, "yes" if inside else "no")
    if inside and args.emit_certificate:
        if not t.kind.is_quasigroup:
            raise CayleyError("certificates are only produced for quasigroups")
        p = membership.slp_compile(t, gens, args.elem)
        text = membership.serialize_slp(p)
        out.put("slp", text.splitlines())
        out.lines.append(text.rstrip("\n"))
    return OK if inside else NO


def cmd_mingen(args, out: _Out) -> int:
    t = read_table(args.table)
    r = mingen.minimum_generating_set(t, args.method, cap=_brute_cap())
    out.put("size", r.size, f"size {r.size}")
    w = r.witness.sorted()
    out.put("witness", w, f"witness {_fmt(w)}".rstrip())
    out.put("method", r.method)
    return OK


def _iso_decide(g: CayleyTable, h: CayleyTable, method: str):
    """Returns (verdict, bijection or None)."""
    if method == "brute":
        phi = iso.brute_iso(g, h, cap=_brute_cap(12))
        return phi is not None, phi
    if method == "abelian":
        return iso.iso_abelian(g, h), None
    if method == "simple":
        return iso.iso_simple(g, h), None
    if method == "split":
        return iso.iso_coprime_split(g, h), None
    phi = iso.iso_search(g, h)
    return phi is not None, phi


def cmd_iso(args, out: _Out) -> int:
    g, h = read_table(args.g), read_table(args.h)
    ok, phi = _iso_decide(g, h, args.method)
    out.put("isomorphic", ok, "isomorphic" if ok else "non-isomorphic")
    if phi is not None:
        out.put("map", list(phi), f"map {_fmt(phi)}")
        if args.emit_certificate and g.kind.is_quasigroup:
            w = iso.iso_witness(g, h, phi)
            out.put("witness", [list(w.seq_g.elems), list(w.seq_h.elems)])
            out.lines.append(iso.serialize_witness(w).rstrip("\n"))
    return OK if ok else NO


def _put_isotopy(out: _Out, w: latin.IsotopyWitness) -> None:
    out.put("alpha", list(w.alpha), f"alpha {_fmt(w.alpha)}")
    out.put("beta", list(w.beta), f"beta {_fmt(w.beta)}")
    out.put("gamma", list(w.gamma), f"gamma {_fmt(w.gamma)}")


def cmd_isotopy(args, out: _Out) -> int:
    a, b = read_table(args.l1), read_table(args.l2)
    w = latin.isotopy(a, b)
    out.put("isotopic", w is not None, "isotopic" if w else "non-isotopic")
    if w:
        _put_isotopy(out, w)
    return OK if w else NO


def cmd_mainclass(args, out: _Out) -> int:
    a, b = read_table(args.l1), read_table(args.l2)
    r = latin.main_class_iso(a, b)
    out.put("main_class_isomorphic", r is not None, "main-class isomorphic" if r else "not main-class isomorphic")
    if r:
        name, w = r
        out.put("parastrophe", name, f"parastrophe {name}")
        _put_isotopy(out, w)
    return OK if r else NO


def cmd_sts(args, out: _Out) -> int:
    src = Path(args.input)
    if src.suffix == ".sts":
        t = latin.sts_to_quasigroup(latin.read_sts(src))
        payload = serialize_table(t).decode()
        out.put("class", t.kind.value)
    else:
        s = latin.sts_from_quasigroup(read_table(src))
        payload = latin.serialize_sts(s)
        out.put("blocks", [list(b) for b in s.sorted_blocks()])
    if args.output:
        Path(args.output).write_text(payload)
        out.put("written", args.output, f"wrote {args.output}")
    else:
        out.put("text", payload)
        out.lines.append(payload.rstrip("\n"))
    return OK


def cmd_lsgraph(args, out: _Out) -> int:
    t = read_table(args.table)
    adj = latin.latin_square_graph(t)
    params = latin.srg_parameters(adj) if args.params else None
    if args.params:
        out.put("srg", list(params) if params else None, "srg " + (_fmt(params) if params else "no"))
    text = latin.serialize_graph(adj)
    if args.output:
        Path(args.output).write_text(text)
        out.put("written", args.output, f"wrote {args.output}")
    elif not args.params:
        out.put("edges", [list(e) for e in latin.graph_edges(adj)])
        out.lines.append(text.rstrip("\n"))
    return OK


def cmd_reduce(args, out: _Out) -> int:
    f = npreduce.read_dimacs(args.cnf)
    r = npreduce.reduce_3sat(f, unital=args.unital)
    dest = Path(args.output)
    write_table(r.magma, dest)
    names = dest.with_suffix(".names")
    names.write_text(r.names_text())
    dest.with_suffix(".threshold").write_text(f"{r.threshold}\n")
    out.put("n", r.magma.n, f"elements {r.magma.n}")
    out.put("threshold", r.threshold, f"threshold {r.threshold}")
    out.put("names", str(names), f"names {names}")
    if args.decide:
        size = mingen.brute_mgs(r.magma, _brute_cap()).size
        out.put("mgs_size", size, f"mgs size {size}")
        return OK if size <= r.threshold else NO
    return OK


def cmd_gen(args, out: _Out) -> int:
    t = generate_family(args.descriptor)
    if args.output:
        write_table(t, args.output)
        out.put("written", args.output, f"wrote {args.output}")
    else:
        text = serialize_table(t).decode()
        out.put("table", text)
        out.lines.append(text.rstrip("\n"))
    return OK


BENCH_CORPUS = (
    "cyclic(12)",
    "elementary_abelian(2,4)",
    "dihedral(8)",
    "quaternion()",
    "alternating(4)",
    "symmetric(4)",
    "direct_product(symmetric(3),cyclic(4))",
    "alternating(5)",
    "steiner_quasigroup(fano)",
    "steiner_quasigroup(ag23)",
    "random_latin(8,1)",
)


def cmd_bench(args, out: _Out) -> int:
    rows = []
    for desc in args.families or BENCH_CORPUS:
        t = generate_family(desc)
        timings = {}
        start = time.perf_counter()
        r = mingen.minimum_generating_set(t)
        timings["mingen"] = time.perf_counter() - start
        start = time.perf_counter()
        iso.iso_search(t, t)
        timings["iso_self"] = time.perf_counter() - start
        if t.kind.is_quasigroup:
            start = time.perf_counter()
            seq = membership.cube_like_sequence(t, r.witness if r.size else [0])
            timings["cube"] = time.perf_counter() - start
            timings["t"] = seq.t
        rows.append({"family": desc, "n": t.n, "class": t.kind.value, "mgs": r.size, **timings})
    out.put("rows", rows)
    header = f"{'family':42} {'n':>4} {'mgs':>3} {'mingen_s':>9} {'iso_s':>9} {'cube_s':>9}"
    out.lines.append(header)
    for row in rows:
        cube = f"{row['cube']:9.4f}" if "cube" in row else f"{'-':>9}"
        out.lines.append(
            f"{row['family']:42} {row['n']:4d} {row['mgs']:3d} {row['mingen']:9.4f} {row['iso_self']:9.4f} {cube}"
        )
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley", description="Algorithms on finite multiplication tables.")
    p.add_argument("--json", action="store_true", help="emit one JSON object instead of text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="print the algebra class of a table")
    s.add_argument("table")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="orders, nilpotency, Sylow and chief structure")
    s.add_argument("table")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("member", help="is an element in the sub-algebra generated by a set")
    s.add_argument("table")
    s.add_argument("--set", required=True, help="generators, e.g. 1,2")
    s.add_argument("--elem", required=True, type=int)
    s.add_argument("--emit-certificate", action="store_true", help="print a straight-line program")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("mingen", help="minimum generating set")
    s.add_argument("table")
    s.add_argument("--method", default="auto", choices=["auto", "brute", "chief", "enum", "nilpotent"])
    s.set_defaults(func=cmd_mingen)

    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--method", default="search", choices=["search", "brute", "abelian", "simple", "split"])
    s.add_argument("--emit-certificate", action="store_true", help="print two cube generating sequences")
    s.set_defaults(func=cmd_iso)

    for name, func, helptext in (
        ("isotopy", cmd_isotopy, "isotopy of Latin squares"),
        ("mainclass", cmd_mainclass, "main-class isomorphism of Latin squares"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("l1")
        s.add_argument("l2")
        s.set_defaults(func=func)

    s = sub.add_parser("sts", help="convert between .sts designs and Steiner quasigroup tables")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sts)

    s = sub.add_parser("lsgraph", help="Latin square graph as an edge list")
    s.add_argument("table")
    s.add_argument("-o", "--output")
    s.add_argument("--params", action="store_true", help="print strongly regular parameters")
    s.set_defaults(func=cmd_lsgraph)

    s = sub.add_parser("reduce-3sat", help="3SAT to minimum generating set of a commutative magma")
    s.add_argument("cnf")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--unital", action="store_true")
    s.add_argument("--decide", action="store_true", help="also run the brute-force MGS oracle")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("gen", help="emit a family table, e.g. 'dihedral(4)'")
    s.add_argument("descriptor")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="time the main algorithms over a corpus")
    s.add_argument("families", nargs="*")
    s.set_defaults(func=cmd_bench)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else ERROR
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except (CayleyError, OSError, ValueError) as exc:
        print(f"cayley: error: {exc}", file=sys.stderr)
        return ERROR
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
