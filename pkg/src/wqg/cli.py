"""Command-line driver: generate, check, analyze and convert structures.

Every subcommand reads/writes the JSON structure format; "-" means stdin or
stdout.  Exit codes: 0 all checks pass, 1 axiom failure (or no antipode),
2 usage, parse or schema errors.  Reports are deterministic; --report writes
the full machine-readable report, --all-witnesses collects every failure
witness instead of the first.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fileformat as ff
from .algcore import check_algebra, check_coalgebra
from .bialgebroid import bialgebroid_to_weak, check_bialgebroid, weak_to_bialgebroid
from .duality import WeakPairing, check_weak_skew_pairing, dual_weak_bialgebra
from .errors import ParseError, SchemaError, WqgError
from .fields import QQ, GF, FieldSpec
from .frobenius import verify_frobenius_system, verify_ifs
from .hopf import NotHopf, beta_map, solve_antipode, verify_antipode
from .linalg import Matrix
from .repcat import comodule_check
from .report import CheckReport
from .weakcore import check_weak_bialgebra, counital_data, verify_counital_identities, antiiso_check
from .zoo import (FiniteGroupoid, check_groupoid, cyclic_group_groupoid, eb2, ebm2,
                  enveloping_bialgebroid, groupoid_algebra, groupoid_function_algebra,
                  m2q, monoid_bialgebra, pair_groupoid, r2, r3, scaled_trace_ifs_m2,
                  trace_ifs_commutative)


def _use_color() -> bool:
    if os.environ.get("WQG_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _status(passed: bool) -> str:
    word = "pass" if passed else "FAIL"
    if _use_color():
        return f"\x1b[32m{word}\x1b[0m" if passed else f"\x1b[31m{word}\x1b[0m"
    return word


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path: str) -> ff.LoadedStructure:
    return ff.loads(_read_text(path))


def _report_json(rep: CheckReport) -> list:
    items = []
    for it in rep.items:
        entry = {"axiom": it.axiom, "status": "pass" if it.passed else "fail"}
        if it.witnesses:
            entry["witnesses"] = [
                {"indices": list(w.indices),
                 "discrepancy": [[list(k), v] for k, v in w.discrepancy]}
                for w in it.witnesses]
        items.append(entry)
    return items


def _emit_report(rep: CheckReport, args, context: str) -> int:
    print(f"# {context}")
    for it in rep.items:
        line = f"{_status(it.passed)}  {it.axiom}"
        if not it.passed and it.witness is not None:
            line += f"  [{it.witness}]"
        print(line)
    print(f"{_status(rep.overall)}  (overall)")
    if args.report:
        doc = {"context": context,
               "overall": "pass" if rep.overall else "fail",
               "items": _report_json(rep)}
        _write_text(args.report, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return 0 if rep.overall else 1


def _check_for_kind(loaded: ff.LoadedStructure, all_witnesses: bool) -> CheckReport:
    kind, obj = loaded.kind, loaded.obj
    if kind == "algebra":
        return check_algebra(obj, all_witnesses)
    if kind == "coalgebra":
        return check_coalgebra(obj, all_witnesses)
    if kind == "weak-bialgebra":
        rep = check_weak_bialgebra(obj, all_witnesses)
        if rep.overall:
            rep = rep.merged(verify_counital_identities(obj, all_witnesses))
            rep = rep.merged(antiiso_check(obj, all_witnesses))
            if obj.antipode is not None:
                rep = rep.merged(verify_antipode(obj, obj.antipode, all_witnesses))
        return rep
    if kind == "frobenius-system":
        return verify_ifs(obj, all_witnesses)
    if kind == "bialgebroid":
        return check_bialgebroid(obj, all_witnesses)
    if kind == "groupoid":
        return check_groupoid(obj, all_witnesses)
    if kind == "comodule":
        return comodule_check(obj, all_witnesses)
    if kind == "pairing":
        if not isinstance(obj, WeakPairing):
            raise SchemaError("pairing file must embed both sides for checking", "$")
        return check_weak_skew_pairing(obj, all_witnesses)
    raise SchemaError(f"cannot check kind {kind!r}", "$.kind")


def cmd_check(args) -> int:
    loaded = _load(args.file)
    rep = _check_for_kind(loaded, args.all_witnesses)
    return _emit_report(rep, args, f"check {loaded.kind}")


def cmd_analyze(args) -> int:
    loaded = _load(args.file)
    kind, obj = loaded.kind, loaded.obj
    lines = [f"kind: {kind}"]
    overall = True
    if kind == "weak-bialgebra":
        rep = check_weak_bialgebra(obj)
        overall = rep.overall
        lines.append(f"dim: {obj.dim}")
        lines.append(f"field: {obj.field!r}")
        lines.append(f"axioms: {'pass' if rep.overall else 'FAIL'}")
        if rep.overall:
            cd = counital_data(obj)
            lines.append(f"dim H_s: {cd.h_s.dim}")
            lines.append(f"dim H_t: {cd.h_t.dim}")
            lines.append(f"target IFS: {'pass' if verify_ifs(cd.ifs_t).overall else 'FAIL'}")
            bd = beta_map(obj)
            lines.append(f"canonical map: domain {bd.domain.dim}, codomain {bd.codomain.dim}, "
                         f"bijective {bd.bijective}")
            lines.append(f"weak Hopf: {bd.bijective}")
            lines.append(f"antipode attached: {obj.antipode is not None}")
    elif kind == "frobenius-system":
        repf = verify_frobenius_system(obj)
        repi = verify_ifs(obj)
        overall = repf.overall
        lines.append(f"dim: {obj.algebra.dim}")
        lines.append(f"frobenius: {'pass' if repf.overall else 'FAIL'}")
        lines.append(f"ifs: {'pass' if repi.overall else 'FAIL'}")
    elif kind == "bialgebroid":
        rep = check_bialgebroid(obj)
        overall = rep.overall
        lines.append(f"base dim: {obj.base.algebra.dim}")
        lines.append(f"total dim: {obj.total.dim}")
        lines.append(f"axioms: {'pass' if rep.overall else 'FAIL'}")
    elif kind == "groupoid":
        rep = check_groupoid(obj)
        overall = rep.overall
        lines.append(f"objects: {obj.objects}")
        lines.append(f"arrows: {obj.size}")
        lines.append(f"axioms: {'pass' if rep.overall else 'FAIL'}")
    else:
        rep = _check_for_kind(loaded, False)
        overall = rep.overall
        lines.append(f"axioms: {'pass' if rep.overall else 'FAIL'}")
    out = "\n".join(lines)
    print(out)
    if args.report:
        _write_text(args.report, out + "\n")
    return 0 if overall else 1


def cmd_antipode(args) -> int:
    loaded = _load(args.file)
    if loaded.kind != "weak-bialgebra":
        raise SchemaError("antipode requires a weak-bialgebra file", "$.kind")
    result = solve_antipode(loaded.obj)
    if isinstance(result, NotHopf):
        print(f"{_status(False)}  not a weak Hopf algebra: canonical map has rank "
              f"{result.rank} on domain {result.domain_dim} -> codomain {result.codomain_dim}")
        if args.report:
            doc = {"context": "antipode", "overall": "fail",
                   "witness": {"domain_dim": result.domain_dim,
                               "codomain_dim": result.codomain_dim,
                               "rank": result.rank}}
            _write_text(args.report, json.dumps(doc, sort_keys=True, indent=1) + "\n")
        return 1
    f = loaded.obj.field
    names = loaded.names or tuple(f"e{i}" for i in range(loaded.obj.dim))
    print(f"{_status(True)}  antipode found")
    for j in range(result.cols):
        terms = [f"{f.format(result.data[i][j])}*{names[i]}"
                 for i in range(result.rows) if result.data[i][j]]
        print(f"S({names[j]}) = " + (" + ".join(terms) if terms else "0"))
    if args.report:
        doc = {"context": "antipode", "overall": "pass",
               "matrix": [[i, j, f.format(x)] for i, row in enumerate(result.data)
                          for j, x in enumerate(row) if x]}
        _write_text(args.report, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return 0


def cmd_dual(args) -> int:
    loaded = _load(args.file)
    if loaded.kind != "weak-bialgebra":
        raise SchemaError("dual requires a weak-bialgebra file", "$.kind")
    out = dual_weak_bialgebra(loaded.obj)
    _write_text(args.output, ff.dumps("weak-bialgebra", out, loaded.names))
    return 0


def cmd_to_bialgebroid(args) -> int:
    loaded = _load(args.file)
    if loaded.kind != "weak-bialgebra":
        raise SchemaError("to-bialgebroid requires a weak-bialgebra file", "$.kind")
    out = weak_to_bialgebroid(loaded.obj)
    _write_text(args.output, ff.dumps("bialgebroid", out, loaded.names))
    return 0


def cmd_from_bialgebroid(args) -> int:
    loaded = _load(args.file)
    if loaded.kind != "bialgebroid":
        raise SchemaError("from-bialgebroid requires a bialgebroid file", "$.kind")
    l = loaded.obj
    if args.ifs == "canonical":
        s = l.base
    else:
        sl = _load(args.ifs)
        if sl.kind != "frobenius-system":
            raise SchemaError("--ifs must name a frobenius-system file or 'canonical'", "$")
        s = sl.obj
    out = bialgebroid_to_weak(l, s)
    _write_text(args.output, ff.dumps("weak-bialgebra", out, loaded.names))
    return 0


def cmd_twist(args) -> int:
    loaded = _load(args.file)
    if loaded.kind != "weak-bialgebra":
        raise SchemaError("twist requires a weak-bialgebra file", "$.kind")
    h = loaded.obj
    parts = [p.strip() for p in args.t.split(",")]
    if len(parts) != h.dim:
        raise SchemaError(f"--t needs {h.dim} comma-separated scalars", "--t")
    t = tuple(h.field.parse(p, f"--t[{i}]") for i, p in enumerate(parts))
    from .bialgebroid import twist_weak
    out = twist_weak(h, t)
    _write_text(args.output, ff.dumps("weak-bialgebra", out, loaded.names))
    return 0


def cmd_pair(args) -> int:
    la = _load(args.file_a)
    lb = _load(args.file_b)
    if la.kind != "weak-bialgebra" or lb.kind != "weak-bialgebra":
        raise SchemaError("pair requires two weak-bialgebra files", "$.kind")
    td = _load(args.tau)
    if td.kind != "pairing":
        raise SchemaError("--tau must name a pairing file", "$.kind")
    f = la.obj.field
    if isinstance(td.obj, WeakPairing):
        entries = [((i, j), v) for i, row in enumerate(td.obj.tau0.data)
                   for j, v in enumerate(row) if v]
    else:
        _, tf, entries = td.obj
        f.require_same(tf)
    grid = [[f.zero] * lb.obj.dim for _ in range(la.obj.dim)]
    for (i, j), v in entries:
        if i >= la.obj.dim or j >= lb.obj.dim:
            raise SchemaError("tau0 index out of range for the given sides", "$.tau0")
        grid[i][j] = f.add(grid[i][j], v)
    pairing = WeakPairing(la.obj, lb.obj, Matrix.from_rows(f, grid))
    rep = check_weak_skew_pairing(pairing, args.all_witnesses)
    return _emit_report(rep, args, "pair")


def _parse_field(text: str) -> FieldSpec:
    if text in ("Q", "QQ", "rational"):
        return QQ
    if text.startswith("F"):
        try:
            return GF(int(text[1:]))
        except (ValueError, TypeError):
            pass
    raise SchemaError(f"unknown field {text!r}; use Q or F<p>", "--field")


def cmd_gen(args) -> int:
    field = _parse_field(args.field)
    if args.what == "pair-groupoid":
        g = pair_groupoid(args.objects)
        if args.form == "groupoid":
            _write_text(args.output, ff.dumps("groupoid", g))
            return 0
        wb = groupoid_algebra(g, field) if args.form == "weak-bialgebra" \
            else groupoid_function_algebra(g, field)
        _write_text(args.output, ff.dumps("weak-bialgebra", wb, g.names))
        return 0
    if args.what == "group":
        g = cyclic_group_groupoid(args.order)
        if args.form == "groupoid":
            _write_text(args.output, ff.dumps("groupoid", g))
            return 0
        wb = groupoid_algebra(g, field) if args.form != "function-algebra" \
            else groupoid_function_algebra(g, field)
        _write_text(args.output, ff.dumps("weak-bialgebra", wb, g.names))
        return 0
    if args.what == "monoid":
        try:
            table = json.loads(args.table)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--table is not valid JSON: {exc}", "--table")
        wb = monoid_bialgebra(table, field)
        _write_text(args.output, ff.dumps("weak-bialgebra", wb))
        return 0
    if args.what == "enveloping":
        if args.base == "r2":
            base = r2(field)
            system = trace_ifs_commutative(base)
        elif args.base == "r3":
            base = r3(field)
            system = trace_ifs_commutative(base)
        elif args.base == "m2":
            base = m2q(field)
            system = scaled_trace_ifs_m2(field)
        else:
            raise SchemaError(f"unknown base {args.base!r}; use r2, r3 or m2", "--base")
        l = enveloping_bialgebroid(base, system)
        _write_text(args.output, ff.dumps("bialgebroid", l))
        return 0
    raise SchemaError(f"unknown generator {args.what!r}", "gen")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wqg",
        description="Exact checks and constructions for weak bialgebras, weak Hopf "
                    "algebras and bialgebroids over Frobenius-separable bases.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_report_flags(p):
        p.add_argument("--report", help="write the machine-readable report to this path")
        p.add_argument("--all-witnesses", action="store_true",
                       help="collect every failure witness, not just the first")

    p = sub.add_parser("check", help="run the axiom suite appropriate to the file kind")
    p.add_argument("file")
    add_report_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="counital data, dimensions, Hopf status")
    p.add_argument("file")
    p.add_argument("--report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("antipode", help="solve for the antipode via the canonical map")
    p.add_argument("file")
    p.add_argument("--report")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("dual", help="emit the dual weak bialgebra")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("to-bialgebroid", help="translate a weak bialgebra over its H_t")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_to_bialgebroid)

    p = sub.add_parser("from-bialgebroid", help="translate a bialgebroid to a weak bialgebra")
    p.add_argument("file")
    p.add_argument("--ifs", default="canonical",
                   help="'canonical' (the stored base system) or a frobenius-system file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_from_bialgebroid)

    p = sub.add_parser("twist", help="twist by an invertible element of H_t")
    p.add_argument("file")
    p.add_argument("--t", required=True, help="comma-separated coordinates in the ambient basis")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("pair", help="check a weak skew pairing between two files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--tau", required=True, help="pairing file holding the tau0 entries")
    add_report_flags(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("gen", help="generate a named structure")
    p.add_argument("what", choices=("pair-groupoid", "group", "monoid", "enveloping"))
    p.add_argument("--objects", type=int, default=2, help="pair-groupoid object count")
    p.add_argument("--order", type=int, default=2, help="cyclic group order")
    p.add_argument("--table", default="[[0,1],[1,1]]", help="monoid table as JSON")
    p.add_argument("--base", default="r2", help="enveloping base: r2, r3 or m2")
    p.add_argument("--field", default="Q", help="Q or F<p>")
    p.add_argument("--form", default="weak-bialgebra",
                   choices=("weak-bialgebra", "function-algebra", "groupoid"),
                   help="output form for groupoid generators")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WqgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
