"""Command line interface: ``thetagroups <command> ...``.

Exit codes: 0 pass, 1 usage error, 2 fixture mismatch, 3 computational failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .grading import CASES, graded_case

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _case(name: str) -> str:
    if name not in CASES:
        raise UsageError(f"unknown case {name!r}; choose from {', '.join(sorted(CASES))}")
    return name


def _orbit(case: str, label: str) -> int:
    from .fixture import numbering

    num = numbering(case)
    try:
        i = int(label)
    except ValueError:
        raise UsageError(f"orbit must be an integer, got {label!r}") from None
    if i not in num:
        raise UsageError(f"{case} has orbits {min(num)}..{max(num)}")
    return i


def _poly(c) -> str:
    parts = []
    for k, a in enumerate(c):
        if not a:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        coef = str(a) if (a != 1 or k == 0) else ""
        parts.append(coef + mono)
    return " + ".join(parts) or "0"


# -- commands ---------------------------------------------------------------------------

def cmd_list_cases(args) -> int:
    rows = []
    for c in sorted(CASES):
        gl = graded_case(c)
        rows.append({"case": c, "type": str(gl.rs.stype), "node": gl.node, "dim_g1": len(gl.g1)})
    if args.json:
        print(_dump(rows))
    else:
        for r in rows:
            print(f"{r['case']}  {r['type']} node {r['node']}  dim g1 = {r['dim_g1']}")
    return EXIT_OK


def cmd_grade(args) -> int:
    gl = graded_case(_case(args.case))
    if args.json:
        print(gl.to_json())
        return EXIT_OK
    d = json.loads(gl.to_json())
    print(f"{d['case']}: {d['type']} graded by node {d['node']}")
    for k in sorted(d["dims"], key=int):
        print(f"  dim g_{k} = {d['dims'][k]}")
    print("  levi components (nodes): " + ", ".join(str(c) for c in d["levi"]))
    return EXIT_OK


def _orbit_rows(case: str) -> list:
    from .fixture import numbering
    from .vinberg import case_orbits

    recs = {r.index: r for r in case_orbits(case)}
    rows = []
    for i, j in numbering(case).items():
        d = recs[j].to_dict()
        d["i"] = i
        rows.append(d)
    return rows


def _verify_exit(case: str, sections, strict: bool, quiet: bool) -> int:
    from .verify import verify_case

    rep = verify_case(case, sections=sections)
    if rep.error:
        print(f"computational failure: {rep.error}", file=sys.stderr)
        return EXIT_FAILURE
    bad = [c for c in rep.cells if c.status == "fail" or (strict and c.status == "unverified")]
    for c in rep.cells:
        if c.status != "pass" and not (quiet and c in bad):
            print(f"{c.status}: {c.table} {c.key}: {c.note}", file=sys.stderr)
    for c in bad:
        print(f"- {c.table} {c.key}: expected {c.expected!r}", file=sys.stderr)
        print(f"+ {c.table} {c.key}: computed {c.computed!r}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_orbits(args) -> int:
    case = _case(args.case)
    rows = _orbit_rows(case)
    if args.json:
        print(_dump({"case": case, "orbits": rows}))
    else:
        print(f"{case}: {len(rows)} orbits")
        print(f"{'i':>3}  {'type':<12}{'dim':>4}  representative")
        for r in rows:
            rep = " + ".join("(" + ",".join(map(str, x)) + ")" for x in r["rep"]) or "0"
            print(f"{r['i']:>3}  {r['type']:<12}{r['dim']:>4}  {rep}")
    if args.verify:
        return _verify_exit(case, ("orbits",), args.strict, quiet=True)
    return EXIT_OK


def cmd_hasse(args) -> int:
    from .verify import numbered_hasse

    case = _case(args.case)
    diag = numbered_hasse(case, jobs=args.jobs)
    dot = diag.to_dot(case)
    if args.dot:
        Path(args.dot).write_text(dot)
    if args.json:
        print(_dump({"case": case, **diag.to_dict()}))
    elif not args.dot:
        sys.stdout.write(dot)
    if args.verify or args.strict:
        return _verify_exit(case, ("hasse",), args.strict, quiet=True)
    return EXIT_OK


def _hilbert(case: str, i: int):
    from .fixture import numbering
    from .geomtech import hilbert_series, orbit_bundle

    spec = orbit_bundle(case, numbering(case)[i])
    if spec is None:
        raise RuntimeError(f"no desingularization found for {case} orbit {i}")
    return replace(hilbert_series(spec), orbit=i)


def cmd_hilbert(args) -> int:
    from .fixture import numbering

    case = _case(args.case)
    labels = sorted(numbering(case)) if args.orbit == "all" else [_orbit(case, args.orbit)]
    for i in labels:
        h = _hilbert(case, i)
        if args.json:
            print(h.to_json())
        else:
            print(f"{case} O{i}: codim {h.codim}, degree {h.degree}, numerator {_poly(h.numerator)}"
                  f"  [{', '.join(h.flags)}]")
    return EXIT_OK


def _summand_text(case: str, s) -> str:
    from .fixture import load_fixture
    from .verify import summand_label

    try:
        fx = load_fixture(case)
    except FileNotFoundError:
        fx = None
    gl = graded_case(case)
    if fx is not None and fx.layout is not None:
        return "S(" + summand_label(fx, gl, "tuple", s) + ")"
    if fx is not None and fx.levi is not None:
        return "V*(" + summand_label(fx, gl, "dynkin", s) + ")"
    return "V(" + ",".join(map(str, s.weight)) + ")"


def cmd_resolve(args) -> int:
    from .fixture import numbering
    from .geomtech import FLAG, betti, cancel_ghosts, complex_terms, is_palindromic, orbit_bundle

    case = _case(args.case)
    i = _orbit(case, args.orbit)
    spec = orbit_bundle(case, numbering(case)[i])
    if spec is None:
        raise RuntimeError(f"no desingularization found for {case} orbit {i}")
    terms = complex_terms(spec)
    if not args.raw:
        terms = cancel_ghosts(terms)
    out = {
        "case": case,
        "orbit": i,
        "bundle": {**spec.to_dict(), "orbit": i},
        "terms": [
            {"hom": s.hom, "deg": s.deg, "weight": list(s.weight), "label": _summand_text(case, s),
             "mult": s.mult, "dim": s.dim}
            for s in terms
        ],
        "betti": betti(terms),
        "palindromic": is_palindromic(terms),
        "flags": [FLAG] if args.raw else [FLAG, "ghosts-cancelled"],
    }
    if args.json:
        print(_dump(out))
        return EXIT_OK
    print(f"{case} O{i}: P nodes {out['bundle']['p_nodes']}, rank eta {len(spec.eta)}, rank xi {len(spec.xi)}")
    for t in out["terms"]:
        m = f"{t['mult']} x " if t["mult"] > 1 else ""
        tw = f"(-{t['deg']})" if t["deg"] else ""
        print(f"  F_{t['hom']}: {m}{t['label']}{tw}  dim {t['dim']}")
    print(f"  betti {out['betti']}, palindromic {out['palindromic']}  [{', '.join(out['flags'])}]")
    return EXIT_OK


def cmd_bott(args) -> int:
    from .bott import bott, parse_space, parse_weight

    try:
        space = parse_space(args.space)
        w = parse_weight(space, args.weight)
    except ValueError as e:
        raise UsageError(str(e)) from None
    r = bott(space, w)
    if args.json:
        print(r.to_json())
    elif r.zero:
        print("all cohomology vanishes")
    else:
        print(f"H^{r.degree} = {r.to_dict()['weight']}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .verify import SECTIONS, exit_code, markdown, resolve_scope, verify

    if not args.scope:
        raise UsageError("verify-paper needs a scope: 'all', a group (E6, F4, G2) or case ids")
    try:
        resolve_scope(args.scope)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    sections = args.sections.split(",") if args.sections else SECTIONS
    unknown = set(sections) - set(SECTIONS)
    if unknown:
        raise UsageError(f"unknown sections {sorted(unknown)}; choose from {', '.join(SECTIONS)}")
    reports = verify(args.scope, jobs=args.jobs, sections=tuple(sections))
    if args.report:
        from .report import write_report

        write_report(reports, args.report, strict=args.strict, jobs=1)
    if args.json:
        print(_dump({"strict": args.strict, "cases": [r.to_dict() for r in reports]}))
    else:
        sys.stdout.write(markdown(reports, args.strict))
    return exit_code(reports, args.strict)


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thetagroups", description="Orbits of theta groups of exceptional type.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q, verify=False, jobs=False):
        q.add_argument("--json", action="store_true", help="machine readable output")
        if verify:
            q.add_argument("--verify", action="store_true", help="compare with the fixture")
            q.add_argument("--strict", action="store_true", help="uncertified cells fail")
        if jobs:
            q.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")

    q = sub.add_parser("list-cases", help="the ten graded cases")
    common(q)
    q.set_defaults(func=cmd_list_cases)

    q = sub.add_parser("grade", help="graded pieces of a case")
    q.add_argument("case")
    common(q)
    q.set_defaults(func=cmd_grade)

    q = sub.add_parser("orbits", help="orbit classification")
    q.add_argument("case")
    common(q, verify=True)
    q.set_defaults(func=cmd_orbits)

    q = sub.add_parser("hasse", help="closure order as a Hasse diagram")
    q.add_argument("case")
    q.add_argument("--dot", metavar="PATH", help="write Graphviz DOT here")
    common(q, verify=True, jobs=True)
    q.set_defaults(func=cmd_hasse)

    q = sub.add_parser("hilbert", help="Hilbert numerator of an orbit closure")
    q.add_argument("case")
    q.add_argument("orbit", help="orbit number or 'all'")
    common(q)
    q.set_defaults(func=cmd_hilbert)

    q = sub.add_parser("resolve", help="Euler-level terms of the resolution")
    q.add_argument("case")
    q.add_argument("orbit")
    q.add_argument("--raw", action="store_true", help="keep ghost pairs")
    common(q)
    q.set_defaults(func=cmd_resolve)

    q = sub.add_parser("bott", help="cohomology of a homogeneous bundle")
    q.add_argument("space", help="e.g. grass:3,6 or flag:A2, factors joined by x")
    q.add_argument("weight", help="per factor weights joined by |; grass weights are lam;mu")
    common(q)
    q.set_defaults(func=cmd_bott)

    q = sub.add_parser("verify-paper", help="regression against the fixture tables")
    q.add_argument("scope", nargs="*", help="'all', a group or case ids")
    q.add_argument("--report", metavar="DIR", help="write report.md, report.json and figures")
    q.add_argument("--sections", help="comma separated subset of the compared tables")
    common(q, verify=False, jobs=True)
    q.add_argument("--strict", action="store_true", help="uncertified cells fail")
    q.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"thetagroups: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ValueError, ArithmeticError) as e:
        print(f"thetagroups: computational failure: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
