"""Regression of the computed pipeline against the fixture tables.

Every compared quantity becomes a :class:`Cell` with one of four statuses:

* ``pass``: computed value equals the fixture value;
* ``flagged``: they differ, and the fixture logs the difference as a conflict
  in the printed source;
* ``unverified``: consistent, but not certified (a fixture cover with no toric
  limit, or a complex that matches only after a non-greedy ghost cancellation);
* ``fail``: a mismatch.

A report passes when it has no ``fail`` cell; in strict mode ``unverified``
cells fail too.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from . import closure
from .fixture import Fixture, format_tuple, levi_labels, load_fixture, match_fixture
from .geomtech import (
    BundleSpec,
    Summand,
    betti,
    cancel_ghosts,
    complex_terms,
    dual_weight,
    hilbert_series,
    hyperdiscriminant_bundle,
    is_palindromic,
    orbit_bundle,
    reduces_to,
)
from .grading import CASES, GradedLie, graded_case
from .vinberg import case_orbits, generic_rep

STATUSES = ("pass", "flagged", "unverified", "fail")
SECTIONS = ("orbits", "hasse", "numerical", "invariants", "complexes", "gorenstein")


@dataclass
class Cell:
    table: str
    key: str
    status: str
    expected: object = None
    computed: object = None
    note: str = ""


@dataclass
class CaseReport:
    case: str
    cells: list = field(default_factory=list)
    error: str | None = None

    def add(self, *args, **kw) -> Cell:
        c = Cell(*args, **kw)
        self.cells.append(c)
        return c

    def counts(self) -> dict:
        c = Counter(x.status for x in self.cells)
        return {s: c.get(s, 0) for s in STATUSES}

    def ok(self, strict: bool = False) -> bool:
        bad = {"fail", "unverified"} if strict else {"fail"}
        return self.error is None and not any(c.status in bad for c in self.cells)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "error": self.error,
            "counts": self.counts(),
            "cells": [asdict(c) for c in self.cells],
        }


# -- helpers ----------------------------------------------------------------------------

def _conflicts(fx: Fixture, field_: str) -> list:
    return [c for c in fx.conflicts if c.get("field") == field_]


def invariant_degree(gl: GradedLie) -> int | None:
    """Degree of the hyperdiscriminant when it is a hypersurface, else None.

    The dual variety of the highest weight orbit is the image of the 1-jet
    bundle; its degree is the numerator at 1 when that image is a
    hypersurface.
    """
    spec = hyperdiscriminant_bundle(gl)
    _, d = generic_rep(gl, list(spec.eta))
    if d != len(gl.g1) - 1:
        return None
    return hilbert_series(spec).degree


def summand_label(fx: Fixture, gl: GradedLie, notation: str, s: Summand) -> str:
    """Printed form of a summand: a GL tuple, or Dynkin labels of its dual."""
    if notation == "tuple":
        return format_tuple(fx.layout.tuple_of(gl, s.weight, s.deg))
    return ",".join(str(x) for x in levi_labels(gl, fx.levi_nodes, dual_weight(gl, s.weight)))


def fixture_terms(fx: Fixture, gl: GradedLie, cx: dict, terms: list) -> list | None:
    """Fixture complex as summands, resolved through the computed weights.

    Returns None when a printed summand has no computed counterpart.
    """
    notation = cx["notation"]
    lookup = {}
    for s in terms:
        lookup[(s.deg, summand_label(fx, gl, notation, s))] = (s.weight, s.dim)
    out = []
    for t in cx["terms"]:
        hit = lookup.get((t["deg"], t["weight"]))
        if hit is None:
            return None
        out.append(Summand(t["hom"], t["deg"], hit[0], t.get("mult", 1), hit[1]))
    return out


def _same(a: list, b: list) -> bool:
    key = lambda s: (s.hom, s.deg, s.weight)
    ca, cb = Counter(), Counter()
    for s in a:
        ca[key(s)] += s.mult
    for s in b:
        cb[key(s)] += s.mult
    return ca == cb


def _patched(cx: dict, conflicts: list, orbit: int) -> dict | None:
    """Fixture complex with logged misprints replaced by consistent terms."""
    fixes = [c for c in conflicts if c.get("orbit") == orbit]
    if not fixes:
        return None
    terms = [dict(t) for t in cx["terms"]]
    for c in fixes:
        p, q = c["printed"], c["consistent"]
        for t in terms:
            if (t["hom"], t["deg"], t["weight"]) == (p["hom"], p["deg"], p["weight"]):
                t.update(q)
                break
    return {**cx, "terms": terms}


def _fmt_terms(fx, gl, notation, terms) -> list:
    return [[s.hom, s.deg, summand_label(fx, gl, notation, s), s.mult] for s in terms]


# -- per-case verification ------------------------------------------------------------------

def verify_case(case: str, jobs: int = 1, sections=SECTIONS) -> CaseReport:
    """Compare every fixture table of ``case`` in the chosen sections."""
    rep = CaseReport(case)
    try:
        _verify(rep, case, jobs, set(sections))
    except Exception as e:  # itemized computational failure
        rep.error = f"{type(e).__name__}: {e}"
    return rep


def _verify(rep: CaseReport, case: str, jobs: int, sections: set) -> None:
    gl = graded_case(case)
    fx = load_fixture(case)
    records = case_orbits(case)
    mapping = match_fixture(gl, records, fx)

    if "orbits" in sections:
        _orbit_cells(rep, fx, records, mapping)
    if "hasse" in sections and fx.hasse is not None:
        _hasse_cells(rep, fx, gl, records, mapping, jobs)
    if "numerical" in sections:
        _numerical_cells(rep, fx, case, mapping)
    if "invariants" in sections and fx.invariant_degree is not None:
        d = invariant_degree(gl)
        rep.add("invariants", "degree", "pass" if d == fx.invariant_degree else "fail",
                fx.invariant_degree, d)
    if "complexes" in sections:
        _complex_cells(rep, fx, gl, case, mapping)
    if "gorenstein" in sections:
        _gorenstein_cells(rep, fx, case, mapping)


def _orbit_cells(rep, fx, records, mapping) -> None:
    by_index = {r.index: r for r in records}
    count_conf = _conflicts(fx, "orbits")
    n_fx, n_comp = len(fx.orbits), len(records)
    if n_fx == n_comp:
        rep.add("orbits", "count", "pass", n_fx, n_comp)
    elif count_conf and count_conf[0].get("computed") == n_comp:
        rep.add("orbits", "count", "flagged", n_fx, n_comp, count_conf[0].get("note", ""))
    else:
        rep.add("orbits", "count", "fail", n_fx, n_comp)
    for o in fx.orbits:
        j = mapping.get(o.i)
        if j is None:
            rep.add("orbits", f"O{o.i}", "fail", o.dim, None, "no computed orbit matches")
            continue
        r = by_index[j]
        rep.add("orbits", f"O{o.i}.dim", "pass" if r.dim == o.dim else "fail", o.dim, r.dim)
        if o.type is not None:
            status = "pass" if r.type_name == o.type else "fail"
            rep.add("orbits", f"O{o.i}.type", status, o.type, r.type_name)
    matched = set(mapping.values())
    for r in records:
        if r.index not in matched:
            status = "flagged" if count_conf else "fail"
            rep.add("orbits", "unmatched", status, None, f"{r.type_name} dim {r.dim}",
                    "extra computed orbit")


def _hasse_cells(rep, fx, gl, records, mapping, jobs) -> None:
    diag = closure.hasse(gl, records, jobs=jobs)
    rec = closure.reconcile(diag, fx.hasse, mapping)
    if not rec.diagnostic["match"]:
        rep.add("hasse", "edges", "fail", fx.hasse, rec.edges,
                json.dumps({k: rec.diagnostic[k] for k in ("missing", "extra")}))
    elif rec.unproven:
        rep.add("hasse", "edges", "unverified", fx.hasse, rec.edges,
                f"uncertified covers {rec.unproven}")
    else:
        rep.add("hasse", "edges", "pass", len(fx.hasse), len(rec.edges))
    if fx.swap:
        ok = closure.swap_invariant(rec.edges, fx.swap)
        rep.add("hasse", "swap", "pass" if ok else "fail", True, ok)


def _numerical_cells(rep, fx, case, mapping) -> None:
    deg_conf = {c["orbit"]: c for c in _conflicts(fx, "degree")}
    nums, degs = fx.numerators, fx.degrees
    for i in sorted(set(nums) | set(degs)):
        j = mapping.get(i)
        if j is None:
            rep.add("numerators", f"O{i}", "fail", nums.get(i), None, "orbit not matched")
            continue
        h = hilbert_series(orbit_bundle(case, j))
        if i in nums:
            status = "pass" if h.numerator == nums[i] else "fail"
            rep.add("numerators", f"O{i}", status, nums[i], h.numerator)
        if i in degs:
            if h.degree == degs[i]:
                rep.add("degrees", f"O{i}", "pass", degs[i], h.degree)
            elif i in deg_conf and h.degree in (deg_conf[i].get("table"), deg_conf[i].get("text")):
                rep.add("degrees", f"O{i}", "flagged", degs[i], h.degree, deg_conf[i].get("note", ""))
            else:
                rep.add("degrees", f"O{i}", "fail", degs[i], h.degree)
    for i, d in sorted(degs.items()):
        if i in deg_conf:
            c = deg_conf[i]
            alt = sorted({c.get("table"), c.get("text")} - {d, None})
            rep.add("degrees", f"O{i}.conflict", "flagged", d, alt, c.get("note", ""))


def _complex_cells(rep, fx, gl, case, mapping) -> None:
    cx_conf = _conflicts(fx, "complex")
    for i, cx in sorted(fx.complexes.items()):
        j = mapping.get(i)
        spec = orbit_bundle(case, j) if j is not None else None
        if spec is None:
            rep.add("complexes", f"O{i}", "fail", None, None, "no desingularization")
            continue
        terms = complex_terms(spec)
        reduced = cancel_ghosts(terms)
        _complex_cell(rep, fx, gl, i, cx, terms, reduced, _patched(cx, cx_conf, i))
        if "betti" in cx:
            b = betti(reduced)
            rep.add("betti", f"O{i}", "pass" if b == cx["betti"] else "fail", cx["betti"], b)


def _gorenstein_cells(rep, fx, case, mapping) -> None:
    """Gorenstein normalizations have self-dual resolutions."""
    gor_conf = {c["orbit"]: c for c in _conflicts(fx, "gorenstein")}
    for o in fx.orbits:
        flag = fx.normalization_flag(o.i, "gorenstein")
        j = mapping.get(o.i)
        if flag is None or j is None or o.dim == 0:
            continue
        spec = orbit_bundle(case, j)
        if spec is None:
            continue
        pal = is_palindromic(cancel_ghosts(complex_terms(spec)))
        if pal == bool(flag):
            rep.add("gorenstein", f"O{o.i}", "pass", bool(flag), pal)
        elif o.i in gor_conf:
            rep.add("gorenstein", f"O{o.i}", "flagged", bool(flag), pal, gor_conf[o.i].get("note", ""))
        else:
            rep.add("gorenstein", f"O{o.i}", "fail", bool(flag), pal)


def _complex_cell(rep, fx, gl, i, cx, terms, reduced, patched) -> None:
    notation = cx["notation"]
    computed = _fmt_terms(fx, gl, notation, reduced)
    target = fixture_terms(fx, gl, cx, terms)
    if target is not None and _same(reduced, target):
        rep.add("complexes", f"O{i}", "pass", len(cx["terms"]), len(reduced))
        return
    if target is not None and reduces_to(terms, target):
        rep.add("complexes", f"O{i}", "unverified", len(cx["terms"]), computed,
                "reachable by a different ghost cancellation")
        return
    if patched is not None:
        alt = fixture_terms(fx, gl, patched, terms)
        if alt is not None and (_same(reduced, alt) or reduces_to(terms, alt)):
            notes = "; ".join(c.get("note", "") for c in fx.conflicts
                              if c.get("field") == "complex" and c.get("orbit") == i)
            rep.add("complexes", f"O{i}", "flagged", len(cx["terms"]), computed, notes)
            return
    rep.add("complexes", f"O{i}", "fail", cx["terms"], computed)


# -- scopes and reports -----------------------------------------------------------------------

def resolve_scope(scope) -> list:
    """Expand ``all``, group names (``E6``) and case ids into a sorted case list."""
    if isinstance(scope, str):
        scope = [scope]
    out = []
    for s in scope:
        if s == "all":
            out.extend(CASES)
        elif s in CASES:
            out.append(s)
        else:
            hits = [c for c in CASES if c.split(".")[0] == s]
            if not hits:
                raise KeyError(f"unknown case or group {s!r}")
            out.extend(hits)
    return sorted(set(out))


def verify(scope, jobs: int = 1, sections=SECTIONS) -> list:
    cases = resolve_scope(scope)
    if jobs > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            n = len(cases)
            return list(pool.map(verify_case, cases, [1] * n, [tuple(sections)] * n))
    return [verify_case(c, jobs=jobs, sections=sections) for c in cases]


def _cell_text(v) -> str:
    if v is None:
        return ""
    s = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
    s = s.replace("|", "\\|")
    return s if len(s) <= 80 else s[:77] + "..."


def markdown(reports: list, strict: bool = False) -> str:
    lines = ["# Fixture regression", ""]
    lines.append("| case | pass | flagged | unverified | fail | result |")
    lines.append("|---|---|---|---|---|---|")
    for r in reports:
        c = r.counts()
        res = "error" if r.error else ("ok" if r.ok(strict) else "mismatch")
        lines.append(f"| {r.case} | {c['pass']} | {c['flagged']} | {c['unverified']} | {c['fail']} | {res} |")
    for r in reports:
        lines += ["", f"## {r.case}", ""]
        if r.error:
            lines += [f"computational failure: `{r.error}`", ""]
        lines.append("| table | key | status | expected | computed | note |")
        lines.append("|---|---|---|---|---|---|")
        for c in r.cells:
            lines.append(
                f"| {c.table} | {_cell_text(str(c.key))} | {c.status} | {_cell_text(c.expected)} "
                f"| {_cell_text(c.computed)} | {_cell_text(c.note)} |"
            )
    return "\n".join(lines) + "\n"


def exit_code(reports: list, strict: bool = False) -> int:
    if any(r.error for r in reports):
        return 3
    return 0 if all(r.ok(strict) for r in reports) else 2


# -- public numbering -----------------------------------------------------------------------

def numbered_hasse(case: str, jobs: int = 1) -> closure.HasseDiagram:
    """Computed Hasse diagram with orbits in public numbering."""
    from .fixture import numbering

    num = numbering(case)
    inv = {v: k for k, v in num.items()}
    diag = closure.hasse(graded_case(case), case_orbits(case), jobs=jobs)
    out = closure.HasseDiagram(
        {inv[i]: d for i, d in diag.nodes.items()},
        sorted((inv[a], inv[b]) for a, b in diag.edges),
    )
    out.diagnostic = {"undecided": sorted([inv[a], inv[b]] for a, b in diag.diagnostic["undecided"])}
    return out
