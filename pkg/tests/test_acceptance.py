"""Acceptance criteria, one marker per criterion.

Expected values were read off the printed tables and checked row by row
against the source before being written here.  The terminal summary prints
one verdict line per criterion.
"""
import time
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagroups import closure
from thetagroups.bott import Grass, bott_gb, bott_gl, serre_dual_gl
from thetagroups.fixture import load_fixture, match_fixture
from thetagroups.geomtech import (
    cancel_ghosts,
    complex_terms,
    hilbert_series,
    is_palindromic,
    orbit_bundle,
    positive_f0,
    prop38_check,
)
from thetagroups.grading import CASES, graded_case
from thetagroups.rootsys import build_root_system
from thetagroups.schur import bag_identity, gl_dim, weyl_dim, weyl_dim_poly
from thetagroups.verify import fixture_terms, invariant_degree, summand_label, verify_case
from thetagroups.vinberg import _case_orbits, case_orbits


def crit(n, title):
    return pytest.mark.criterion(n, title)


def mapping(case):
    return match_fixture(graded_case(case), case_orbits(case), load_fixture(case))


def bundle(case, i):
    return orbit_bundle(case, mapping(case)[i])


# -- 1. orbit counts and dimensions ---------------------------------------------------

DIMS = {
    "E6.1": [0, 11, 16],
    "E6.2": [0, 10, 15, 19, 20],
    "E6.3": [0, 8, 11, 12, 15, 16, 18, 20],
    "E6.4": [0, 6, 8, 8, 9, 11, 10, 12, 13, 13, 14, 14, 14, 14, 15, 16, 17, 18],
    "F4.1": [0, 7, 10, 13, 14],
    "F4.2": [0, 4, 6, 7, 8, 8, 9, 10, 10, 11, 12],
    "F4.3": [0, 4, 6],
    "F4.4": [0, 7, 8],
    "G2.1": [0, 2],
    "G2.2": [0, 2, 3, 4],
}

F42_XFAIL = pytest.mark.xfail(
    strict=True,
    reason="a twelfth orbit (pencil <x^2, xy>, type A1+~A1, dim 7) exists; analysis in the ledger",
)


@crit(1, "orbit counts and dimension multisets")
@pytest.mark.parametrize(
    "case", [pytest.param(c, marks=F42_XFAIL) if c == "F4.2" else c for c in sorted(DIMS)]
)
def test_orbit_counts_and_dims(case):
    dims = sorted(o.dim for o in case_orbits(case))
    assert dims == sorted(DIMS[case])
    print(f"criterion 1 {case}: {len(dims)} orbits, dims {dims}")


@crit(1, "orbit counts and dimension multisets")
def test_printed_orbits_all_found():
    for case in sorted(DIMS):
        m = mapping(case)
        by = {o.index: o.dim for o in case_orbits(case)}
        assert sorted(by[m[o.i]] for o in load_fixture(case).orbits) == sorted(DIMS[case])


@crit(1, "orbit counts and dimension multisets")
def test_e64_dimension_ties():
    dims = [o.dim for o in case_orbits("E6.4")]
    assert dims.count(8) == 2 and dims.count(13) == 2 and dims.count(14) == 4


@crit(1, "orbit counts and dimension multisets")
def test_classification_runtime():
    _case_orbits.cache_clear()
    t0 = time.perf_counter()
    for case in CASES:
        case_orbits(case)
    elapsed = time.perf_counter() - t0
    print(f"criterion 1 runtime: {elapsed:.1f} s for all 10 cases")
    assert elapsed < 60


# -- 2. support types -------------------------------------------------------------------

TYPES = {
    "E6.1": ["0", "A1", "2A1"],
    "E6.2": ["0", "A1", "2A1", "3A1", "A2"],
    "E6.3": ["0", "A1", "2A1", "2A1", "3A1", "A2", "A2+A1", "A2+2A1"],
    "E6.4": ["0", "A1", "2A1", "2A1", "2A1", "3A1", "3A1", "A2", "A2+A1", "A2+A1",
             "A2+2A1", "A2+2A1", "A2+2A1", "2A2", "A3", "2A2+A1", "A3+A1", "D4(a1)"],
    "F4.1": ["0", "A1", "~A1", "A1+~A1", "A2"],
    "F4.2": ["0", "A1", "~A1", "A1+~A1", "A2", "~A2", "A2+~A1", "B2", "~A2+A1", "C3(a1)", "F4(a3)"],
    "F4.4": ["0", "~A1", "~A2"],
    "G2.2": ["0", "A1", "~A1", "G2(a1)"],
}


@crit(2, "support-type labels per orbit")
@pytest.mark.parametrize("case", sorted(TYPES))
def test_support_types(case):
    m = mapping(case)
    recs = {o.index: o for o in case_orbits(case)}
    got = [recs[m[i]].type_name for i in range(len(TYPES[case]))]
    assert got == TYPES[case]


@crit(2, "support-type labels per orbit")
def test_named_support_types():
    recs = {o.index: o for o in case_orbits("E6.4")}
    assert recs[mapping("E6.4")[17]].type_name == "D4(a1)"
    recs = {o.index: o for o in case_orbits("F4.2")}
    m = mapping("F4.2")
    assert recs[m[9]].type_name == "C3(a1)"
    assert recs[m[10]].type_name == "F4(a3)"


# -- 3. Hasse diagrams ---------------------------------------------------------------------

@crit(3, "Hasse diagrams edge-for-edge, every edge certified")
@pytest.mark.parametrize("case", ["E6.1", "E6.2", "E6.3", "E6.4", "F4.1", "F4.2"])
def test_hasse_diagrams(case):
    fx = load_fixture(case)
    gl = graded_case(case)
    diag = closure.hasse(gl, case_orbits(case))
    rec = closure.reconcile(diag, fx.hasse, mapping(case))
    assert rec.diagnostic["missing"] == [] and rec.diagnostic["extra"] == []
    assert rec.unproven == []
    assert sorted(rec.edges) == sorted(fx.hasse)
    if case == "E6.4":
        assert (9, 11) in rec.edges


# -- 4. Hilbert numerators and degrees -----------------------------------------------------

NUMERATORS = {
    "E6.1": {0: [1], 1: [1, 5, 5, 1], 2: [1]},
    "E6.2": {0: [1], 1: [1, 10, 20, 10, 1], 2: [1, 5, 15, 15, 5, 1], 3: [1, 1, 1, 1], 4: [1]},
    "E6.3": {0: [1], 1: [1, 12, 18, 4], 2: [1, 9], 3: [1, 8, 21, 20, 5], 4: [1, 5, 15, 25, 15, 3],
             5: [1, 4, 10, 10, 5], 6: [1, 2, 8, 4], 7: [1]},
    "E6.4": {0: [1], 1: [1, 12, 15, 2], 2: [1, 10, 10], 3: [1, 10, 10], 4: [1, 9, 9, 5],
             5: [1, 7, 28, 48, 21, 3], 6: [1, 8], 7: [1, 6, 21, 20, 9], 8: [1, 5, 24, 26, 16],
             9: [1, 5, 24, 26, 16], 10: [1, 4, 10], 11: [1, 4, 10], 12: [1, 4, 19, 22, 16, 4],
             13: [1, 4, 19, 18, 9], 14: [1, 3, 15, 5], 15: [1, 2, 3, 4, 5, 6, 4, 2],
             16: [1, 1, 1, 3, 3, 3], 17: [1]},
    "F4.1": {0: [1], 1: [1, 7, 7, 1], 2: [1, 4, 10, 6], 3: [1, 1, 1, 1], 4: [1]},
    "F4.2": {0: [1], 1: [1, 8, 3], 2: [1, 6, 6, 2], 3: [1, 5], 4: [1, 4, 10], 5: [1, 10, 10],
             6: [1, 3, 12, 10, 6], 7: [1, 2, 9], 8: [1, 2, 6, 10, 8], 9: [1, 1, 4, 6], 10: [1]},
}
DEGREES = {
    "E6.1": {0: 1, 1: 12, 2: 1},
    "E6.2": {0: 1, 1: 42, 2: 42, 3: 4, 4: 1},
    "E6.3": {0: 1, 1: 35, 2: 10, 3: 55, 4: 64, 5: 30, 6: 15, 7: 1},
    "E6.4": {0: 1, 1: 30, 2: 21, 3: 21, 4: 24, 5: 108, 6: 9, 7: 57, 8: 72, 9: 72, 10: 15,
             11: 15, 12: 66, 13: 51, 14: 24, 15: 27, 16: 12, 17: 1},
    "F4.1": {0: 1, 1: 16, 2: 21, 3: 4, 4: 1},
    "F4.2": {0: 1, 1: 12, 2: 15, 3: 6, 4: 15, 5: 21, 6: 32, 7: 12, 8: 27, 9: 12, 10: 1},
}


@crit(4, "Hilbert numerators and degrees of every printed row")
@pytest.mark.parametrize("case", sorted(NUMERATORS))
def test_numerators_and_degrees(case):
    t0 = time.perf_counter()
    m = mapping(case)
    for i, num in NUMERATORS[case].items():
        h = hilbert_series(orbit_bundle(case, m[i]))
        assert h.numerator == num, (case, i)
        assert h.degree == sum(num) == DEGREES[case][i], (case, i)
    assert time.perf_counter() - t0 < 600


@crit(4, "Hilbert numerators and degrees of every printed row")
def test_row_counts():
    assert {c: len(v) for c, v in NUMERATORS.items()} == {
        "E6.1": 3, "E6.2": 5, "E6.3": 8, "E6.4": 18, "F4.1": 5, "F4.2": 11}


@crit(4, "Hilbert numerators and degrees of every printed row")
def test_degree_conflict_is_reported():
    rep = verify_case("E6.4", sections=("numerical",))
    cells = {c.key: c for c in rep.cells if c.table == "degrees"}
    assert cells["O15"].status == "pass" and cells["O15"].computed == 27
    assert cells["O15.conflict"].status == "flagged"
    assert cells["O15.conflict"].computed == [21]


# -- 5. Grassmannian degree cross-check ------------------------------------------------------

def grassmannian_degree(k, n):
    """Degree of Gr(k, n) in the Plucker embedding (hook length formula)."""
    num = factorial(k * (n - k))
    for i in range(k):
        num *= factorial(i)
    den = 1
    for i in range(k):
        den *= factorial(n - k + i)
    return num // den


@crit(5, "E6.2 orbit-1 degree equals the Schubert calculus degree of Gr(3,6)")
def test_grassmannian_degree_cross_check():
    oracle = grassmannian_degree(3, 6)
    assert oracle == factorial(9) * factorial(0) * factorial(1) * factorial(2) // (
        factorial(3) * factorial(4) * factorial(5))
    assert oracle == 42
    assert hilbert_series(bundle("E6.2", 1)).degree == oracle


# -- 6. Euler-level complexes -----------------------------------------------------------------

@crit(6, "Euler-level complexes reproduce the printed ones")
@pytest.mark.parametrize("case,orbit", [
    ("E6.4", 16), ("E6.4", 15), ("E6.2", 2), ("E6.1", 1), ("F4.1", 2), ("F4.1", 1), ("G2.2", 1),
])
def test_complexes(case, orbit):
    fx = load_fixture(case)
    gl = graded_case(case)
    terms = complex_terms(bundle(case, orbit))
    reduced = cancel_ghosts(terms)
    cx = fx.complexes[orbit]
    target = fixture_terms(fx, gl, cx, terms)
    assert target is not None
    key = lambda s: (s.hom, s.deg, s.weight, s.mult)
    assert sorted(map(key, reduced)) == sorted(map(key, target))
    if "betti" in cx:
        assert [sum(s.mult * s.dim for s in reduced if s.hom == i) for i in range(len(cx["betti"]))] == cx["betti"]


@crit(6, "Euler-level complexes reproduce the printed ones")
def test_betti_tables():
    from thetagroups.geomtech import betti

    assert betti(cancel_ghosts(complex_terms(bundle("E6.2", 2)))) == [1, 20, 35, 35, 20, 1]
    assert betti(cancel_ghosts(complex_terms(bundle("E6.1", 1)))) == [1, 10, 16, 16, 10, 1]


@crit(6, "Euler-level complexes reproduce the printed ones")
def test_eagon_northcott_shape():
    fx = load_fixture("G2.2")
    gl = graded_case("G2.2")
    reduced = cancel_ghosts(complex_terms(bundle("G2.2", 1)))
    shape = [(s.hom, s.deg, summand_label(fx, gl, "tuple", s)) for s in reduced]
    assert shape == [(0, 0, "0,0"), (1, 2, "4,2"), (2, 3, "5,4")]


# -- 7. invariant degrees -----------------------------------------------------------------------

@crit(7, "hyperdiscriminant degrees")
@pytest.mark.parametrize("case,degree", [("E6.4", 12), ("F4.1", 4), ("F4.4", 2), ("G2.2", 4), ("F4.2", 12)])
def test_hyperdiscriminant_degree(case, degree):
    assert invariant_degree(graded_case(case)) == degree


# -- 8. property suites ---------------------------------------------------------------------------

def jacobi(rs, a, b, c):
    x, y, z = ({("e", r): 1} for r in (a, b, c))
    out = {}
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        for k, val in rs.bracket(rs.bracket(u, v), w).items():
            out[k] = out.get(k, 0) + val
    return {k: v for k, v in out.items() if v}


@crit(8, "property suites")
@pytest.mark.parametrize("t", ["G2", "F4", "E6"])
@settings(max_examples=300)
@given(data=st.data())
def test_root_closure_and_jacobi(t, data):
    rs = build_root_system(t)
    a, b, c = (data.draw(st.sampled_from(rs.roots)) for _ in range(3))
    assert rs.is_root(rs.reflect(a, b))
    s = tuple(x + y for x, y in zip(a, b))
    if rs.is_root(s):
        assert abs(rs.N(a, b)) == rs.string_below(a, b) + 1
    assert jacobi(rs, a, b, c) == {}


@crit(8, "property suites")
@pytest.mark.parametrize("t,degrees", [("G2", (2, 6)), ("F4", (2, 6, 8, 12)), ("E6", (2, 5, 6, 8, 9, 12))])
def test_weyl_group_orders(t, degrees):
    rs = build_root_system(t)
    order = 1
    for d in degrees:
        order *= d
    assert len(rs.weyl_orbit(rs.rho)) == order
    assert order == {"G2": 12, "F4": 1152, "E6": 51840}[t]


def gl_signed_dim(v):
    """Weyl dimension polynomial of GL_n at an arbitrary weight."""
    n = len(v)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= v[i] - v[j] + j - i
            den *= j - i
    return num // den


def dominant(v):
    return tuple(sorted(v, reverse=True))


grass_cases = st.tuples(st.integers(1, 5), st.integers(2, 6)).filter(lambda p: p[0] < p[1]).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.lists(st.integers(-6, 6), min_size=p[1] - p[0], max_size=p[1] - p[0]).map(dominant),
        st.lists(st.integers(-6, 6), min_size=p[0], max_size=p[0]).map(dominant),
    )
)


@crit(8, "property suites")
@settings(max_examples=1000)
@given(grass_cases)
def test_bott_single_degree_and_serre_duality(sample):
    (r, n), lam, mu = sample
    X = Grass(r, n)
    res = bott_gl(X, lam, mu)
    chi = gl_signed_dim(tuple(lam) + tuple(mu))
    if res.zero:
        assert chi == 0
        assert bott_gl(X, *serre_dual_gl(X, lam, mu)).zero
        return
    w = res.weight[0] + res.weight[1]
    assert chi == (-1) ** res.degree * gl_dim(w)
    dual = bott_gl(X, *serre_dual_gl(X, lam, mu))
    assert dual.degree == X.dim - res.degree
    assert dual.weight[0] + dual.weight[1] == tuple(-x for x in reversed(w))


@crit(8, "property suites")
@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3"])
@settings(max_examples=250)
@given(data=st.data())
def test_bott_flag_varieties(t, data):
    rs = build_root_system(t)
    labels = tuple(data.draw(st.integers(-8, 8)) for _ in range(rs.rank))
    res = bott_gb(t, labels)
    chi = weyl_dim_poly(t, labels)
    if res.zero:
        assert chi == 0
    else:
        assert chi == (-1) ** res.degree * weyl_dim(t, res.weight)
    dual = bott_gb(t, tuple(-x - 2 for x in labels))
    assert dual.zero == res.zero
    if not res.zero:
        assert dual.degree == len(rs.positive) - res.degree


@crit(8, "property suites")
@pytest.mark.parametrize("dims", [(6,), (2, 5), (2, 3, 3), (2, 3), (2,), (3, 3)])
def test_character_bag_identities(dims):
    N = 1
    for d in dims:
        N *= d
    for k in range(1, min(N, 5) + 1):
        got, want = bag_identity("ext", dims, k)
        assert got == want
        got, want = bag_identity("sym", dims, k)
        assert got == want


def _gorenstein_rows():
    out = []
    for case in sorted(CASES):
        fx = load_fixture(case)
        conflicts = {c["orbit"] for c in fx.conflicts if c.get("field") == "gorenstein"}
        for o in fx.orbits:
            if o.dim and fx.normalization_flag(o.i, "gorenstein") is True:
                marks = ()
                if o.i in conflicts:
                    marks = pytest.mark.xfail(
                        strict=True, reason="printed h-vector is not symmetric; see fixture conflicts")
                out.append(pytest.param(case, o.i, marks=marks, id=f"{case}-O{o.i}"))
    return out


@crit(8, "property suites")
@pytest.mark.parametrize("case,orbit", _gorenstein_rows())
def test_gorenstein_orbits_have_palindromic_terms(case, orbit):
    assert is_palindromic(cancel_ghosts(complex_terms(bundle(case, orbit))))


# -- 9. normality evidence -----------------------------------------------------------------------

@crit(9, "normality evidence on E6.2 and G2.2; positive F_0 for F4.2 O5 and G2.2 O2")
@pytest.mark.parametrize("case", ["E6.2", "G2.2"])
def test_normal_orbits_have_empty_intersections(case):
    fx = load_fixture(case)
    checked = 0
    for o in fx.orbits:
        if fx.singularity(str(o.i), "normal") is not True:
            continue
        spec = bundle(case, o.i)
        assert prop38_check(spec, jmax=4).empty, (case, o.i)
        checked += 1
    assert checked == (5 if case == "E6.2" else 1)


@crit(9, "normality evidence on E6.2 and G2.2; positive F_0 for F4.2 O5 and G2.2 O2")
@pytest.mark.parametrize("case,orbit", [("F4.2", 5), ("G2.2", 2)])
def test_nonnormal_orbits_have_positive_f0(case, orbit):
    assert load_fixture(case).singularity(str(orbit), "normal") is False
    spec = bundle(case, orbit)
    assert positive_f0(cancel_ghosts(complex_terms(spec)))
    assert not prop38_check(spec, jmax=4).empty
