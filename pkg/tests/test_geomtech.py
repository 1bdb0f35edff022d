from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetagroups.geomtech import (
    Summand,
    betti,
    cancel_ghosts,
    complex_terms,
    euler_polynomial,
    hilbert_series,
    is_palindromic,
    make_spec,
    orbit_bundle,
    positive_f0,
    prop38_check,
    reduces_to,
)
from thetagroups.grading import graded_case
from thetagroups.schur import gl_dim
from thetagroups.verify import invariant_degree


def strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def numerator_from_ring(dim_k, d, terms=20):
    """Numerator of sum dim_k(k) t^k times (1-t)^d, trailing zeros dropped."""
    h = [dim_k(k) for k in range(terms)]
    num = [sum((-1) ** i * comb(d, i) * h[m - i] for i in range(min(m, d) + 1)) for m in range(terms)]
    while num and num[-1] == 0:
        num.pop()
    return num


def test_grassmannian_cone_numerator():
    # coordinate ring of the cone over Gr(3, 6): degree k part is S_(k,k,k) C^6
    oracle = numerator_from_ring(lambda k: gl_dim((k, k, k, 0, 0, 0)), 10)
    h = hilbert_series(orbit_bundle("E6.2", 1))
    assert oracle == [1, 10, 20, 10, 1]
    assert h.numerator == oracle and h.codim == 10


def test_segre_cone_numerator():
    # cone over P^1 x P^2 in C^2 (x) C^3
    oracle = numerator_from_ring(lambda k: (k + 1) * comb(k + 2, 2), 4)
    spec = orbit_bundle("F4.3", 1)
    assert spec.dim == 4
    assert hilbert_series(spec).numerator == oracle == [1, 2]


def test_twisted_cubic_numerator():
    oracle = numerator_from_ring(lambda k: 3 * k + 1, 2)
    assert hilbert_series(orbit_bundle("G2.2", 1)).numerator == oracle == [1, 2]


@pytest.mark.parametrize("case", ["G2.2", "F4.3", "E6.2"])
def test_zero_orbit_numerator(case):
    h = hilbert_series(orbit_bundle(case, 0))
    assert h.numerator == [1] and h.codim == len(graded_case(case).g1)


def test_twisted_cubic_resolution():
    terms = cancel_ghosts(complex_terms(orbit_bundle("G2.2", 1)))
    assert betti(terms) == [1, 3, 2]
    assert sorted((s.hom, s.deg) for s in terms) == [(0, 0), (1, 2), (2, 3)]
    assert is_palindromic(terms) is False
    assert not positive_f0(terms)


def test_euler_polynomial_matches_numerator():
    spec = orbit_bundle("E6.2", 1)
    terms = complex_terms(spec)
    chi = strip(euler_polynomial(terms))
    # chi(t) = N(t) (1-t)^codim
    num = hilbert_series(spec).numerator
    c = spec.codim
    prod = [0] * (len(num) + c)
    for i, a in enumerate(num):
        for j in range(c + 1):
            prod[i + j] += a * (-1) ** j * comb(c, j)
    while prod and prod[-1] == 0:
        prod.pop()
    assert chi == prod


def test_gorenstein_grassmannian_complex_is_palindromic():
    terms = cancel_ghosts(complex_terms(orbit_bundle("E6.2", 1)))
    assert is_palindromic(terms)


def S(hom, deg, w="a", mult=1, dim=1):
    return Summand(hom, deg, (w,), mult, dim)


def test_ghost_cancellation_top_down():
    terms = [S(0, 0), S(1, 2), S(2, 2), S(3, 2)]
    assert cancel_ghosts(terms) == [S(0, 0), S(1, 2)]
    assert reduces_to(terms, [S(0, 0), S(1, 2)])
    assert reduces_to(terms, [S(0, 0), S(3, 2)])
    assert not reduces_to(terms, [S(0, 0), S(2, 2)])
    assert not reduces_to(terms, [S(0, 0), S(1, 2), S(1, 2, "b")])


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 3), st.sampled_from("ab")), max_size=8))
def test_cancel_ghosts_is_a_reduction(raw):
    terms = [S(h, d, w) for h, d, w in raw]
    out = cancel_ghosts(terms)
    assert reduces_to(terms, out)
    assert strip(euler_polynomial(out)) == strip(euler_polynomial(terms))


@pytest.mark.parametrize("case,expected", [
    ("G2.2", 4), ("E6.1", None), ("E6.3", None), ("F4.3", None),
])
def test_hyperdiscriminant_degree(case, expected):
    assert invariant_degree(graded_case(case)) == expected


def test_vanishing_check_separates_normal_orbits():
    assert prop38_check(orbit_bundle("G2.2", 1)).empty
    rep = prop38_check(orbit_bundle("G2.2", 2))
    assert not rep.empty and rep.to_dict()["strict"] is False


def test_make_spec_rejects_non_stable_sets():
    gl = graded_case("G2.2")
    low = min(gl.g1, key=lambda r: (sum(r), r))
    with pytest.raises(ValueError):
        make_spec(gl, [low])
