import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetagroups.bott import (
    FullFlag,
    Grass,
    HomSpace,
    bott,
    bott_gb,
    bott_gl,
    euler_char_line_bundles,
    parse_space,
    parse_weight,
    serre_dual_gl,
)
from thetagroups.rootsys import SimpleType
from thetagroups.schur import gl_dim, weyl_dim


def test_line_bundles_on_p1():
    X = Grass(1, 2)
    # O(d) on P^1: Q has the weight, H^0 = S^d for d >= 0, H^1 for d <= -2
    assert bott_gl(X, (3,), (0,)).degree == 0
    assert bott_gl(X, (-1,), (0,)).zero
    r = bott_gl(X, (-4,), (0,))
    assert r.degree == 1 and gl_dim(r.weight[0] + r.weight[1]) == 3


def test_borel_weil_on_grassmannian():
    X = Grass(3, 6)
    r = bott_gl(X, (1, 1, 1), (0, 0, 0))
    assert r.degree == 0 and r.weight == ((1, 1, 1), (0, 0, 0))
    assert gl_dim(r.weight[0] + r.weight[1]) == 20


def test_grassmannian_weight_lengths_checked():
    with pytest.raises(ValueError):
        bott_gl(Grass(2, 4), (1,), (0, 0))
    with pytest.raises(ValueError):
        Grass(5, 4)


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2))
def test_dominant_weights_have_sections(labels):
    r = bott_gb("A2", tuple(labels))
    assert r.degree == 0 and r.weight == tuple(labels)


def test_flag_examples():
    assert bott_gb("A1", (-3,)).degree == 1
    assert bott_gb("A2", (-1, 0)).zero
    assert bott_gb("G2", (-2, -2)).degree == 6


def test_canonical_bundle_has_top_cohomology():
    for t in ["A2", "B2", "G2", "A3"]:
        st_ = SimpleType.parse(t)
        n = st_.rank
        r = bott_gb(t, (-2,) * n)
        assert r.degree == FullFlag(st_).dim
        assert weyl_dim(t, r.weight) == 1


def test_kunneth_product():
    space = parse_space("grass:1,2 x flag:A1")
    w = parse_weight(space, "-3;0|-2")
    r = bott(space, w)
    assert r.degree == 2
    assert space.dim == 2
    assert bott(space, parse_weight(space, "-1;0|3")).zero


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_space("proj:3")
    space = parse_space("grass:1,3")
    with pytest.raises(ValueError):
        parse_weight(space, "1;0|0")


def test_serre_dual_weight():
    X = Grass(1, 3)
    assert serre_dual_gl(X, (2, 0), (0,)) == ((-1, -3), (2,))


def test_euler_characteristic_of_bag():
    space = HomSpace((Grass(1, 2),))
    bag = {(((1,), (0,)),): 1, (((-3,), (0,)),): 1}
    chi = euler_char_line_bundles(space, bag)
    assert chi == {((1,), (0,)): 1, ((-1,), (-1,)): -1} or sum(abs(v) for v in chi.values()) == 2


def test_result_json():
    r = bott_gl(Grass(1, 2), (-2,), (0,))
    assert r.to_json() == '{"degree": 1, "weight": [[-1], [-1]], "zero": false}'
