import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doubleforms import poly_forms as pf
from doubleforms.poly_forms import PolyDoubleForm
from doubleforms.verify import random_poly

T = PolyDoubleForm.term
F = Fraction


def same(a, b):
    return (a.dim, a.p, a.q) == (b.dim, b.p, b.q) and a.same_terms(b)


def test_d_left_examples():
    assert same(pf.d_left(T(2, (1, 0), [], [1])), T(2, (0, 0), [0], [1]))
    assert pf.d_left(T(2, (0, 0), [0, 1], [])).is_zero()


def test_d_left_d_right_on_sphere_example():
    phi = T(2, (1, 1), [], [], 2, coords="u")
    expected = T(2, (0, 0), [0], [1], 2, coords="u") + T(2, (0, 0), [1], [0], 2, coords="u")
    assert same(pf.d_left(pf.d_right(phi)), expected)


def test_koszul_examples():
    assert same(pf.koszul_left(T(2, (0, 0), [0], [1])), T(2, (1, 0), [], [1]))
    got = pf.koszul_left(T(3, (0, 0, 0), [0, 1], [2]))
    assert same(got, T(3, (1, 0, 0), [1], [2]) - T(3, (0, 1, 0), [0], [2]))
    phi = T(3, (1, 2, 0), [0, 1], [2])
    assert pf.koszul_left(pf.koszul_left(phi)).is_zero()


def test_pointwise_algebra_examples():
    assert same(pf.bianchi_s(T(2, (1, 0), [0], [1])), T(2, (1, 0), [0, 1], []).scale(-1))
    got = pf.project_summand(T(3, (0, 0, 1), [0], [1]), 0)
    assert same(got, (T(3, (0, 0, 1), [0], [1]) + T(3, (0, 0, 1), [1], [0])).scale(F(1, 2)))
    assert same(pf.transpose_tau(T(3, (2, 0, 1), [0, 2], [1])), T(3, (2, 0, 1), [1], [0, 2]))


def test_homogenize_examples():
    got = pf.homogenize(T(2, (1, 0), [], [1]), 2)
    assert same(got, T(2, (2, 0), [], [1]) + T(2, (1, 1), [], [1]))
    x = T(2, (0, 0), [0], [1])
    assert same(pf.homogenize(x, 0), x)
    c = T(2, (0, 0), [], [], 5)
    assert same(pf.homogenize(c, 1), T(2, (1, 0), [], [], 5) + T(2, (0, 1), [], [], 5))
    with pytest.raises(ValueError):
        pf.homogenize(T(2, (2, 0), [], []), 1)


def test_serialization_round_trip():
    phi = T(3, (1, 0, 2), [0], [1, 2], F(-3, 4))
    assert same(PolyDoubleForm.from_json(phi.to_json()), phi)


def test_mixed_coordinates_rejected():
    with pytest.raises(ValueError):
        T(2, (0, 0), [0], [1]) + T(2, (0, 0), [0], [1], coords="u")


@st.composite
def polys(draw, max_dim=4, max_r=3):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    d = draw(st.integers(1, max_dim))
    p = draw(st.integers(0, min(d, 3)))
    q = draw(st.integers(0, min(d, 3)))
    r = draw(st.integers(0, max_r))
    return random_poly(rng, d, p, q, r), r


@settings(max_examples=100, deadline=None)
@given(polys())
def test_cartan_identities(arg):
    phi, r = arg
    p, q = phi.p, phi.q
    dL, dR, kL, kR = pf.d_left, pf.d_right, pf.koszul_left, pf.koszul_right

    if 0 < p:
        assert same(dL(kL(phi)) + kL(dL(phi)), phi.scale(r + p))
    if 0 < q:
        assert same(dR(kR(phi)) + kR(dR(phi)), phi.scale(r + q))


@settings(max_examples=100, deadline=None)
@given(polys())
def test_d_and_kappa_commute(arg):
    phi, _ = arg
    assert same(pf.d_left(pf.d_right(phi)), pf.d_right(pf.d_left(phi)))
    assert same(pf.koszul_left(pf.koszul_right(phi)), pf.koszul_right(pf.koszul_left(phi)))
    assert pf.d_left(pf.d_left(phi)).is_zero()
